//! Eigenvalues of Casimir functionals and q-deformed Laplacians on the
//! Peter-Weyl blocks, their classical limits, and derived spectral checks.
//!
//! Pairings `(lambda + rho, eps)` are exact rationals; conversion to the
//! floating type `F` happens only at the final exponentiation. Differences of
//! squared q-numbers use `[x]^2 - [y]^2 = [x - y][x + y]`, which stays accurate
//! as `q -> 1` where the prefactor form `2/(q^-1 - q)^2 (z - eps(z))` cancels.

use num_complex::Complex;
use num_traits::{Float, FloatConst, Zero};
use serde::Serialize;

use crate::cartan::{CenterElement, RootSystem, Weight};
use crate::error::{Error, Result};
use crate::scalar::{rational_to_f64, Rational, Scalar};
use crate::weights::{dim_irrep, weight_system};

/// Default maximum number of rows produced by a scan.
pub const DEFAULT_ROW_CAP: usize = 100_000;

/// Deformation parameter, `0 < q < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QParam<F> {
    q: F,
}

impl<F: Float> QParam<F> {
    pub fn new(q: F) -> Result<Self> {
        if q > F::zero() && q < F::one() {
            Ok(QParam { q })
        } else if q == F::one() {
            Err(Error::ClassicalQ)
        } else {
            Err(Error::InvalidQ(q.to_f64().unwrap_or(f64::NAN)))
        }
    }

    pub fn value(&self) -> F {
        self.q
    }

    /// `h = ln q`.
    pub fn h(&self) -> F {
        self.q.ln()
    }
}

/// `[x]_q = (q^x - q^-x) / (q - q^-1) = sinh(x h) / sinh(h)`.
pub fn q_number<F: Float>(x: F, q: QParam<F>) -> F {
    let h = q.h();
    (x * h).sinh() / h.sinh()
}

/// Checked variant taking a raw `q`; `q = 1` is rejected.
pub fn q_number_checked<F: Float>(x: F, q: F) -> Result<F> {
    Ok(q_number(x, QParam::new(q)?))
}

fn to_float<F: Float>(r: &Rational) -> F {
    F::from(rational_to_f64(r)).expect("finite rational")
}

fn coefficient<F: Float, S: Scalar>(a: &S) -> F {
    F::from(a.to_f64()).expect("finite coefficient")
}

/// A positive combination of renormalized Casimir functionals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LaplacianSpec<S> {
    terms: Vec<(Weight, S)>,
}

impl<S: Scalar> LaplacianSpec<S> {
    /// Validates shapes, dominance, distinctness and positivity of the terms.
    pub fn new(rs: &RootSystem, terms: Vec<(Weight, S)>) -> Result<Self> {
        for (i, (mu, a)) in terms.iter().enumerate() {
            rs.check_dominant(mu)?;
            if terms[..i].iter().any(|(other, _)| other == mu) {
                return Err(Error::Duplicate(format!("mu = ({mu})")));
            }
            if !a.is_positive() {
                return Err(Error::NonPositiveCoefficient(mu.to_string()));
            }
        }
        Ok(LaplacianSpec { terms })
    }

    /// Builds a spec without validation; callers guarantee distinct dominant `mu`.
    pub fn from_terms_unchecked(terms: Vec<(Weight, S)>) -> Self {
        LaplacianSpec { terms }
    }

    pub fn terms(&self) -> &[(Weight, S)] {
        &self.terms
    }

    pub fn map_coefficients<T>(&self, f: impl Fn(&S) -> T) -> LaplacianSpec<T> {
        LaplacianSpec {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f(a))).collect(),
        }
    }
}

/// A general `ad`-invariant functional `sum a_l K_{zeta_l} z_{mu_l}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralFunctionalSpec<F> {
    terms: Vec<(CenterElement, Weight, Complex<F>)>,
}

impl<F: Float> GeneralFunctionalSpec<F> {
    pub fn new(rs: &RootSystem, terms: Vec<(CenterElement, Weight, Complex<F>)>) -> Result<Self> {
        for (i, (zeta, mu, _)) in terms.iter().enumerate() {
            rs.check_dominant(mu)?;
            if zeta.rep().len() != rs.rank() {
                return Err(Error::DimensionMismatch {
                    expected: rs.rank(),
                    got: zeta.rep().len(),
                });
            }
            if terms[..i].iter().any(|(z, m, _)| z == zeta && m == mu) {
                return Err(Error::Duplicate(format!("(zeta, mu) = (({zeta}), ({mu}))")));
            }
        }
        Ok(GeneralFunctionalSpec { terms })
    }

    pub fn terms(&self) -> &[(CenterElement, Weight, Complex<F>)] {
        &self.terms
    }
}

/// One row of a spectrum table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumRow<F> {
    pub lambda: Weight,
    pub dim: u64,
    pub eigenvalue: F,
}

/// `C_{z_mu}(lambda) = sum_j q^{-2 (lambda + rho, eps_j)}`.
pub fn casimir_eigenvalue<F: Float>(
    rs: &RootSystem,
    mu: &Weight,
    lambda: &Weight,
    q: QParam<F>,
) -> Result<F> {
    rs.check_dominant(lambda)?;
    let ws = weight_system(rs, mu)?;
    let shifted = lambda + &rs.weyl_vector();
    let two_h = q.h() + q.h();
    let mut sum = F::zero();
    for (eps, m) in ws.iter() {
        let x: F = to_float(&rs.inner_product(&shifted, eps)?);
        sum = sum + F::from(m).expect("multiplicity") * (-two_h * x).exp();
    }
    Ok(sum)
}

/// Sum over the weights of `V(mu)` of `[(lambda + rho, eps)]_q^2 - [(rho, eps)]_q^2`.
fn casimir_block_difference<F: Float>(
    rs: &RootSystem,
    mu: &Weight,
    lambda: &Weight,
    q: QParam<F>,
) -> Result<F> {
    let ws = weight_system(rs, mu)?;
    let two_rho = rs.weyl_vector().scaled(2);
    let plus = lambda + &two_rho;
    let mut sum = F::zero();
    for (eps, m) in ws.iter() {
        // x - y = (lambda, eps), x + y = (lambda + 2 rho, eps)
        let d: F = to_float(&rs.inner_product(lambda, eps)?);
        let s: F = to_float(&rs.inner_product(&plus, eps)?);
        sum = sum + F::from(m).expect("multiplicity") * q_number(d, q) * q_number(s, q);
    }
    Ok(sum)
}

/// Eigenvalue of the q-deformed Laplacian on the `lambda` block.
pub fn q_laplacian_eigenvalue<F: Float, S: Scalar>(
    rs: &RootSystem,
    spec: &LaplacianSpec<S>,
    lambda: &Weight,
    q: QParam<F>,
) -> Result<F> {
    rs.check_dominant(lambda)?;
    let mut total = F::zero();
    for (mu, a) in spec.terms() {
        total = total + coefficient::<F, S>(a) * casimir_block_difference(rs, mu, lambda, q)?;
    }
    Ok(total)
}

/// Classical eigenvalue `sum_l a_l sum_j ((lambda + rho, eps)^2 - (rho, eps)^2)`.
///
/// Exact when `S` is [`Rational`].
pub fn classical_laplacian_eigenvalue<S: Scalar>(
    rs: &RootSystem,
    spec: &LaplacianSpec<S>,
    lambda: &Weight,
) -> Result<S> {
    rs.check_dominant(lambda)?;
    let plus = lambda + &rs.weyl_vector().scaled(2);
    let mut total = S::zero();
    for (mu, a) in spec.terms() {
        let ws = weight_system(rs, mu)?;
        let mut block = Rational::zero();
        for (eps, m) in ws.iter() {
            block += Rational::from_integer(m as i128)
                * rs.inner_product(lambda, eps)?
                * rs.inner_product(&plus, eps)?;
        }
        total = total + a.clone() * S::from_rational(&block);
    }
    Ok(total)
}

/// `e^{2 pi i r}` with exact values at quarter turns.
fn root_of_unity<F: Float + FloatConst>(r: Rational) -> Complex<F> {
    let frac = r - r.floor();
    let quarter = |n: i128| frac == Rational::new(n, 4);
    if quarter(0) {
        Complex::new(F::one(), F::zero())
    } else if quarter(1) {
        Complex::new(F::zero(), F::one())
    } else if quarter(2) {
        Complex::new(-F::one(), F::zero())
    } else if quarter(3) {
        Complex::new(F::zero(), -F::one())
    } else {
        let theta = F::TAU() * to_float::<F>(&frac);
        Complex::new(theta.cos(), theta.sin())
    }
}

/// `sum_l a_l e^{2 pi i <xi_l, lambda>} C_{z_{mu_l}}(lambda)`.
pub fn general_functional_eigenvalue<F: Float + FloatConst>(
    rs: &RootSystem,
    spec: &GeneralFunctionalSpec<F>,
    lambda: &Weight,
    q: QParam<F>,
) -> Result<Complex<F>> {
    rs.check_dominant(lambda)?;
    let mut total = Complex::zero();
    for (zeta, mu, a) in spec.terms() {
        let phase = root_of_unity::<F>(rs.coweight_pairing(zeta.rep(), lambda));
        total = total + *a * phase * casimir_eigenvalue(rs, mu, lambda, q)?;
    }
    Ok(total)
}

fn index_sum(rs: &RootSystem, mu: &Weight, theta: &Weight) -> Result<Rational> {
    let ws = weight_system(rs, mu)?;
    let mut sum = Rational::zero();
    for (eps, m) in ws.iter() {
        let p = rs.inner_product(eps, theta)?;
        sum += Rational::from_integer(m as i128) * p * p;
    }
    Ok(sum)
}

/// Dynkin index `b_mu` relative to the invariant form; `rs` must be simple.
pub fn dynkin_index(rs: &RootSystem, mu: &Weight) -> Result<Rational> {
    if !rs.is_simple() {
        return Err(Error::NotSimple(rs.factors().len()));
    }
    dynkin_index_with(rs, mu, &Weight::fundamental(rs.rank(), 0))
}

/// `sum_j (eps_j, theta)^2 / (theta, theta)` for an explicit test weight.
pub fn dynkin_index_with(rs: &RootSystem, mu: &Weight, theta: &Weight) -> Result<Rational> {
    rs.check_rank(theta)?;
    let norm = rs.inner_product(theta, theta)?;
    if norm.is_zero() {
        return Err(Error::Invariant("test weight must be nonzero".into()));
    }
    Ok(index_sum(rs, mu, theta)? / norm)
}

/// Per-factor Dynkin indices of `V(mu)` for a product root system,
/// using the first fundamental weight of each factor as test weight.
pub fn dynkin_indices(rs: &RootSystem, mu: &Weight) -> Result<Vec<Rational>> {
    (0..rs.factors().len())
        .map(|f| {
            let theta = Weight::fundamental(rs.rank(), rs.factor_range(f).start);
            dynkin_index_with(rs, mu, &theta)
        })
        .collect()
}

/// `sum_f (sum_l a_l b_{mu_l, f}) (lambda_f, lambda_f + 2 rho_f)`.
pub fn classical_eigenvalue_from_indices<S: Scalar>(
    rs: &RootSystem,
    spec: &LaplacianSpec<S>,
    lambda: &Weight,
) -> Result<S> {
    rs.check_dominant(lambda)?;
    let two_rho = rs.weyl_vector().scaled(2);
    let mut total = S::zero();
    for f in 0..rs.factors().len() {
        let lf = rs.project_to_factor(lambda, f);
        let casimir =
            S::from_rational(&rs.inner_product(&lf, &(&lf + &rs.project_to_factor(&two_rho, f)))?);
        let mut b = S::zero();
        for (mu, a) in spec.terms() {
            let theta = Weight::fundamental(rs.rank(), rs.factor_range(f).start);
            b = b + a.clone() * S::from_rational(&dynkin_index_with(rs, mu, &theta)?);
        }
        total = total + b * casimir;
    }
    Ok(total)
}

/// `L = -sum_l a_l sum_j [(rho, eps_j)]_q^2`, a lower bound for every eigenvalue.
pub fn lower_bound<F: Float, S: Scalar>(
    rs: &RootSystem,
    spec: &LaplacianSpec<S>,
    q: QParam<F>,
) -> Result<F> {
    let rho = rs.weyl_vector();
    let mut total = F::zero();
    for (mu, a) in spec.terms() {
        let ws = weight_system(rs, mu)?;
        let mut block = F::zero();
        for (eps, m) in ws.iter() {
            let y = q_number(to_float::<F>(&rs.inner_product(&rho, eps)?), q);
            block = block + F::from(m).expect("multiplicity") * y * y;
        }
        total = total - coefficient::<F, S>(a) * block;
    }
    Ok(total)
}

/// Value of `(z_mu, S^-1(f) S^-1(f)^*)` for `f = t_gamma - eps(t_gamma)`:
/// `sum_i q^{-2 (rho, eps_i)} |C_{z_gamma}(-w0 mu) - C_{z_gamma}(0)|^2`.
///
/// For product types the squared difference is summed over the highest root
/// of every simple factor.
pub fn qms_witness<F: Float>(rs: &RootSystem, mu: &Weight, q: QParam<F>) -> Result<F> {
    rs.check_dominant(mu)?;
    let dual = rs.minus_w0(mu)?;
    let zero = Weight::zero(rs.rank());
    let mut gap = F::zero();
    for gamma in rs.highest_roots() {
        let d = casimir_eigenvalue(rs, gamma, &dual, q)? - casimir_eigenvalue(rs, gamma, &zero, q)?;
        gap = gap + d * d;
    }
    let ws = weight_system(rs, mu)?;
    let rho = rs.weyl_vector();
    let two_h = q.h() + q.h();
    let mut weight = F::zero();
    for (eps, m) in ws.iter() {
        let x: F = to_float(&rs.inner_product(&rho, eps)?);
        weight = weight + F::from(m).expect("multiplicity") * (-two_h * x).exp();
    }
    Ok(weight * gap)
}

/// Eigenvalues on every dominant `lambda` with `(lambda, lambda) <= radius`.
pub fn spectrum_scan<F: Float, S: Scalar>(
    rs: &RootSystem,
    spec: &LaplacianSpec<S>,
    q: QParam<F>,
    radius: Rational,
    row_cap: usize,
) -> Result<Vec<SpectrumRow<F>>> {
    rs.enumerate_dominant_capped(radius, row_cap)?
        .into_iter()
        .map(|lambda| {
            let eigenvalue = q_laplacian_eigenvalue(rs, spec, &lambda, q)?;
            let dim = dim_irrep(rs, &lambda)?;
            Ok(SpectrumRow {
                lambda,
                dim,
                eigenvalue,
            })
        })
        .collect()
}

/// Smallest eigenvalue found by a scan and everywhere it is attained.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonnegativityReport<F> {
    pub min: F,
    pub argmin: Weight,
    pub minimizers: Vec<Weight>,
    /// Smallest eigenvalue over `lambda != 0`, if any was scanned.
    pub min_nonzero: Option<(F, Weight)>,
    pub rows_scanned: usize,
}

pub fn nonnegativity_scan<F: Float, S: Scalar>(
    rs: &RootSystem,
    spec: &LaplacianSpec<S>,
    q: QParam<F>,
    radius: Rational,
    row_cap: usize,
) -> Result<NonnegativityReport<F>> {
    let rows = spectrum_scan(rs, spec, q, radius, row_cap)?;
    summarize_minimum(&rows)
}

pub fn summarize_minimum<F: Float>(rows: &[SpectrumRow<F>]) -> Result<NonnegativityReport<F>> {
    let first = rows
        .first()
        .ok_or_else(|| Error::Invariant("scan produced no rows".into()))?;
    let mut min = first.eigenvalue;
    let mut argmin = first.lambda.clone();
    for row in rows {
        if row.eigenvalue < min {
            min = row.eigenvalue;
            argmin = row.lambda.clone();
        }
    }
    let minimizers = rows
        .iter()
        .filter(|r| r.eigenvalue == min)
        .map(|r| r.lambda.clone())
        .collect();
    let min_nonzero = rows.iter().filter(|r| !r.lambda.is_zero()).fold(
        None::<(F, Weight)>,
        |best, r| match best {
            Some((v, _)) if v <= r.eigenvalue => best,
            _ => Some((r.eigenvalue, r.lambda.clone())),
        },
    );
    Ok(NonnegativityReport {
        min,
        argmin,
        minimizers,
        min_nonzero,
        rows_scanned: rows.len(),
    })
}
