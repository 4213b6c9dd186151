//! Finite-dimensional bicovariant first-order differential calculi on `K_q`,
//! represented by their classifying index: a finite set of distinct pairs
//! `(zeta, mu)` of a center class and a dominant weight.

use std::collections::BTreeSet;

use num_complex::Complex;
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::cartan::{CenterElement, RootSystem, Weight};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::spectra::{GeneralFunctionalSpec, LaplacianSpec};
use crate::weights::dim_irrep;

/// Default cap on the number of indices produced by [`enumerate_fodc_indices`].
pub const DEFAULT_INDEX_CAP: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IndexPair {
    pub zeta: CenterElement,
    pub mu: Weight,
}

impl IndexPair {
    fn is_trivial(&self) -> bool {
        self.zeta.is_zero() && self.mu.is_zero()
    }
}

/// Wire form of a pair, with an unreduced coweight representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawPair {
    pub zeta: Vec<i64>,
    pub mu: Vec<i64>,
}

/// A set of distinct classifying pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct FodcIndex {
    pairs: Vec<IndexPair>,
}

impl FodcIndex {
    pub fn new(rs: &RootSystem, pairs: Vec<IndexPair>) -> Result<Self> {
        for (i, p) in pairs.iter().enumerate() {
            rs.check_dominant(&p.mu)?;
            if p.zeta.rep().len() != rs.rank() {
                return Err(Error::DimensionMismatch {
                    expected: rs.rank(),
                    got: p.zeta.rep().len(),
                });
            }
            if pairs[..i].contains(p) {
                return Err(Error::Duplicate(format!("pair (({}), ({}))", p.zeta, p.mu)));
            }
        }
        Ok(FodcIndex { pairs })
    }

    /// Reduces raw coweight representatives and validates.
    pub fn from_raw(rs: &RootSystem, raw: &[RawPair]) -> Result<Self> {
        let pairs = raw
            .iter()
            .map(|r| {
                Ok(IndexPair {
                    zeta: rs.center_element(&r.zeta)?,
                    mu: Weight::new(r.mu.clone()),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        FodcIndex::new(rs, pairs)
    }

    pub fn pairs(&self) -> &[IndexPair] {
        &self.pairs
    }

    /// Pairs other than `(0, 0)`; these name the inducing functional class.
    pub fn nonzero_pairs(&self) -> Vec<IndexPair> {
        self.pairs
            .iter()
            .filter(|p| !p.is_trivial())
            .cloned()
            .collect()
    }

    pub fn to_raw(&self) -> Vec<RawPair> {
        self.pairs
            .iter()
            .map(|p| RawPair {
                zeta: p.zeta.rep().to_vec(),
                mu: p.mu.coords().to_vec(),
            })
            .collect()
    }

    /// Union of two indices with no pair in common.
    pub fn disjoint_union(&self, rs: &RootSystem, other: &FodcIndex) -> Result<FodcIndex> {
        let mut pairs = self.pairs.clone();
        pairs.extend(other.pairs.iter().cloned());
        FodcIndex::new(rs, pairs)
    }
}

/// `sum n_mu^2` over the pairs other than `(0, 0)`.
pub fn fodc_dimension(rs: &RootSystem, idx: &FodcIndex) -> Result<u64> {
    idx.pairs
        .iter()
        .filter(|p| !p.is_trivial())
        .map(|p| dim_irrep(rs, &p.mu).map(|n| n * n))
        .sum()
}

/// Pairing of summands certifying a `*`-structure: `(i, i)` for a pair with
/// `2 zeta` in the coroot lattice, `(i, j)` for `(zeta, mu)`, `(-zeta, mu)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarCertificate {
    pub admissible: bool,
    pub matching: Vec<(usize, usize)>,
    /// Indices of pairs lacking a partner.
    pub unmatched: Vec<usize>,
}

pub fn admits_star_structure(rs: &RootSystem, idx: &FodcIndex) -> StarCertificate {
    let mut matching = Vec::new();
    let mut unmatched = Vec::new();
    for (i, p) in idx.pairs.iter().enumerate() {
        if rs.is_half_coroot(&p.zeta) {
            matching.push((i, i));
            continue;
        }
        let partner = IndexPair {
            zeta: rs.center_neg(&p.zeta),
            mu: p.mu.clone(),
        };
        match idx.pairs.iter().position(|q| *q == partner) {
            Some(j) => matching.push((i, j)),
            None => unmatched.push(i),
        }
    }
    StarCertificate {
        admissible: unmatched.is_empty(),
        matching,
        unmatched,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctionalValidation {
    pub self_adjoint: bool,
    pub hermitian: bool,
    pub q_laplacian: bool,
    pub reasons: Vec<String>,
}

/// Classifies a general functional `sum a_l K_{zeta_l} z_{mu_l}`.
pub fn validate_functional<F: Float>(
    rs: &RootSystem,
    spec: &GeneralFunctionalSpec<F>,
) -> Result<FunctionalValidation> {
    let terms = spec.terms();
    let mut reasons = Vec::new();

    let mut self_adjoint = true;
    for (zeta, mu, a) in terms {
        if rs.is_half_coroot(zeta) {
            if a.im != F::zero() {
                self_adjoint = false;
                reasons.push(format!(
                    "coefficient of (({zeta}), ({mu})) must be real since 2 zeta lies in the coroot lattice"
                ));
            }
        } else {
            let neg = rs.center_neg(zeta);
            let paired = terms
                .iter()
                .any(|(z, m, b)| *z == neg && m == mu && *b == a.conj());
            if !paired {
                self_adjoint = false;
                reasons.push(format!(
                    "term (({zeta}), ({mu})) needs a partner (({neg}), ({mu})) with conjugate coefficient"
                ));
            }
        }
    }

    let mut hermitian = true;
    let mus: BTreeSet<&Weight> = terms.iter().map(|(_, m, _)| m).collect();
    for (zeta, mu, a) in terms {
        let dual = rs.minus_w0(mu)?;
        if !mus.contains(&dual) {
            hermitian = false;
            reasons.push(format!(
                "-w0 ({mu}) = ({dual}) is missing from the set of weights"
            ));
            continue;
        }
        let neg = rs.center_neg(zeta);
        let ok = terms.iter().any(|(z, m, b)| {
            *m == dual && ((z == zeta && a.conj() == *b) || (*z == neg && a == b))
        });
        if !ok {
            hermitian = false;
            reasons.push(format!(
                "no term at -w0 ({mu}) = ({dual}) matches (({zeta}), ({mu})) under the duality"
            ));
        }
    }

    let mut q_laplacian = hermitian && self_adjoint;
    for (zeta, mu, a) in terms {
        if !zeta.is_zero() {
            q_laplacian = false;
            reasons.push(format!(
                "term (({zeta}), ({mu})) has a nonzero center parameter"
            ));
        }
        if a.im != F::zero() || a.re <= F::zero() {
            q_laplacian = false;
            reasons.push(format!("coefficient of ({mu}) must be real and positive"));
        }
    }
    for f in 0..rs.factors().len() {
        let range = rs.factor_range(f);
        let carried = terms
            .iter()
            .any(|(_, mu, _)| mu.coords()[range.clone()].iter().any(|&c| c != 0));
        if !carried {
            q_laplacian = false;
            reasons.push(format!(
                "representation is not faithful on factor {} ({})",
                f,
                rs.factors()[f]
            ));
        }
    }
    Ok(FunctionalValidation {
        self_adjoint,
        hermitian,
        q_laplacian,
        reasons,
    })
}

/// Checks the q-deformed Laplacian conditions for a real-coefficient spec.
pub fn validate_laplacian<S: Scalar>(
    rs: &RootSystem,
    spec: &LaplacianSpec<S>,
) -> Result<FunctionalValidation> {
    let general = GeneralFunctionalSpec::new(
        rs,
        spec.terms()
            .iter()
            .map(|(mu, a)| (rs.center_zero(), mu.clone(), Complex::new(a.to_f64(), 0.0)))
            .collect(),
    )?;
    validate_functional(rs, &general)
}

/// An enumerated index with its invariants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexSummary {
    pub index: FodcIndex,
    pub dimension: u64,
    pub star_admissible: bool,
    /// Equivalence class of inducing functionals: the nonzero pairs.
    pub inducing_class: Vec<IndexPair>,
}

/// Every index built from pairs `(zeta, mu)` with `mu` of coordinate sum at
/// most `max_height` and `zeta` ranging over the center (or `{0}`), the pair
/// `(0, 0)` excluded. Ordered by size, then lexicographically by pair.
pub fn enumerate_fodc_indices(
    rs: &RootSystem,
    max_height: u32,
    include_center: bool,
    cap: usize,
) -> Result<Vec<IndexSummary>> {
    let mus = dominant_up_to_level(rs.rank(), max_height as i64);
    let zetas: Vec<CenterElement> = if include_center {
        rs.center_group().elements.clone()
    } else {
        vec![rs.center_zero()]
    };
    let mut pairs = Vec::new();
    for mu in &mus {
        for zeta in &zetas {
            let p = IndexPair {
                zeta: zeta.clone(),
                mu: mu.clone(),
            };
            if !p.is_trivial() {
                pairs.push(p);
            }
        }
    }
    let count: u128 = if pairs.len() >= 127 {
        u128::MAX
    } else {
        1u128 << pairs.len()
    };
    if count > cap as u128 {
        return Err(Error::EnumerationCap { cap, wanted: count });
    }
    let dims: Vec<u64> = pairs
        .iter()
        .map(|p| dim_irrep(rs, &p.mu).map(|n| n * n))
        .collect::<Result<_>>()?;

    let mut out = Vec::with_capacity(count as usize);
    for size in 0..=pairs.len() {
        for combo in combinations(pairs.len(), size) {
            let index = FodcIndex {
                pairs: combo.iter().map(|&i| pairs[i].clone()).collect(),
            };
            let star = admits_star_structure(rs, &index);
            out.push(IndexSummary {
                dimension: combo.iter().map(|&i| dims[i]).sum(),
                star_admissible: star.admissible,
                inducing_class: index.nonzero_pairs(),
                index,
            });
        }
    }
    Ok(out)
}

fn dominant_up_to_level(rank: usize, max_level: i64) -> Vec<Weight> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; rank];
    fn rec(k: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Weight>) {
        if k == cur.len() {
            out.push(Weight::new(cur.clone()));
            return;
        }
        for v in 0..=left {
            cur[k] = v;
            rec(k + 1, left - v, cur, out);
        }
        cur[k] = 0;
    }
    rec(0, max_level, &mut cur, &mut out);
    out.sort();
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(label: &str) -> RootSystem {
        RootSystem::from_label(label).unwrap()
    }

    fn pair(r: &RootSystem, zeta: &[i64], mu: &[i64]) -> IndexPair {
        IndexPair {
            zeta: r.center_element(zeta).unwrap(),
            mu: Weight::new(mu.to_vec()),
        }
    }

    fn term(
        r: &RootSystem,
        zeta: &[i64],
        mu: &[i64],
        a: f64,
    ) -> (CenterElement, Weight, Complex<f64>) {
        (
            r.center_element(zeta).unwrap(),
            Weight::new(mu.to_vec()),
            Complex::new(a, 0.0),
        )
    }

    #[test]
    fn dimension_examples() {
        let a2 = rs("A2");
        let zero = FodcIndex::new(&a2, vec![pair(&a2, &[0, 0], &[0, 0])]).unwrap();
        assert_eq!(fodc_dimension(&a2, &zero).unwrap(), 0);
        let one = FodcIndex::new(&a2, vec![pair(&a2, &[0, 0], &[1, 0])]).unwrap();
        assert_eq!(fodc_dimension(&a2, &one).unwrap(), 9);
        let two = FodcIndex::new(
            &a2,
            vec![pair(&a2, &[0, 0], &[1, 0]), pair(&a2, &[0, 0], &[0, 1])],
        )
        .unwrap();
        assert_eq!(fodc_dimension(&a2, &two).unwrap(), 18);
        let dup = FodcIndex::new(
            &a2,
            vec![pair(&a2, &[0, 0], &[1, 0]), pair(&a2, &[3, 0], &[1, 0])],
        );
        assert!(matches!(dup, Err(Error::Duplicate(_))));
    }

    #[test]
    fn star_examples() {
        let a1 = rs("A1");
        let idx = FodcIndex::new(&a1, vec![pair(&a1, &[0], &[1]), pair(&a1, &[0], &[3])]).unwrap();
        assert!(admits_star_structure(&a1, &idx).admissible);
        let idx = FodcIndex::new(&a1, vec![pair(&a1, &[1], &[1])]).unwrap();
        assert!(admits_star_structure(&a1, &idx).admissible);

        let a2 = rs("A2");
        let lone = FodcIndex::new(&a2, vec![pair(&a2, &[1, 0], &[1, 0])]).unwrap();
        let cert = admits_star_structure(&a2, &lone);
        assert!(!cert.admissible);
        assert_eq!(cert.unmatched, vec![0]);
        let both = FodcIndex::new(
            &a2,
            vec![pair(&a2, &[1, 0], &[1, 0]), pair(&a2, &[2, 0], &[1, 0])],
        )
        .unwrap();
        let cert = admits_star_structure(&a2, &both);
        assert!(cert.admissible);
        assert_eq!(cert.matching, vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn validation_examples() {
        let a2 = rs("A2");
        let spec = GeneralFunctionalSpec::new(&a2, vec![term(&a2, &[0, 0], &[1, 0], 1.0)]).unwrap();
        let v = validate_functional(&a2, &spec).unwrap();
        assert!(!v.hermitian);
        assert!(!v.q_laplacian);
        assert!(v.self_adjoint);

        let spec = GeneralFunctionalSpec::new(
            &a2,
            vec![
                term(&a2, &[0, 0], &[1, 0], 1.0),
                term(&a2, &[0, 0], &[0, 1], 1.0),
            ],
        )
        .unwrap();
        let v = validate_functional(&a2, &spec).unwrap();
        assert!(
            v.q_laplacian && v.hermitian && v.self_adjoint,
            "{:?}",
            v.reasons
        );

        let unequal = GeneralFunctionalSpec::new(
            &a2,
            vec![
                term(&a2, &[0, 0], &[1, 0], 1.0),
                term(&a2, &[0, 0], &[0, 1], 2.0),
            ],
        )
        .unwrap();
        assert!(!validate_functional(&a2, &unequal).unwrap().hermitian);

        let a1 = rs("A1");
        let neg = GeneralFunctionalSpec::new(&a1, vec![term(&a1, &[0], &[1], -1.0)]).unwrap();
        let v = validate_functional(&a1, &neg).unwrap();
        assert!(!v.q_laplacian);
        assert!(v.hermitian);
    }

    #[test]
    fn self_adjointness_needs_conjugate_partner() {
        let a2 = rs("A2");
        let z = a2.center_element(&[1, 0]).unwrap();
        let zbar = a2.center_neg(&z);
        let mu = Weight::new(vec![1, 1]);
        let a = Complex::new(1.0, 2.0);
        let lone = GeneralFunctionalSpec::new(&a2, vec![(z.clone(), mu.clone(), a)]).unwrap();
        assert!(!validate_functional(&a2, &lone).unwrap().self_adjoint);
        let sym = GeneralFunctionalSpec::new(&a2, vec![(z, mu.clone(), a), (zbar, mu, a.conj())])
            .unwrap();
        assert!(validate_functional(&a2, &sym).unwrap().self_adjoint);

        let a1 = rs("A1");
        let complex = GeneralFunctionalSpec::new(
            &a1,
            vec![(
                a1.center_zero(),
                Weight::new(vec![1]),
                Complex::new(1.0, 1.0),
            )],
        )
        .unwrap();
        assert!(!validate_functional(&a1, &complex).unwrap().self_adjoint);
    }

    #[test]
    fn faithfulness_on_products() {
        let r = rs("A1xA1");
        let half = GeneralFunctionalSpec::new(&r, vec![term(&r, &[0, 0], &[1, 0], 1.0)]).unwrap();
        let v = validate_functional(&r, &half).unwrap();
        assert!(!v.q_laplacian);
        assert!(v.reasons.iter().any(|s| s.contains("faithful")));
        let full = GeneralFunctionalSpec::new(&r, vec![term(&r, &[0, 0], &[1, 1], 1.0)]).unwrap();
        assert!(validate_functional(&r, &full).unwrap().q_laplacian);
    }

    #[test]
    fn enumeration_examples() {
        let a1 = rs("A1");
        let all = enumerate_fodc_indices(&a1, 1, true, DEFAULT_INDEX_CAP).unwrap();
        assert_eq!(all.len(), 8);
        assert!(all[0].index.pairs().is_empty());
        assert_eq!(all[0].dimension, 0);
        let singles: BTreeSet<_> = all[1..4]
            .iter()
            .map(|s| s.index.pairs()[0].clone())
            .collect();
        assert_eq!(singles.len(), 3);
        // every A1 center class satisfies the half-coroot criterion
        assert!(all.iter().all(|s| s.star_admissible));

        let only_zero = enumerate_fodc_indices(&rs("A2"), 0, false, DEFAULT_INDEX_CAP).unwrap();
        assert_eq!(only_zero.len(), 1);
        assert_eq!(only_zero[0].dimension, 0);

        let a2 = enumerate_fodc_indices(&rs("A2"), 1, false, DEFAULT_INDEX_CAP).unwrap();
        assert_eq!(a2.len(), 4);
        assert_eq!(a2.last().unwrap().dimension, 18);

        assert!(matches!(
            enumerate_fodc_indices(&rs("A2"), 3, true, 1024),
            Err(Error::EnumerationCap { cap: 1024, .. })
        ));
    }

    #[test]
    fn raw_round_trip() {
        let a2 = rs("A2");
        let raw = vec![RawPair {
            zeta: vec![4, 0],
            mu: vec![1, 0],
        }];
        let idx = FodcIndex::from_raw(&a2, &raw).unwrap();
        assert_eq!(idx.pairs()[0].zeta, a2.center_element(&[1, 0]).unwrap());
        let again = FodcIndex::from_raw(&a2, &idx.to_raw()).unwrap();
        assert_eq!(again, idx);
    }
}
