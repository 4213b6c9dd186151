//! The heat semigroup `e^{-tZ}` acting diagonally on Peter-Weyl blocks.

use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::cartan::{RootSystem, Weight};
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};
use crate::spectra::{q_laplacian_eigenvalue, qms_witness, spectrum_scan, LaplacianSpec, QParam};
use crate::weights::dim_irrep;

/// A finitely supported element of `sum_lambda End(V(lambda))^*`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BlockCoefficients<F> {
    blocks: BTreeMap<Weight, Vec<Vec<Complex<F>>>>,
}

/// Wire form: `{"lambda": [..], "matrix": [[[re, im], ..], ..]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockRecord<F> {
    pub lambda: Vec<i64>,
    pub matrix: Vec<Vec<Complex<F>>>,
}

impl<F: Float> BlockCoefficients<F> {
    pub fn new() -> Self {
        BlockCoefficients {
            blocks: BTreeMap::new(),
        }
    }

    /// Inserts a block after checking that it is `n_lambda x n_lambda`.
    pub fn insert(
        &mut self,
        rs: &RootSystem,
        lambda: Weight,
        matrix: Vec<Vec<Complex<F>>>,
    ) -> Result<()> {
        let dim = dim_irrep(rs, &lambda)? as usize;
        let rows = matrix.len();
        if let Some(bad) = matrix.iter().find(|row| row.len() != dim) {
            return Err(Error::BlockShape {
                lambda: lambda.to_string(),
                rows,
                cols: bad.len(),
                dim,
            });
        }
        if rows != dim {
            return Err(Error::BlockShape {
                lambda: lambda.to_string(),
                rows,
                cols: dim,
                dim,
            });
        }
        if self.blocks.contains_key(&lambda) {
            return Err(Error::Duplicate(format!("block ({lambda})")));
        }
        self.blocks.insert(lambda, matrix);
        Ok(())
    }

    pub fn from_records(rs: &RootSystem, records: Vec<BlockRecord<F>>) -> Result<Self> {
        let mut out = BlockCoefficients::new();
        for r in records {
            out.insert(rs, Weight::new(r.lambda), r.matrix)?;
        }
        Ok(out)
    }

    pub fn to_records(&self) -> Vec<BlockRecord<F>> {
        self.blocks
            .iter()
            .map(|(l, m)| BlockRecord {
                lambda: l.coords().to_vec(),
                matrix: m.clone(),
            })
            .collect()
    }

    pub fn blocks(&self) -> &BTreeMap<Weight, Vec<Vec<Complex<F>>>> {
        &self.blocks
    }

    pub fn get(&self, lambda: &Weight) -> Option<&Vec<Vec<Complex<F>>>> {
        self.blocks.get(lambda)
    }
}

fn check_time<F: Float>(t: F) -> Result<()> {
    if t >= F::zero() {
        Ok(())
    } else {
        Err(Error::NegativeTime(t.to_f64().unwrap_or(f64::NAN)))
    }
}

/// `e^{-t C(lambda)}`.
pub fn heat_coefficient<F: Float, S: Scalar>(
    rs: &RootSystem,
    spec: &LaplacianSpec<S>,
    lambda: &Weight,
    q: QParam<F>,
    t: F,
) -> Result<F> {
    check_time(t)?;
    if t == F::zero() {
        return Ok(F::one());
    }
    Ok((-t * q_laplacian_eigenvalue(rs, spec, lambda, q)?).exp())
}

/// Scales each block by its heat coefficient.
pub fn apply_heat<F: Float, S: Scalar>(
    rs: &RootSystem,
    spec: &LaplacianSpec<S>,
    coeffs: &BlockCoefficients<F>,
    q: QParam<F>,
    t: F,
) -> Result<BlockCoefficients<F>> {
    check_time(t)?;
    let mut blocks = BTreeMap::new();
    for (lambda, m) in &coeffs.blocks {
        let dim = dim_irrep(rs, lambda)? as usize;
        if m.len() != dim || m.iter().any(|row| row.len() != dim) {
            return Err(Error::BlockShape {
                lambda: lambda.to_string(),
                rows: m.len(),
                cols: m.first().map_or(0, Vec::len),
                dim,
            });
        }
        let c = heat_coefficient(rs, spec, lambda, q, t)?;
        let scaled = m
            .iter()
            .map(|row| row.iter().map(|z| z.scale(c)).collect())
            .collect();
        blocks.insert(lambda.clone(), scaled);
    }
    Ok(BlockCoefficients { blocks })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeatTrace<F> {
    pub t: F,
    pub trace: F,
    /// `n^2 e^{-t C}` maximized over the dominant weights just outside the
    /// scanned region (those `lambda + w_j` not scanned).
    pub tail_estimate: F,
    pub rows: usize,
}

/// `sum n_lambda^2 e^{-t C(lambda)}` over `(lambda, lambda) <= radius`.
pub fn heat_trace<F: Float, S: Scalar>(
    rs: &RootSystem,
    spec: &LaplacianSpec<S>,
    q: QParam<F>,
    t: F,
    radius: Rational,
    row_cap: usize,
) -> Result<HeatTrace<F>> {
    check_time(t)?;
    let rows = spectrum_scan(rs, spec, q, radius, row_cap)?;
    let mut trace = F::zero();
    for row in &rows {
        let n = F::from(row.dim).expect("dimension");
        trace = trace + n * n * (-t * row.eigenvalue).exp();
    }
    let scanned: std::collections::HashSet<&Weight> = rows.iter().map(|r| &r.lambda).collect();
    let mut tail = F::zero();
    let mut boundary = std::collections::BTreeSet::new();
    for row in &rows {
        for j in 0..rs.rank() {
            let next = &row.lambda + &Weight::fundamental(rs.rank(), j);
            if !scanned.contains(&next) {
                boundary.insert(next);
            }
        }
    }
    for lambda in boundary {
        let n = F::from(dim_irrep(rs, &lambda)?).expect("dimension");
        let c = q_laplacian_eigenvalue(rs, spec, &lambda, q)?;
        let term = n * n * (-t * c).exp();
        if term > tail {
            tail = term;
        }
    }
    Ok(HeatTrace {
        t,
        trace,
        tail_estimate: tail,
        rows: rows.len(),
    })
}

/// Verdict on whether `e^{-tZ}` can be a quantum Markov semigroup.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarkovVerdict<F> {
    /// `(mu, witness)` for each term of the Laplacian with `mu != 0`.
    pub witnesses: Vec<(Weight, F)>,
    pub quantum_markov: bool,
}

/// `-Z` fails conditional positivity as soon as one witness is positive.
pub fn markov_verdict<F: Float, S: Scalar>(
    rs: &RootSystem,
    spec: &LaplacianSpec<S>,
    q: QParam<F>,
) -> Result<MarkovVerdict<F>> {
    let mut witnesses = Vec::new();
    for (mu, _) in spec.terms() {
        if !mu.is_zero() {
            witnesses.push((mu.clone(), qms_witness(rs, mu, q)?));
        }
    }
    let quantum_markov = !witnesses.iter().any(|(_, w)| *w > F::zero());
    Ok(MarkovVerdict {
        witnesses,
        quantum_markov,
    })
}
