//! Weight systems of irreducible representations.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::cartan::{RootSystem, Weight};
use crate::error::{Error, Result};

/// The weights of `V(highest)` with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSystem {
    highest: Weight,
    entries: BTreeMap<Weight, u64>,
}

impl WeightSystem {
    pub fn highest(&self) -> &Weight {
        &self.highest
    }

    pub fn entries(&self) -> &BTreeMap<Weight, u64> {
        &self.entries
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    /// Dimension of the representation, counted with multiplicity.
    pub fn dim(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.entries.iter().map(|(w, &m)| (w, m))
    }

    pub fn dominant(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.iter().filter(|(w, _)| w.is_dominant())
    }
}

/// Weight system of `V(mu)`, computed once per root system and cached.
pub fn weight_system(rs: &RootSystem, mu: &Weight) -> Result<Arc<WeightSystem>> {
    rs.check_dominant(mu)?;
    if let Some(ws) = rs
        .weight_cache()
        .read()
        .expect("weight cache poisoned")
        .get(mu)
    {
        return Ok(Arc::clone(ws));
    }
    let ws = Arc::new(freudenthal(rs, mu)?);
    // concurrent writers insert identical values
    let mut cache = rs.weight_cache().write().expect("weight cache poisoned");
    Ok(Arc::clone(cache.entry(mu.clone()).or_insert(ws)))
}

/// Weyl dimension formula `prod (mu + rho, alpha) / (rho, alpha)`.
pub fn dim_irrep(rs: &RootSystem, mu: &Weight) -> Result<u64> {
    rs.check_dominant(mu)?;
    let rho = rs.weyl_vector();
    let shifted = mu + &rho;
    let mut prod = BigRational::one();
    for alpha in rs.positive_roots() {
        let num = rs.pairing_numerator(&shifted, alpha);
        let den = rs.pairing_numerator(&rho, alpha);
        prod *= BigRational::new(BigInt::from(num), BigInt::from(den));
    }
    if !prod.is_integer() {
        return Err(Error::Invariant(format!(
            "Weyl dimension of ({mu}) is not an integer"
        )));
    }
    prod.to_integer()
        .to_u64()
        .ok_or_else(|| Error::Invariant(format!("dimension of ({mu}) overflows u64")))
}

fn freudenthal(rs: &RootSystem, mu: &Weight) -> Result<WeightSystem> {
    let n = rs.rank();
    if mu.is_zero() {
        return Ok(WeightSystem {
            highest: mu.clone(),
            entries: BTreeMap::from([(Weight::zero(n), 1)]),
        });
    }
    let roots = rs.positive_roots();
    let roots_simple = rs.positive_roots_in_simple_basis();

    // dominant weights below mu, with depth = height of mu - nu; consecutive
    // dominant weights of V(mu) differ by positive roots
    let mut depth: HashMap<Weight, i64> = HashMap::from([(mu.clone(), 0)]);
    let mut queue = VecDeque::from([mu.clone()]);
    while let Some(nu) = queue.pop_front() {
        let d = depth[&nu];
        for (alpha, simple) in roots.iter().zip(roots_simple) {
            let next = &nu - alpha;
            if next.is_dominant() && !depth.contains_key(&next) {
                depth.insert(next.clone(), d + simple.iter().sum::<i64>());
                queue.push_back(next);
            }
        }
    }
    let mut order: Vec<(i64, Weight)> = depth.into_iter().map(|(w, d)| (d, w)).collect();
    order.sort();

    let rho = rs.weyl_vector();
    let top = {
        let s = mu + &rho;
        rs.pairing_numerator(&s, &s)
    };
    let mut mult: HashMap<Weight, u64> = HashMap::with_capacity(order.len());
    mult.insert(mu.clone(), 1);
    for (_, nu) in order.iter().skip(1) {
        let mut sum: i128 = 0;
        for alpha in roots {
            let mut shifted = nu + alpha;
            loop {
                let dom = rs.dominant_representative(&shifted);
                let Some(&m) = mult.get(&dom) else { break };
                sum += m as i128 * rs.pairing_numerator(&shifted, alpha);
                shifted = &shifted + alpha;
            }
        }
        let s = nu + &rho;
        let gap = top - rs.pairing_numerator(&s, &s);
        if gap <= 0 || (2 * sum) % gap != 0 {
            return Err(Error::Invariant(format!(
                "Freudenthal step at ({nu}) in V({mu}) is not integral"
            )));
        }
        let m = 2 * sum / gap;
        if m <= 0 {
            return Err(Error::Invariant(format!(
                "nonpositive multiplicity at ({nu}) in V({mu})"
            )));
        }
        mult.insert(nu.clone(), m as u64);
    }

    // close each dominant weight under simple reflections
    let mut entries = BTreeMap::new();
    for (nu, &m) in &mult {
        let mut seen: HashSet<Weight> = HashSet::from([nu.clone()]);
        let mut queue = VecDeque::from([nu.clone()]);
        while let Some(w) = queue.pop_front() {
            for i in 0..n {
                if w.coords()[i] != 0 {
                    let r = rs.reflect(i, &w);
                    if seen.insert(r.clone()) {
                        queue.push_back(r);
                    }
                }
            }
        }
        for w in seen {
            entries.insert(w, m);
        }
    }
    Ok(WeightSystem {
        highest: mu.clone(),
        entries,
    })
}
