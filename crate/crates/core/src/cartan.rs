//! Cartan data for products of simple types and exact lattice arithmetic.
//!
//! Weights are integer coordinate vectors in the basis of fundamental weights.
//! Simple roots and Cartan matrix entries follow Bourbaki numbering with
//! `cartan[i][j] = <alpha_i^vee, alpha_j>`, so the simple root `alpha_j` has
//! fundamental-weight coordinates given by column `j` of the Cartan matrix.
//! The invariant form is normalized so that short roots have squared length 2,
//! optionally multiplied by a global positive rational scale.
//!
//! Indices (simple roots, fundamental weights, letters of the `w0` word) are
//! zero-based throughout the library.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{self, IntMatrix};
use crate::scalar::Rational;
use crate::weights::WeightSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// A simple Lie type with its non-redundant rank range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SimpleType {
    family: Family,
    rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(SimpleType { family, rank })
        } else {
            Err(Error::InvalidType {
                label: format!("{}{}", family.letter(), rank),
                reason: match family {
                    Family::A => "A requires rank >= 1",
                    Family::B => "B requires rank >= 2",
                    Family::C => "C requires rank >= 3",
                    Family::D => "D requires rank >= 4",
                    Family::E => "E requires rank 6, 7 or 8",
                    Family::F => "F requires rank 4",
                    Family::G => "G requires rank 2",
                }
                .to_string(),
            })
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Gram matrix of the simple roots, `(alpha_i, alpha_j)`, short roots of length 2.
    fn simple_root_gram(&self) -> IntMatrix {
        let n = self.rank;
        let mut b = vec![vec![0i64; n]; n];
        let mut link = |i: usize, j: usize, v: i64| {
            b[i][j] = v;
            b[j][i] = v;
        };
        match self.family {
            Family::A => {
                for i in 0..n.saturating_sub(1) {
                    link(i, i + 1, -1);
                }
            }
            Family::B => {
                for i in 0..n - 1 {
                    link(i, i + 1, -2);
                }
            }
            Family::C => {
                for i in 0..n - 2 {
                    link(i, i + 1, -1);
                }
                link(n - 2, n - 1, -2);
            }
            Family::D => {
                for i in 0..n - 2 {
                    link(i, i + 1, -1);
                }
                link(n - 3, n - 1, -1);
            }
            Family::E => {
                // Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4
                link(0, 2, -1);
                link(1, 3, -1);
                for i in 2..n - 1 {
                    link(i, i + 1, -1);
                }
            }
            Family::F => {
                link(0, 1, -2);
                link(1, 2, -2);
                link(2, 3, -1);
            }
            Family::G => {
                link(0, 1, -3);
            }
        }
        let lengths: Vec<i64> = match self.family {
            Family::A | Family::D | Family::E => vec![2; n],
            Family::B => (0..n).map(|i| if i + 1 == n { 2 } else { 4 }).collect(),
            Family::C => (0..n).map(|i| if i + 1 == n { 4 } else { 2 }).collect(),
            Family::F => vec![4, 4, 2, 2],
            Family::G => vec![2, 6],
        };
        for (i, l) in lengths.into_iter().enumerate() {
            b[i][i] = l;
        }
        b
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |reason: &str| Error::InvalidType {
            label: s.to_string(),
            reason: reason.to_string(),
        };
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(bad("expected a family letter A-G")),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| bad("expected a rank after the family letter"))?;
        SimpleType::new(family, rank).map_err(|e| match e {
            Error::InvalidType { reason, .. } => bad(&reason),
            other => other,
        })
    }
}

/// Parses labels such as `A2` or `A1xB2`.
pub fn parse_type_label(label: &str) -> Result<Vec<SimpleType>> {
    let factors: Vec<SimpleType> = label
        .split(['x', 'X', '*'])
        .map(str::parse)
        .collect::<Result<_>>()?;
    if factors.is_empty() {
        return Err(Error::InvalidType {
            label: label.to_string(),
            reason: "no factors".into(),
        });
    }
    Ok(factors)
}

pub fn format_type_label(factors: &[SimpleType]) -> String {
    factors
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("x")
}

/// An integral weight, in fundamental-weight coordinates.
///
/// Ordered graded-lexicographically: first by coordinate sum, then by
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, j: usize) -> Self {
        let mut c = vec![0; rank];
        c[j] = 1;
        Weight(c)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Sum of the coordinates.
    pub fn level(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|c| c * k).collect())
    }
}

impl Ord for Weight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.level()
            .cmp(&other.level())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_int_list(s).map(Weight)
    }
}

pub(crate) fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("`{p}` is not an integer coordinate in `{s}`")))
        })
        .collect()
}

impl<'a> Add<&'a Weight> for &'a Weight {
    type Output = Weight;

    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub<&'a Weight> for &'a Weight {
    type Output = Weight;

    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;

    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&Weight> for i64 {
    type Output = Weight;

    fn mul(self, rhs: &Weight) -> Weight {
        rhs.scaled(self)
    }
}

/// A class in `P^vee / Q^vee`, stored as its canonical coweight-coordinate
/// representative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CenterElement(Vec<i64>);

impl CenterElement {
    pub fn rep(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for CenterElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// The finite abelian group `P^vee / Q^vee`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CenterGroup {
    /// Nontrivial invariant factors, each dividing the next.
    pub invariant_factors: Vec<i64>,
    pub order: u64,
    /// One canonical representative per coset, sorted.
    pub elements: Vec<CenterElement>,
}

/// Root datum of a product of simple types, immutable after construction.
pub struct RootSystem {
    factors: Vec<SimpleType>,
    offsets: Vec<usize>,
    cartan: IntMatrix,
    symmetrizers: Vec<Rational>,
    scale: Rational,
    // (w_i, w_j) = gram_num[i][j] / gram_den
    gram_num: Vec<Vec<i128>>,
    gram_den: i128,
    // coweight/weight pairing <w_i^vee, w_j> = inv_cartan[i][j]
    inv_cartan: Vec<Vec<Rational>>,
    positive_roots: Vec<Weight>,
    positive_roots_simple: Vec<Vec<i64>>,
    w0_word: Vec<usize>,
    w0_perm: Vec<usize>,
    highest_roots: Vec<Weight>,
    coroot_hermite: IntMatrix,
    center: CenterGroup,
    weight_cache: RwLock<HashMap<Weight, Arc<WeightSystem>>>,
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootSystem")
            .field("type", &self.label())
            .field("scale", &self.scale)
            .finish_non_exhaustive()
    }
}

impl Clone for RootSystem {
    fn clone(&self) -> Self {
        RootSystem::with_scale(&self.factors, self.scale).expect("already validated")
    }
}

impl RootSystem {
    pub fn new(factors: &[SimpleType]) -> Result<Self> {
        Self::with_scale(factors, Rational::one())
    }

    pub fn from_label(label: &str) -> Result<Self> {
        Self::new(&parse_type_label(label)?)
    }

    /// Builds the root system with the invariant form multiplied by `scale`.
    pub fn with_scale(factors: &[SimpleType], scale: Rational) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidType {
                label: String::new(),
                reason: "at least one simple factor is required".into(),
            });
        }
        if !scale.is_positive() {
            return Err(Error::InvalidType {
                label: format_type_label(factors),
                reason: "form scale must be positive".into(),
            });
        }
        let n: usize = factors.iter().map(SimpleType::rank).sum();
        let mut offsets = Vec::with_capacity(factors.len());
        let mut root_gram = vec![vec![0i64; n]; n];
        let mut off = 0;
        for t in factors {
            offsets.push(off);
            let b = t.simple_root_gram();
            for i in 0..t.rank() {
                for j in 0..t.rank() {
                    root_gram[off + i][off + j] = b[i][j];
                }
            }
            off += t.rank();
        }
        let cartan: IntMatrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| 2 * root_gram[i][j] / root_gram[i][i])
                    .collect()
            })
            .collect();
        let d: Vec<i64> = (0..n).map(|i| root_gram[i][i] / 2).collect();
        let inv_cartan = lattice::inverse(&cartan)
            .ok_or_else(|| Error::Invariant("Cartan matrix is singular".into()))?;

        // G = scale * D * A^{-1}, stored over a common denominator
        let gram: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| scale * Rational::from_integer(d[i] as i128) * inv_cartan[i][j])
                    .collect()
            })
            .collect();
        let gram_den = gram
            .iter()
            .flatten()
            .fold(1i128, |acc, r| acc.lcm(r.denom()));
        let gram_num = gram
            .iter()
            .map(|row| {
                row.iter()
                    .map(|r| r.numer() * (gram_den / r.denom()))
                    .collect()
            })
            .collect();

        let symmetrizers = d
            .iter()
            .map(|&x| scale * Rational::from_integer(x as i128))
            .collect();

        let w0_word = greedy_w0_word(&cartan);
        let (positive_roots, positive_roots_simple) = roots_from_word(&cartan, &w0_word);

        let w0_perm = (0..n)
            .map(|j| {
                let img = apply_word(&cartan, &w0_word, Weight::fundamental(n, j).coords());
                let neg: Vec<i64> = img.iter().map(|c| -c).collect();
                neg.iter()
                    .position(|&c| c == 1)
                    .filter(|_| neg.iter().filter(|&&c| c != 0).count() == 1)
                    .ok_or_else(|| {
                        Error::Invariant("-w0 does not permute fundamental weights".into())
                    })
            })
            .collect::<Result<Vec<_>>>()?;

        let highest_roots = factors
            .iter()
            .zip(&offsets)
            .map(|(t, &start)| {
                let range = start..start + t.rank();
                let (idx, _) = positive_roots_simple
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| {
                        c.iter()
                            .enumerate()
                            .all(|(k, &x)| x == 0 || range.contains(&k))
                    })
                    .max_by_key(|(_, c)| c.iter().sum::<i64>())
                    .expect("every factor has a root");
                positive_roots[idx].clone()
            })
            .collect();

        let coroots_in_coweights = lattice::transpose(&cartan);
        let coroot_hermite = lattice::hermite_lower(&coroots_in_coweights);
        let center = build_center(&coroots_in_coweights, &coroot_hermite);

        Ok(RootSystem {
            factors: factors.to_vec(),
            offsets,
            cartan,
            symmetrizers,
            scale,
            gram_num,
            gram_den,
            inv_cartan,
            positive_roots,
            positive_roots_simple,
            w0_word,
            w0_perm,
            highest_roots,
            coroot_hermite,
            center,
            weight_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn factors(&self) -> &[SimpleType] {
        &self.factors
    }

    pub fn label(&self) -> String {
        format_type_label(&self.factors)
    }

    pub fn is_simple(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn symmetrizers(&self) -> &[Rational] {
        &self.symmetrizers
    }

    pub fn scale(&self) -> Rational {
        self.scale
    }

    /// Coordinate range of simple factor `f`.
    pub fn factor_range(&self, f: usize) -> std::ops::Range<usize> {
        let start = self.offsets[f];
        start..start + self.factors[f].rank()
    }

    /// `G[i][j] = (w_i, w_j)`.
    pub fn gram(&self) -> Vec<Vec<Rational>> {
        self.gram_num
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&x| Rational::new(x, self.gram_den))
                    .collect()
            })
            .collect()
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// Positive roots in simple-root coordinates, aligned with [`Self::positive_roots`].
    pub fn positive_roots_in_simple_basis(&self) -> &[Vec<i64>] {
        &self.positive_roots_simple
    }

    pub fn w0_word(&self) -> &[usize] {
        &self.w0_word
    }

    /// `sigma` with `-w0 w_j = w_{sigma(j)}`.
    pub fn w0_perm(&self) -> &[usize] {
        &self.w0_perm
    }

    pub fn highest_roots(&self) -> &[Weight] {
        &self.highest_roots
    }

    /// `rho = (1, ..., 1)`.
    pub fn weyl_vector(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }

    pub fn simple_root(&self, j: usize) -> Weight {
        Weight((0..self.rank()).map(|k| self.cartan[k][j]).collect())
    }

    pub fn simple_coroot_coweight_coords(&self, j: usize) -> Vec<i64> {
        self.cartan[j].clone()
    }

    pub fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() == self.rank() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: w.rank(),
            })
        }
    }

    pub fn check_dominant(&self, w: &Weight) -> Result<()> {
        self.check_rank(w)?;
        if w.is_dominant() {
            Ok(())
        } else {
            Err(Error::NotDominant(w.to_string()))
        }
    }

    /// `(x, y)` as an exact rational.
    pub fn inner_product(&self, x: &Weight, y: &Weight) -> Result<Rational> {
        self.check_rank(x)?;
        self.check_rank(y)?;
        Ok(Rational::new(self.pairing_numerator(x, y), self.gram_den))
    }

    /// The pairing `(x, y)` times [`Self::form_denominator`]; always an integer.
    pub fn pairing_numerator(&self, x: &Weight, y: &Weight) -> i128 {
        let mut acc = 0i128;
        for (i, &xi) in x.0.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let row = &self.gram_num[i];
            let mut s = 0i128;
            for (j, &yj) in y.0.iter().enumerate() {
                s += row[j] * yj as i128;
            }
            acc += xi as i128 * s;
        }
        acc
    }

    pub fn form_denominator(&self) -> i128 {
        self.gram_den
    }

    pub(crate) fn pair(&self, x: &Weight, y: &Weight) -> Rational {
        Rational::new(self.pairing_numerator(x, y), self.gram_den)
    }

    pub fn norm_squared(&self, x: &Weight) -> Rational {
        self.pair(x, x)
    }

    /// Simple reflection `s_i` applied to `w`.
    pub fn reflect(&self, i: usize, w: &Weight) -> Weight {
        let k = w.0[i];
        Weight(
            w.0.iter()
                .enumerate()
                .map(|(r, &c)| c - k * self.cartan[r][i])
                .collect(),
        )
    }

    /// `w0 w`.
    pub fn apply_w0(&self, w: &Weight) -> Result<Weight> {
        self.check_rank(w)?;
        Ok(Weight(apply_word(&self.cartan, &self.w0_word, &w.0)))
    }

    /// The duality involution `lambda -> -w0 lambda`.
    pub fn minus_w0(&self, w: &Weight) -> Result<Weight> {
        Ok(-&self.apply_w0(w)?)
    }

    /// Dominant element of the Weyl orbit of `w`.
    pub fn dominant_representative(&self, w: &Weight) -> Weight {
        let mut w = w.clone();
        while let Some(i) = w.0.iter().position(|&c| c < 0) {
            w = self.reflect(i, &w);
        }
        w
    }

    /// Simple-root coordinates of `w`, exact.
    pub fn simple_root_coords(&self, w: &Weight) -> Vec<Rational> {
        let n = self.rank();
        (0..n)
            .map(|k| {
                (0..n)
                    .map(|j| self.inv_cartan[k][j] * Rational::from_integer(w.0[j] as i128))
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .collect()
    }

    /// Canonical pairing `<xi, lambda>` of a coweight with a weight.
    pub fn coweight_pairing(&self, xi: &[i64], lambda: &Weight) -> Rational {
        let mut acc = Rational::zero();
        for (i, &x) in xi.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &l) in lambda.0.iter().enumerate() {
                if l != 0 {
                    acc += self.inv_cartan[i][j] * Rational::from_integer(x as i128 * l as i128);
                }
            }
        }
        acc
    }

    /// Index of the simple factor carrying coordinate `k`.
    pub fn factor_of(&self, k: usize) -> usize {
        self.offsets
            .iter()
            .rposition(|&o| o <= k)
            .expect("offsets start at zero")
    }

    /// Restriction of `w` to factor `f`, zero elsewhere.
    pub fn project_to_factor(&self, w: &Weight, f: usize) -> Weight {
        let range = self.factor_range(f);
        Weight(
            w.0.iter()
                .enumerate()
                .map(|(k, &c)| if range.contains(&k) { c } else { 0 })
                .collect(),
        )
    }

    pub fn center_group(&self) -> &CenterGroup {
        &self.center
    }

    /// Reduces a coweight-coordinate vector to its canonical class.
    pub fn center_element(&self, rep: &[i64]) -> Result<CenterElement> {
        if rep.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: rep.len(),
            });
        }
        Ok(CenterElement(lattice::reduce_mod_hermite(
            &self.coroot_hermite,
            rep,
        )))
    }

    pub fn center_zero(&self) -> CenterElement {
        CenterElement(vec![0; self.rank()])
    }

    pub fn center_add(&self, a: &CenterElement, b: &CenterElement) -> CenterElement {
        let sum: Vec<i64> = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
        CenterElement(lattice::reduce_mod_hermite(&self.coroot_hermite, &sum))
    }

    pub fn center_neg(&self, a: &CenterElement) -> CenterElement {
        let neg: Vec<i64> = a.0.iter().map(|x| -x).collect();
        CenterElement(lattice::reduce_mod_hermite(&self.coroot_hermite, &neg))
    }

    /// `true` iff `2 zeta` lies in the coroot lattice.
    pub fn is_half_coroot(&self, zeta: &CenterElement) -> bool {
        self.center_add(zeta, zeta).is_zero()
    }

    /// Dominant integral weights with `(lambda, lambda) <= radius`, in
    /// graded-lexicographic order.
    pub fn enumerate_dominant(&self, radius: Rational) -> Result<Vec<Weight>> {
        self.enumerate_dominant_capped(radius, usize::MAX)
    }

    /// As [`Self::enumerate_dominant`], failing once more than `cap` weights are found.
    pub fn enumerate_dominant_capped(&self, radius: Rational, cap: usize) -> Result<Vec<Weight>> {
        if !radius.is_positive() {
            return Err(Error::InvalidRadius);
        }
        // compare numerators: (l,l) * den <= radius * den
        let bound = Rational::from_integer(self.gram_den) * radius;
        let mut out = Vec::new();
        let mut cur = vec![0i64; self.rank()];
        self.enumerate_rec(0, &mut cur, 0, &bound, cap, &mut out)?;
        out.sort();
        Ok(out)
    }

    // all Gram entries are nonnegative, so the norm is monotone in every coordinate
    fn enumerate_rec(
        &self,
        k: usize,
        cur: &mut Vec<i64>,
        partial: i128,
        bound: &Rational,
        cap: usize,
        out: &mut Vec<Weight>,
    ) -> Result<()> {
        let n = self.rank();
        if k == n {
            if out.len() >= cap {
                return Err(Error::RowCap {
                    cap,
                    wanted: out.len() + 1,
                });
            }
            out.push(Weight(cur.clone()));
            return Ok(());
        }
        let mut v = 0i64;
        loop {
            // norm numerator with coordinates k+1.. set to zero
            let cross: i128 = (0..k).map(|i| self.gram_num[i][k] * cur[i] as i128).sum();
            let vv = v as i128;
            let norm = partial + 2 * vv * cross + vv * vv * self.gram_num[k][k];
            if Rational::from_integer(norm) > *bound {
                break;
            }
            cur[k] = v;
            self.enumerate_rec(k + 1, cur, norm, bound, cap, out)?;
            v += 1;
        }
        cur[k] = 0;
        Ok(())
    }

    pub(crate) fn weight_cache(&self) -> &RwLock<HashMap<Weight, Arc<WeightSystem>>> {
        &self.weight_cache
    }
}

fn greedy_w0_word(cartan: &IntMatrix) -> Vec<usize> {
    let n = cartan.len();
    let mut cur = vec![1i64; n];
    let mut word = Vec::new();
    while let Some(i) = cur.iter().position(|&c| c > 0) {
        let k = cur[i];
        for (r, c) in cur.iter_mut().enumerate() {
            *c -= k * cartan[r][i];
        }
        word.push(i);
    }
    word
}

fn apply_word(cartan: &IntMatrix, word: &[usize], w: &[i64]) -> Vec<i64> {
    // s_{i_1} ... s_{i_L} w: rightmost letter acts first
    let mut cur = w.to_vec();
    for &i in word.iter().rev() {
        let k = cur[i];
        for (r, c) in cur.iter_mut().enumerate() {
            *c -= k * cartan[r][i];
        }
    }
    cur
}

// beta_r = s_{i_1} ... s_{i_{r-1}} alpha_{i_r}, tracked in both bases
fn roots_from_word(cartan: &IntMatrix, word: &[usize]) -> (Vec<Weight>, Vec<Vec<i64>>) {
    let n = cartan.len();
    let mut roots = Vec::with_capacity(word.len());
    let mut simple = Vec::with_capacity(word.len());
    for r in 0..word.len() {
        let ir = word[r];
        let mut w: Vec<i64> = (0..n).map(|k| cartan[k][ir]).collect();
        let mut s = vec![0i64; n];
        s[ir] = 1;
        for &i in word[..r].iter().rev() {
            let k = w[i];
            for (row, c) in w.iter_mut().enumerate() {
                *c -= k * cartan[row][i];
            }
            s[i] -= k;
        }
        roots.push(Weight(w));
        simple.push(s);
    }
    (roots, simple)
}

fn build_center(coroots: &IntMatrix, hermite: &IntMatrix) -> CenterGroup {
    let n = hermite.len();
    let invariant_factors = lattice::invariant_factors(coroots);
    let order: u64 = (0..n).map(|i| hermite[i][i] as u64).product();
    // every vector with 0 <= v[i] < h[i][i] is already canonical
    let mut elements = vec![vec![]];
    for i in 0..n {
        let mut next = Vec::new();
        for prefix in &elements {
            for v in 0..hermite[i][i] {
                let mut p: Vec<i64> = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        elements = next;
    }
    let mut elements: Vec<CenterElement> = elements.into_iter().map(CenterElement).collect();
    elements.sort();
    CenterGroup {
        invariant_factors,
        order,
        elements,
    }
}

/// Brute-force closure of the simple roots under simple reflections.
///
/// Independent of the reduced-word enumeration; intended for checks.
pub fn roots_by_reflection_closure(rs: &RootSystem) -> BTreeSet<Weight> {
    let mut seen: HashSet<Weight> = HashSet::new();
    let mut queue: VecDeque<Weight> = (0..rs.rank()).map(|j| rs.simple_root(j)).collect();
    while let Some(w) = queue.pop_front() {
        if !seen.insert(w.clone()) {
            continue;
        }
        for i in 0..rs.rank() {
            let r = rs.reflect(i, &w);
            if !seen.contains(&r) {
                queue.push_back(r);
            }
        }
    }
    seen.into_iter().collect()
}
