//! Scalar abstraction shared by the exact and floating-point code paths.
//!
//! Lattice pairings are always exact rationals. Everything downstream of a
//! pairing (classical eigenvalues, Dynkin sums, coefficients of a Laplacian)
//! is written against [`Scalar`], so the same routine yields an exact
//! [`Rational`] answer or an `f64`/`f32` approximation depending on the
//! instantiation.

use std::fmt::{Debug, Display};

use num_rational::Ratio;
use num_traits::{Num, Signed, ToPrimitive};

/// Exact rational numbers used for all lattice arithmetic.
pub type Rational = Ratio<i128>;

pub trait Scalar: Num + Signed + Clone + PartialOrd + Debug + Display {
    /// `true` when arithmetic in this type is exact.
    const EXACT: bool;

    fn from_rational(r: &Rational) -> Self;

    fn to_f64(&self) -> f64;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_rational(r: &Rational) -> Self {
        *r
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r) as f32
    }

    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    // numerators and denominators here are small; the quotient is correctly rounded
    // whenever both fit in 53 bits
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) => n / d,
        _ => f64::NAN,
    }
}

/// Renders a rational as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `p/q`, or a finite decimal such as `-0.125` exactly.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: i128 = p.trim().parse().ok()?;
        let q: i128 = q.trim().parse().ok()?;
        if q == 0 {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    if let Ok(p) = s.parse::<i128>() {
        return Some(Rational::from_integer(p));
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.')?;
    if frac.is_empty() && int.is_empty() {
        return None;
    }
    if !int.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    if frac.len() > 30 {
        return None;
    }
    let digits = format!("{int}{frac}");
    let numer: i128 = if digits.is_empty() {
        0
    } else {
        digits.parse().ok()?
    };
    let denom = 10i128.checked_pow(frac.len() as u32)?;
    Some(Rational::new(sign * numer, denom))
}
