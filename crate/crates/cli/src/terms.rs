//! The `mu=1,0:a=1/2:zeta=0,0` term mini-language.

use std::fmt;

use kq_core::scalar::{format_rational, parse_rational};
use kq_core::{Complex64, Rational, Weight};

use crate::report::format_float;

#[derive(Debug, Clone, PartialEq)]
pub enum Coefficient {
    Exact(Rational),
    Real(f64),
    Complex(Complex64),
}

impl Coefficient {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Coefficient::Exact(r) => Complex64::new(kq_core::scalar::rational_to_f64(r), 0.0),
            Coefficient::Real(x) => Complex64::new(*x, 0.0),
            Coefficient::Complex(z) => *z,
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Coefficient::Exact(r) => Some(*r),
            _ => None,
        }
    }

    /// The real value, if the imaginary part is zero.
    pub fn as_real(&self) -> Option<f64> {
        let z = self.to_complex();
        (z.im == 0.0).then_some(z.re)
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Exact(r) => f.write_str(&format_rational(r)),
            Coefficient::Real(x) => f.write_str(&format_float(*x)),
            Coefficient::Complex(z) => {
                let sign = if z.im < 0.0 || (z.im == 0.0 && z.im.is_sign_negative()) {
                    "-"
                } else {
                    "+"
                };
                write!(
                    f,
                    "{}{sign}{}i",
                    format_float(z.re),
                    format_float(z.im.abs())
                )
            }
        }
    }
}

fn parse_coefficient(s: &str) -> Result<Coefficient, String> {
    let s = s.trim();
    if let Some(r) = parse_rational(s) {
        return Ok(Coefficient::Exact(r));
    }
    if let Some(body) = s.strip_suffix('i') {
        // split at the last sign that is not an exponent sign or leading
        let bytes = body.as_bytes();
        let split = (1..bytes.len()).rev().find(|&k| {
            (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E')
        });
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            other => other,
        };
        let re: f64 = re
            .parse()
            .map_err(|_| format!("cannot parse `{s}` as a complex number"))?;
        let im: f64 = im
            .trim_start_matches('+')
            .parse()
            .map_err(|_| format!("cannot parse `{s}` as a complex number"))?;
        return Ok(Coefficient::Complex(Complex64::new(re, im)));
    }
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(Coefficient::Real(x)),
        _ => Err(format!("cannot parse `{s}` as a number")),
    }
}

/// One `--term`.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub mu: Weight,
    pub a: Coefficient,
    pub zeta: Option<Vec<i64>>,
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mu={}:a={}", self.mu, self.a)?;
        if let Some(z) = &self.zeta {
            let parts: Vec<String> = z.iter().map(i64::to_string).collect();
            write!(f, ":zeta={}", parts.join(","))?;
        }
        Ok(())
    }
}

pub fn parse_ints(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| format!("`{}` is not an integer", p.trim()))
        })
        .collect()
}

pub fn parse_term(s: &str) -> Result<Term, String> {
    let mut mu = None;
    let mut a = None;
    let mut zeta = None;
    for field in s.split(':') {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| format!("field `{field}` is not of the form key=value"))?;
        let slot_err = |e: String| format!("field `{key}`: {e}");
        match key.trim() {
            "mu" if mu.is_none() => mu = Some(Weight::new(parse_ints(value).map_err(slot_err)?)),
            "a" if a.is_none() => a = Some(parse_coefficient(value).map_err(slot_err)?),
            "zeta" if zeta.is_none() => zeta = Some(parse_ints(value).map_err(slot_err)?),
            "mu" | "a" | "zeta" => return Err(format!("field `{key}` given twice")),
            other => return Err(format!("unknown field `{other}` (expected mu, a, zeta)")),
        }
    }
    Ok(Term {
        mu: mu.ok_or("missing field `mu`")?,
        a: a.unwrap_or(Coefficient::Exact(Rational::from_integer(1))),
        zeta,
    })
}

/// `zeta=..:mu=..` for an index pair.
pub fn parse_pair(s: &str) -> Result<(Vec<i64>, Vec<i64>), String> {
    let t = parse_term(s)?;
    if t.a != Coefficient::Exact(Rational::from_integer(1)) {
        return Err("index pairs take only `zeta` and `mu`".into());
    }
    let zeta = t.zeta.unwrap_or_else(|| vec![0; t.mu.rank()]);
    Ok((zeta, t.mu.coords().to_vec()))
}
