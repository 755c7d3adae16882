//! Scalar types shared by every module.
//!
//! All of the algebra runs over [`ExactScalar`] (arbitrary precision
//! rationals). Symmetric-function evaluation is generic over [`Scalar`] so
//! that float principal angles can be fed through the same code paths.

use std::fmt::Debug;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use num::Complex;

use crate::error::{Error, Result};
use crate::linalg::Field;

/// Arbitrary precision rational.
pub type ExactScalar = BigRational;

/// Gaussian rational `a + b i`.
pub type ExactComplex = Complex<BigRational>;

/// Field elements the symmetric-function layer can evaluate over.
pub trait Scalar: Field + Debug {
    fn from_rational(r: &BigRational) -> Self;

    fn from_i64(v: i64) -> Self;
}

impl Scalar for BigRational {
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Scalar for f64 {
    fn from_rational(r: &BigRational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p`, `p/q`; decimal literals like `0.25` are accepted and
/// converted exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        let whole_abs = whole.trim_start_matches(['-', '+']);
        let whole_abs = if whole_abs.is_empty() { "0" } else { whole_abs };
        if !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{whole_abs}{frac}");
        let p: BigInt = digits.parse().map_err(|_| bad())?;
        let q = num::pow(BigInt::from(10), frac.len());
        let r = BigRational::new(p, q);
        return Ok(if negative { -r } else { r });
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(p))
}

/// Formats a Gaussian rational as `re` or `re+im*i` / `re-im*i`.
pub fn format_complex(z: &ExactComplex) -> String {
    if z.im.is_zero() {
        return format_rational(&z.re);
    }
    let sign = if z.im.is_negative() { '-' } else { '+' };
    format!("{}{}{}*i", format_rational(&z.re), sign, format_rational(&z.im.abs()))
}

/// Splits a complex literal into its real and imaginary text.
///
/// The imaginary text is `""`, `"+"` or `"-"` for a bare `i`.
fn split_complex(s: &str) -> Result<(String, Option<String>)> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(Error::Parse("empty complex literal".into()));
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok((t, None));
    };
    let bytes = body.as_bytes();
    let is_sign = |k: usize| bytes[k] == b'+' || bytes[k] == b'-';
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        if is_sign(k) && !matches!(bytes[k - 1], b'e' | b'E') {
            let mut j = k;
            while j > 1 && is_sign(j - 1) {
                j -= 1;
            }
            split = Some(j);
            break;
        }
    }
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = im.strip_suffix('*').unwrap_or(im);
    let im = match im.strip_prefix('+') {
        Some(rest) if !rest.is_empty() => rest,
        _ => im,
    };
    Ok((re.to_string(), Some(im.to_string())))
}

/// Parses Gaussian rationals: `re`, `re+im*i`, `re-im*i`, `im*i`, `i`, `-i`,
/// `re+i`.
pub fn parse_complex(s: &str) -> Result<ExactComplex> {
    let (re, im) = split_complex(s)?;
    let im = match im.as_deref() {
        None => BigRational::zero(),
        Some("") | Some("+") => BigRational::one(),
        Some("-") => -BigRational::one(),
        Some(other) => parse_rational(other)?,
    };
    Ok(Complex::new(parse_rational(&re)?, im))
}

/// Float counterpart of [`parse_complex`]; components may also be rationals.
pub fn parse_complex_f64(s: &str) -> Result<Complex<f64>> {
    let component = |t: &str| -> Result<f64> {
        match t.parse::<f64>() {
            Ok(v) => Ok(v),
            Err(_) => Ok(f64::from_rational(&parse_rational(t)?)),
        }
    };
    let (re, im) = split_complex(s)?;
    let im = match im.as_deref() {
        None => 0.0,
        Some("") | Some("+") => 1.0,
        Some("-") => -1.0,
        Some(other) => component(other)?,
    };
    Ok(Complex::new(component(&re)?, im))
}

pub fn complex_to_f64(z: &ExactComplex) -> Complex<f64> {
    Complex::new(f64::from_rational(&z.re), f64::from_rational(&z.im))
}

/// Serde adapter writing a rational as a `"p/q"` string.
pub mod rational_string {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        for s in ["0", "-3", "7/2", "-1/3"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn complex_literals() {
        let cases = [
            ("1", (int(1), int(0))),
            ("1+1*i", (int(1), int(1))),
            ("1-1*i", (int(1), int(-1))),
            ("0+1*i", (int(0), int(1))),
            ("i", (int(0), int(1))),
            ("-i", (int(0), int(-1))),
            ("1/2-3/4*i", (rat(1, 2), rat(-3, 4))),
            ("2*i", (int(0), int(2))),
            ("-1/2+i", (rat(-1, 2), int(1))),
            ("1/2+-3/4*i", (rat(1, 2), rat(-3, 4))),
        ];
        for (s, (re, im)) in cases {
            assert_eq!(parse_complex(s).unwrap(), Complex::new(re, im), "{s}");
        }
        assert_eq!(format_complex(&Complex::new(int(1), int(-1))), "1-1*i");
        assert_eq!(format_complex(&Complex::new(rat(1, 2), int(0))), "1/2");
        let z = parse_complex_f64("0.5-1e-3*i").unwrap();
        assert_eq!((z.re, z.im), (0.5, -1e-3));
        assert_eq!(parse_complex_f64("1/4").unwrap().re, 0.25);
    }
}
