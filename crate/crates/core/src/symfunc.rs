//! Symmetric polynomials in `m` variables, handled by evaluation.
//!
//! Schur polynomials are evaluated with the Jacobi–Trudi determinant
//! `det(h_{μ_i − i + j})`, which stays well defined when coordinates
//! coincide (the all-ones point in particular). Evaluation points are plain
//! slices `y = (y_1, …, y_m)` over any [`Scalar`].

use std::collections::BTreeMap;

use num::rational::BigRational;
use num::traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::determinant;
use crate::partitions::Partition;
use crate::scalar::{format_rational, parse_rational, Scalar};

/// `e_0(y), …, e_upto(y)`, expanding `Π (1 + y_j t)`.
pub fn elementary_all<S: Scalar>(y: &[S], upto: usize) -> Vec<S> {
    let mut e = vec![S::zero(); upto + 1];
    e[0] = S::one();
    for (count, yj) in y.iter().enumerate() {
        for k in (1..=upto.min(count + 1)).rev() {
            e[k] = e[k].clone() + yj.clone() * e[k - 1].clone();
        }
    }
    e
}

/// `h_0(y), …, h_upto(y)` from `h_k = Σ_{j≥1} (−1)^{j−1} e_j h_{k−j}`.
pub fn complete_all<S: Scalar>(y: &[S], upto: usize) -> Vec<S> {
    let m = y.len();
    let e = elementary_all(y, m);
    let mut h = vec![S::zero(); upto + 1];
    h[0] = S::one();
    for k in 1..=upto {
        let mut acc = S::zero();
        for j in 1..=k.min(m) {
            let term = e[j].clone() * h[k - j].clone();
            acc = if j % 2 == 1 { acc + term } else { acc - term };
        }
        h[k] = acc;
    }
    h
}

/// `e_i(y)`; zero when `i > m`.
pub fn elementary_eval<S: Scalar>(i: usize, y: &[S]) -> S {
    if i > y.len() {
        return S::zero();
    }
    elementary_all(y, i).pop().expect("nonempty")
}

pub fn complete_eval<S: Scalar>(i: usize, y: &[S]) -> S {
    complete_all(y, i).pop().expect("nonempty")
}

fn check_ambient<S>(mu: &Partition, y: &[S]) -> Result<()> {
    if mu.m() != y.len() {
        return Err(Error::AmbientMismatch { expected: mu.m(), found: y.len() });
    }
    Ok(())
}

fn jacobi_trudi<S: Scalar>(mu: &Partition, h: &[S]) -> S {
    let len = mu.length();
    if len == 0 {
        return S::one();
    }
    let parts = mu.parts();
    let matrix: Vec<Vec<S>> = (0..len)
        .map(|i| {
            (0..len)
                .map(|j| {
                    let idx = parts[i] as i64 - i as i64 + j as i64;
                    if idx < 0 {
                        S::zero()
                    } else {
                        h[idx as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    determinant(&matrix)
}

/// `X_μ(y)` via Jacobi–Trudi.
pub fn schur_eval<S: Scalar>(mu: &Partition, y: &[S]) -> Result<S> {
    check_ambient(mu, y)?;
    let h = complete_all(y, mu.parts()[0] as usize + mu.length());
    Ok(jacobi_trudi(mu, &h))
}

/// `X_μ(y)` via the dual (Giambelli/Nägelsbach–Kostka) determinant
/// `det(e_{μ′_i − i + j})`.
pub fn giambelli_eval<S: Scalar>(mu: &Partition, y: &[S]) -> Result<S> {
    check_ambient(mu, y)?;
    let conj = mu.conjugate();
    let len = conj.length();
    if len == 0 {
        return Ok(S::one());
    }
    let e = elementary_all(y, y.len());
    let get = |idx: i64| -> S {
        if idx < 0 || idx as usize >= e.len() {
            S::zero()
        } else {
            e[idx as usize].clone()
        }
    };
    let parts = conj.parts();
    let matrix: Vec<Vec<S>> =
        (0..len).map(|i| (0..len).map(|j| get(parts[i] as i64 - i as i64 + j as i64)).collect()).collect();
    Ok(determinant(&matrix))
}

/// `X_μ(1, …, 1) = Π_{i<j} (μ_i − μ_j + j − i)/(j − i)`.
pub fn schur_norm(mu: &Partition) -> BigRational {
    let parts = mu.parts();
    let m = parts.len();
    let mut value = BigRational::one();
    for i in 0..m {
        for j in i + 1..m {
            let gap = (j - i) as i64;
            let num = parts[i] as i64 - parts[j] as i64 + gap;
            value *= BigRational::new(num.into(), gap.into());
        }
    }
    value
}

/// `X*_μ(y) = X_μ(y) / X_μ(1, …, 1)`.
pub fn normalized_schur_eval<S: Scalar>(mu: &Partition, y: &[S]) -> Result<S> {
    Ok(schur_eval(mu, y)? / S::from_rational(&schur_norm(mu)))
}

/// A symmetric polynomial written in the normalized Schur basis `{X*_σ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurExpansion {
    m: usize,
    coeffs: BTreeMap<Partition, BigRational>,
}

impl SchurExpansion {
    pub fn new(m: usize) -> Self {
        Self { m, coeffs: BTreeMap::new() }
    }

    pub fn from_terms<I>(m: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Partition, BigRational)>,
    {
        let mut out = Self::new(m);
        for (sigma, c) in terms {
            out.add_term(sigma, c)?;
        }
        Ok(out)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, BigRational> {
        &self.coeffs
    }

    pub fn coeff(&self, sigma: &Partition) -> BigRational {
        self.coeffs.get(sigma).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds `c · X*_σ`, dropping the entry if it cancels to zero.
    pub fn add_term(&mut self, sigma: Partition, c: BigRational) -> Result<()> {
        if sigma.m() != self.m {
            return Err(Error::AmbientMismatch { expected: self.m, found: sigma.m() });
        }
        if c.is_zero() {
            return Ok(());
        }
        let slot = self.coeffs.entry(sigma).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    pub fn scaled(&self, factor: &BigRational) -> Self {
        let mut out = Self::new(self.m);
        if factor.is_zero() {
            return out;
        }
        out.coeffs = self.coeffs.iter().map(|(k, v)| (k.clone(), v * factor)).collect();
        out
    }

    /// Value at `(1, …, 1)`, i.e. the coefficient sum.
    pub fn at_ones(&self) -> BigRational {
        self.coeffs.values().fold(BigRational::zero(), |acc, c| acc + c)
    }

    /// `Σ_σ c_σ X*_σ(y)`, sharing one table of `h_k(y)` across terms.
    pub fn eval<S: Scalar>(&self, y: &[S]) -> Result<S> {
        if y.len() != self.m {
            return Err(Error::AmbientMismatch { expected: self.m, found: y.len() });
        }
        let Some(depth) = self.coeffs.keys().map(|s| s.parts()[0] as usize + s.length()).max() else {
            return Ok(S::zero());
        };
        let h = complete_all(y, depth);
        let mut total = S::zero();
        for (sigma, c) in &self.coeffs {
            let x = jacobi_trudi(sigma, &h) / S::from_rational(&schur_norm(sigma));
            total = total + S::from_rational(c) * x;
        }
        Ok(total)
    }
}

pub fn expansion_eval<S: Scalar>(p: &SchurExpansion, y: &[S]) -> Result<S> {
    p.eval(y)
}

/// `X*_{(1)} · X*_{(1^j)}` as a two-term expansion (one term when `j = m`).
pub fn pieri_e1(j: usize, m: usize) -> Result<SchurExpansion> {
    if j == 0 || j > m {
        return Err(Error::OutOfRange(format!("pieri_e1 needs 1 <= j <= m = {m}, got {j}")));
    }
    let (jj, mm) = (j as i64, m as i64);
    let mut out = SchurExpansion::new(m);
    out.add_term(Partition::hook(j, m)?, BigRational::new((jj * (mm + 1)).into(), ((jj + 1) * mm).into()))?;
    if j < m {
        out.add_term(Partition::ones(j + 1, m)?, BigRational::new((mm - jj).into(), ((jj + 1) * mm).into()))?;
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    partition: Partition,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct ExpansionWire {
    m: usize,
    terms: Vec<TermWire>,
}

impl Serialize for SchurExpansion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ExpansionWire {
            m: self.m,
            terms: self
                .coeffs
                .iter()
                .map(|(p, c)| TermWire { partition: p.clone(), coeff: format_rational(c) })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SchurExpansion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = ExpansionWire::deserialize(d)?;
        let terms = wire
            .terms
            .into_iter()
            .map(|t| Ok((t.partition, parse_rational(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        SchurExpansion::from_terms(wire.m, terms).map_err(serde::de::Error::custom)
    }
}
