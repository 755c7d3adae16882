//! Partitions of bounded length and the coefficient arithmetic built on them.
//!
//! A [`Partition`] always carries its ambient length `m` explicitly, with
//! trailing zeros stored. Two partitions that differ only in trailing zeros
//! are *not* equal; compare [`Partition::normalized`] when that is intended.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing tuple `(μ_1, …, μ_m)` of nonnegative integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition { parts: vec![], reason: "ambient length must be positive".into() });
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition {
                parts: parts.iter().map(|&p| p as i64).collect(),
                reason: "parts must be weakly decreasing".into(),
            });
        }
        Ok(Self { parts })
    }

    /// Accepts signed input so negative parts are reported rather than wrapped.
    pub fn from_signed(parts: &[i64]) -> Result<Self> {
        if let Some(&bad) = parts.iter().find(|&&p| p < 0 || p > u32::MAX as i64) {
            return Err(Error::InvalidPartition {
                parts: parts.to_vec(),
                reason: format!("part {bad} is out of range"),
            });
        }
        Self::new(parts.iter().map(|&p| p as u32).collect())
    }

    /// Parses `"2,1,0"` (brackets and spaces tolerated) and pads to `m`.
    pub fn parse(text: &str, m: usize) -> Result<Self> {
        let trimmed = text.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let parts = if trimmed.trim().is_empty() {
            vec![]
        } else {
            trimmed
                .split(',')
                .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad partition {text:?}"))))
                .collect::<Result<Vec<_>>>()?
        };
        let nonzero: Vec<i64> = parts.iter().copied().filter(|&p| p != 0).collect();
        if nonzero.len() > m {
            return Err(Error::InvalidPartition { parts, reason: format!("more than {m} nonzero parts") });
        }
        if !parts.is_empty() {
            Self::from_signed(&parts)?;
        }
        let mut padded = parts;
        padded.truncate(m.max(nonzero.len()));
        padded.resize(m, 0);
        Self::from_signed(&padded)
    }

    pub fn zero(m: usize) -> Self {
        Self { parts: vec![0; m.max(1)] }
    }

    /// `(1^i)`: `i` ones followed by zeros.
    pub fn ones(i: usize, m: usize) -> Result<Self> {
        if i > m {
            return Err(Error::OutOfRange(format!("(1^{i}) needs i <= m = {m}")));
        }
        let mut parts = vec![0; m];
        parts[..i].fill(1);
        Self::new(parts)
    }

    /// `(i)`: a single row of length `i`.
    pub fn row(i: u32, m: usize) -> Result<Self> {
        let mut parts = vec![0; m];
        parts[0] = i;
        Self::new(parts)
    }

    /// `(2, 1^{i-1})` for `1 <= i <= m`.
    pub fn hook(i: usize, m: usize) -> Result<Self> {
        if i == 0 || i > m {
            return Err(Error::OutOfRange(format!("(2,1^{{i-1}}) needs 1 <= i <= m = {m}, got {i}")));
        }
        let mut parts = vec![0; m];
        parts[0] = 2;
        parts[1..i].fill(1);
        Self::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Ambient length.
    pub fn m(&self) -> usize {
        self.parts.len()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.parts.iter().take_while(|&&p| p > 0).count()
    }

    pub fn is_zero(&self) -> bool {
        self.parts[0] == 0
    }

    /// Parts with trailing zeros removed.
    pub fn normalized(&self) -> &[u32] {
        &self.parts[..self.length()]
    }

    /// Same shape at a different ambient length.
    pub fn with_length(&self, m: usize) -> Result<Self> {
        if self.length() > m {
            return Err(Error::InvalidPartition {
                parts: self.parts.iter().map(|&p| p as i64).collect(),
                reason: format!("does not fit in length {m}"),
            });
        }
        let mut parts = self.normalized().to_vec();
        parts.resize(m, 0);
        Self::new(parts)
    }

    /// Column lengths of the Ferrers shape, at ambient length `max(μ_1, 1)`.
    pub fn conjugate(&self) -> Self {
        let width = self.parts[0] as usize;
        let parts =
            (1..=width.max(1)).map(|c| self.parts.iter().filter(|&&p| p as usize >= c).count() as u32).collect();
        Self { parts }
    }

    /// Shape containment `σ_i ≤ κ_i` for all `i`; missing parts count as zero.
    pub fn is_contained_in(&self, other: &Self) -> bool {
        let len = self.m().max(other.m());
        (0..len).all(|i| self.parts.get(i).copied().unwrap_or(0) <= other.parts.get(i).copied().unwrap_or(0))
    }

    /// `ρ_σ = Σ σ_i (σ_i − 2i + 1)`.
    pub fn rho(&self) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(k, &s)| {
                let s = s as i64;
                s * (s - 2 * (k as i64 + 1) + 1)
            })
            .sum()
    }

    /// Increments part `i` (1-based); `None` when the result is not weakly
    /// decreasing.
    pub fn raise(&self, i: usize) -> Result<Option<Self>> {
        if i == 0 || i > self.m() {
            return Err(Error::OutOfRange(format!("raise index {i} outside 1..={}", self.m())));
        }
        let k = i - 1;
        if k > 0 && self.parts[k - 1] == self.parts[k] {
            return Ok(None);
        }
        let mut parts = self.parts.clone();
        parts[k] += 1;
        Ok(Some(Self { parts }))
    }

    /// Indices `i` with `σ^{↑i}` a partition contained in `kappa`.
    pub fn raise_set(&self, kappa: &Self) -> Vec<usize> {
        (1..=self.m()).filter(|&i| matches!(self.raise(i), Ok(Some(up)) if up.is_contained_in(kappa))).collect()
    }

    /// All partitions contained in `self`, in graded-lex order.
    pub fn sub_partitions(&self) -> Vec<Self> {
        let mut out = Vec::new();
        let mut current = vec![0u32; self.m()];
        fn rec(k: usize, bound: u32, kappa: &[u32], current: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if k == kappa.len() {
                out.push(Partition { parts: current.clone() });
                return;
            }
            for v in 0..=bound.min(kappa[k]) {
                current[k] = v;
                rec(k + 1, v, kappa, current, out);
            }
            current[k] = 0;
        }
        rec(0, u32::MAX, &self.parts, &mut current, &mut out);
        out.sort();
        out
    }
}

impl Ord for Partition {
    /// Graded lexicographic: weight first, then parts.
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", body.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<i64>::deserialize(d)?;
        Partition::from_signed(&parts).map_err(serde::de::Error::custom)
    }
}

/// All `μ` of length `m` with `Σ μ_i ≤ t`, in graded-lex order.
pub fn enumerate_t_t(m: usize, t: u32) -> Vec<Partition> {
    let mut out: Vec<Partition> = (0..=t)
        .flat_map(|w| {
            // every partition of weight w fits in the w x m box
            Partition { parts: vec![w; m.max(1)] }.sub_partitions().into_iter().filter(move |p| p.weight() == w)
        })
        .collect();
    out.dedup();
    out
}

/// Generalised binomial `Π_{i=0}^{r-1} (k − i)/(r − i)`; negative `r` is
/// rejected.
pub fn binom(k: i64, r: i64) -> Result<BigRational> {
    if r < 0 {
        return Err(Error::OutOfRange(format!("binom({k}, {r}) needs r >= 0")));
    }
    Ok(binom0(k, r))
}

/// Binomial with the convention that negative `r` gives 0, for use inside
/// closed-form sums.
pub(crate) fn binom0(k: i64, r: i64) -> BigRational {
    if r < 0 {
        return BigRational::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..r {
        num *= BigInt::from(k - i);
        den *= BigInt::from(r - i);
    }
    BigRational::new(num, den)
}

/// Ascending product `(c)_s = c (c+1) … (c+s−1)`.
pub fn ascending(c: &BigRational, s: u32) -> BigRational {
    (0..s).fold(BigRational::one(), |acc, i| acc * (c + BigRational::from_integer(BigInt::from(i))))
}

/// `[c]_σ = Π_i (c − i + 1)_{σ_i}`.
pub fn hyper_coeff(c: &BigRational, sigma: &Partition) -> BigRational {
    sigma
        .parts()
        .iter()
        .enumerate()
        .fold(BigRational::one(), |acc, (k, &s)| acc * ascending(&(c - BigRational::from_integer(BigInt::from(k))), s))
}
