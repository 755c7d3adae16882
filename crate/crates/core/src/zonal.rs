//! Zonal orthogonal polynomials `Z_μ` on `G(m, C^n)`, written in the
//! normalized Schur basis.
//!
//! The general construction goes through the shifted-expansion coefficients
//! `[κ; σ]` (obtained by exact interpolation) and the hypergeometric pair
//! coefficients `[c]_{(κ,σ)}`. The closed forms for the families `(1^i)`,
//! `(i)` and `(2,1^{i−1})` are provided separately and checked against it.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::solve;
use crate::partitions::{binom0, hyper_coeff, Partition};
use crate::scalar::{int, Scalar};
use crate::symfunc::{normalized_schur_eval, SchurExpansion};

/// Reseed budget for the interpolation solve.
const MAX_INTERPOLATION_ATTEMPTS: usize = 16;

fn check_ambient(m: usize, n: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::OutOfRange("m must be positive".into()));
    }
    if n < 2 * m {
        return Err(Error::OutOfRange(format!("need n >= 2m, got m = {m}, n = {n}")));
    }
    Ok(())
}

/// Highest weight `(μ_1, …, μ_m, 0, …, 0, −μ_m, …, −μ_1)` of length `n`.
pub fn phi(mu: &Partition, n: usize) -> Result<Vec<i64>> {
    let m = mu.m();
    check_ambient(m, n)?;
    let mut out: Vec<i64> = mu.parts().iter().map(|&p| p as i64).collect();
    out.resize(n - m, 0);
    out.extend(mu.parts().iter().rev().map(|&p| -(p as i64)));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarmonicDimension {
    pub mu: Partition,
    pub n: usize,
    #[serde(serialize_with = "crate::zonal::bigint_string")]
    pub value: BigInt,
}

pub(crate) fn bigint_string<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// `dim H_μ` by the Weyl dimension formula applied to `phi(μ, n)`.
pub fn dim_h(mu: &Partition, n: usize) -> Result<HarmonicDimension> {
    let lambda = phi(mu, n)?;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..n {
        for j in i + 1..n {
            let gap = (j - i) as i64;
            num *= BigInt::from(lambda[i] - lambda[j] + gap);
            den *= BigInt::from(gap);
        }
    }
    Ok(HarmonicDimension { mu: mu.clone(), n, value: num / den })
}

pub(crate) fn dim_h_rational(mu: &Partition, n: usize) -> Result<BigRational> {
    Ok(BigRational::from_integer(dim_h(mu, n)?.value))
}

/// `Z_μ` together with its ambient parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZonalPolynomial {
    pub mu: Partition,
    pub m: usize,
    pub n: usize,
    pub expansion: SchurExpansion,
}

impl ZonalPolynomial {
    pub fn eval<S: Scalar>(&self, y: &[S]) -> Result<S> {
        self.expansion.eval(y)
    }

    pub fn at_ones(&self) -> BigRational {
        self.expansion.at_ones()
    }
}

type Row = Arc<BTreeMap<Partition, BigRational>>;

/// Memo tables for shifted expansions and zonal polynomials.
///
/// Reads take a shared lock; a miss computes outside any lock and inserts
/// under the write lock, so concurrent misses may duplicate work but always
/// store identical values.
pub struct ZonalCache {
    seed: u64,
    shifted: RwLock<HashMap<Partition, Row>>,
    zonal: RwLock<HashMap<(Partition, usize), Arc<ZonalPolynomial>>>,
}

impl Default for ZonalCache {
    fn default() -> Self {
        Self::with_seed(0)
    }
}

impl ZonalCache {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, shifted: RwLock::default(), zonal: RwLock::default() }
    }

    pub fn global() -> &'static ZonalCache {
        static CACHE: OnceLock<ZonalCache> = OnceLock::new();
        CACHE.get_or_init(ZonalCache::default)
    }

    /// All coefficients `[κ; σ]` of `X*_κ(y + 1) = Σ_σ [κ; σ] X*_σ(y)`.
    pub fn shifted_expansion(&self, kappa: &Partition) -> Result<Row> {
        if let Some(row) = self.shifted.read().expect("cache poisoned").get(kappa) {
            return Ok(row.clone());
        }
        let row = Arc::new(self.interpolate(kappa)?);
        self.shifted.write().expect("cache poisoned").entry(kappa.clone()).or_insert(row.clone());
        Ok(row)
    }

    fn interpolate(&self, kappa: &Partition) -> Result<BTreeMap<Partition, BigRational>> {
        let basis = kappa.sub_partitions();
        let m = kappa.m();
        let count = basis.len();
        for attempt in 0..MAX_INTERPOLATION_ATTEMPTS {
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed.wrapping_add(attempt as u64));
            let mut lhs = Vec::with_capacity(count);
            let mut rhs = Vec::with_capacity(count);
            for _ in 0..count {
                let y: Vec<BigRational> = (0..m)
                    .map(|_| BigRational::new(rng.random_range(-40i64..=40).into(), rng.random_range(1i64..=17).into()))
                    .collect();
                let shifted: Vec<BigRational> = y.iter().map(|v| v + BigRational::one()).collect();
                lhs.push(basis.iter().map(|sigma| normalized_schur_eval(sigma, &y)).collect::<Result<Vec<_>>>()?);
                rhs.push(vec![normalized_schur_eval(kappa, &shifted)?]);
            }
            if let Some(x) = solve(&lhs, &rhs) {
                return Ok(basis.into_iter().zip(x).map(|(s, mut col)| (s, col.remove(0))).collect());
            }
        }
        Err(Error::SingularInterpolation { attempts: MAX_INTERPOLATION_ATTEMPTS })
    }

    pub fn qbinom(&self, kappa: &Partition, sigma: &Partition) -> Result<BigRational> {
        if kappa.m() != sigma.m() {
            return Err(Error::AmbientMismatch { expected: kappa.m(), found: sigma.m() });
        }
        if !sigma.is_contained_in(kappa) {
            return Ok(BigRational::zero());
        }
        Ok(self.shifted_expansion(kappa)?.get(sigma).cloned().unwrap_or_else(BigRational::zero))
    }

    /// `[c]_{(κ,σ)}` for every `σ ≤ κ`, base `[c]_{(κ,κ)} = 1`.
    pub fn hyper_pair_table(&self, c: &BigRational, kappa: &Partition) -> Result<BTreeMap<Partition, BigRational>> {
        let k = kappa.weight() as i64;
        let rho_k = kappa.rho();
        let mut table = BTreeMap::new();
        // descending graded order: every raise of σ is already present
        for sigma in kappa.sub_partitions().into_iter().rev() {
            if &sigma == kappa {
                table.insert(sigma, BigRational::one());
                continue;
            }
            let gap = int(k - sigma.weight() as i64);
            let mut acc = BigRational::zero();
            for i in sigma.raise_set(kappa) {
                let up = sigma.raise(i)?.expect("raise_set yields valid raises");
                acc += self.qbinom(kappa, &up)? * self.qbinom(&up, &sigma)? * &table[&up];
            }
            let shift = c + int(rho_k - sigma.rho()) / &gap;
            let den = gap * self.qbinom(kappa, &sigma)? * &shift;
            if den.is_zero() {
                return Err(Error::Pole(format!("[{c}] at ({kappa}, {sigma})")));
            }
            table.insert(sigma, acc / den);
        }
        Ok(table)
    }

    pub fn zonal(&self, mu: &Partition, n: usize) -> Result<Arc<ZonalPolynomial>> {
        let key = (mu.clone(), n);
        if let Some(z) = self.zonal.read().expect("cache poisoned").get(&key) {
            return Ok(z.clone());
        }
        let z = Arc::new(self.james_constantine(mu, n)?);
        self.zonal.write().expect("cache poisoned").entry(key).or_insert(z.clone());
        Ok(z)
    }

    fn james_constantine(&self, mu: &Partition, n: usize) -> Result<ZonalPolynomial> {
        let m = mu.m();
        check_ambient(m, n)?;
        let pairs = self.hyper_pair_table(&int(n as i64), mu)?;
        let mut raw = SchurExpansion::new(m);
        for (sigma, pair) in pairs {
            let mut coeff = self.qbinom(mu, &sigma)? * pair / hyper_coeff(&int(m as i64), &sigma);
            if sigma.weight() % 2 == 1 {
                coeff = -coeff;
            }
            raw.add_term(sigma, coeff)?;
        }
        let at_ones = raw.at_ones();
        if at_ones.is_zero() {
            return Err(Error::Pole(format!("unnormalizable kernel for {mu} at n = {n}")));
        }
        let expansion = raw.scaled(&(dim_h_rational(mu, n)? / at_ones));
        Ok(ZonalPolynomial { mu: mu.clone(), m, n, expansion })
    }
}

pub fn qbinom(kappa: &Partition, sigma: &Partition) -> Result<BigRational> {
    ZonalCache::global().qbinom(kappa, sigma)
}

/// `[c]_{(κ,σ)}`; zero when `σ ≰ κ`.
pub fn hyper_pair_coeff(c: &BigRational, kappa: &Partition, sigma: &Partition) -> Result<BigRational> {
    if kappa.m() != sigma.m() {
        return Err(Error::AmbientMismatch { expected: kappa.m(), found: sigma.m() });
    }
    if !sigma.is_contained_in(kappa) {
        return Ok(BigRational::zero());
    }
    let table = ZonalCache::global().hyper_pair_table(c, kappa)?;
    Ok(table[sigma].clone())
}

/// `Z_μ` from the general construction, normalized so `Z_μ(1,…,1) = dim H_μ`.
pub fn zonal_james_constantine(mu: &Partition, n: usize) -> Result<Arc<ZonalPolynomial>> {
    ZonalCache::global().zonal(mu, n)
}

fn assemble(mu: Partition, n: usize, terms: Vec<(Partition, BigRational)>) -> Result<ZonalPolynomial> {
    let m = mu.m();
    Ok(ZonalPolynomial { mu, m, n, expansion: SchurExpansion::from_terms(m, terms)? })
}

fn b(k: i64, r: i64) -> BigRational {
    binom0(k, r)
}

fn sign(e: i64) -> BigRational {
    if e.rem_euclid(2) == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// Closed form of `Z_{(1^i)}`.
pub fn zonal_closed_1i(i: usize, m: usize, n: usize) -> Result<ZonalPolynomial> {
    check_ambient(m, n)?;
    if i > m {
        return Err(Error::OutOfRange(format!("(1^{i}) needs i <= m = {m}")));
    }
    let (i, mm, nn) = (i as i64, m as i64, n as i64);
    let scale = int(nn - 2 * i + 1) * b(nn + 1, i).pow(2) / (int(nn + 1) * b(nn - mm, i));
    let terms = (0..=i)
        .map(|j| {
            let c = &scale * sign(i - j) * b(nn - i + 1, j) * b(mm - j, i - j);
            Ok((Partition::ones(j as usize, m)?, c))
        })
        .collect::<Result<Vec<_>>>()?;
    assemble(Partition::ones(i as usize, m)?, n, terms)
}

/// Closed form of `Z_{(i)}`.
pub fn zonal_closed_i(i: u32, m: usize, n: usize) -> Result<ZonalPolynomial> {
    check_ambient(m, n)?;
    let (ii, mm, nn) = (i as i64, m as i64, n as i64);
    let scale = int(nn + 2 * ii - 1) * b(nn + ii - 2, ii).pow(2) / (int(nn - 1) * b(nn - mm + ii - 1, ii));
    let terms = (0..=i)
        .map(|j| {
            let jj = j as i64;
            let c = &scale * sign(ii - jj) * b(nn + ii + jj - 2, jj) * b(mm + ii - 1, ii - jj);
            Ok((Partition::row(j, m)?, c))
        })
        .collect::<Result<Vec<_>>>()?;
    assemble(Partition::row(i, m)?, n, terms)
}

/// Closed form of `Z_{(2,1^{i−1})}`.
pub fn zonal_closed_21(i: usize, m: usize, n: usize) -> Result<ZonalPolynomial> {
    check_ambient(m, n)?;
    if i == 0 || i > m {
        return Err(Error::OutOfRange(format!("(2,1^(i-1)) needs 1 <= i <= m = {m}, got {i}")));
    }
    let (ii, mm, nn) = (i as i64, m as i64, n as i64);
    let common = int(ii * (ii + 1) * (nn + 3) * (nn - 2 * ii + 1)) * b(nn + 1, ii + 1).pow(2)
        / (int((nn - ii + 2) * (nn - mm + 1)) * b(nn - mm, ii));
    let f2 = &common * int(nn + 2);
    let f1 = &common * int(mm + 1);
    let f0 = sign(ii + 1)
        * int(ii * (mm + 1) * (nn + 3) * (nn - 2 * ii + 1))
        * int(ii)
        * b(nn + 1, ii + 1).pow(2)
        * b(mm, ii)
        / (int((nn - ii + 2).pow(2) * (nn - mm + 1)) * b(nn - mm, ii));
    let mut terms = Vec::new();
    for j in 1..=ii {
        let shared = b(mm - j, ii - j) * b(nn - ii, j - 1);
        terms.push((
            Partition::hook(j as usize, m)?,
            &f2 * sign(ii - j) * BigRational::new(1.into(), (j + 1).into()) * &shared,
        ));
        terms.push((
            Partition::ones(j as usize, m)?,
            &f1 * sign(ii - j + 1) * BigRational::new(1.into(), j.into()) * &shared,
        ));
    }
    terms.push((Partition::zero(m), f0));
    assemble(Partition::hook(i, m)?, n, terms)
}

/// `d^{(i)}_j` with `X*_{(1^i)} = Σ_j d^{(i)}_j Z_{(1^j)}`, keyed by `(1^j)`.
pub fn xstar_in_zonal_basis(i: usize, m: usize, n: usize) -> Result<BTreeMap<Partition, BigRational>> {
    check_ambient(m, n)?;
    if i > m {
        return Err(Error::OutOfRange(format!("(1^{i}) needs i <= m = {m}")));
    }
    let (ii, mm, nn) = (i as i64, m as i64, n as i64);
    (0..=ii)
        .map(|j| {
            let d = BigRational::new((nn + 1).into(), (nn - j + 1).into()) * b(mm - j, ii - j) * b(nn - mm, j)
                / (b(nn - j, ii) * b(nn + 1, j).pow(2));
            Ok((Partition::ones(j as usize, m)?, d))
        })
        .collect()
}

/// Coefficients of `Z_{(1)} Z_{(1^i)} = a Z_{(2,1^{i−1})} + b_up Z_{(1^{i+1})}
/// + b_same Z_{(1^i)} + b_down Z_{(1^{i−1})}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductCoefficients {
    pub i: usize,
    pub m: usize,
    pub n: usize,
    pub a: BigRational,
    pub b_up: BigRational,
    pub b_same: BigRational,
    pub b_down: BigRational,
}

impl ProductCoefficients {
    /// Nonzero terms keyed by the zonal index; `(1^{i+1})` is omitted when
    /// `i = m`.
    pub fn terms(&self) -> Result<BTreeMap<Partition, BigRational>> {
        let mut out = BTreeMap::new();
        let mut put = |p: Partition, c: &BigRational| {
            if !c.is_zero() {
                *out.entry(p).or_insert_with(BigRational::zero) += c;
            }
        };
        put(Partition::hook(self.i, self.m)?, &self.a);
        if self.i < self.m {
            put(Partition::ones(self.i + 1, self.m)?, &self.b_up);
        }
        put(Partition::ones(self.i, self.m)?, &self.b_same);
        put(Partition::ones(self.i - 1, self.m)?, &self.b_down);
        Ok(out)
    }
}

/// `num / den`, reading a vanishing numerator as 0 even when `den = 0`.
fn ratio(num: i128, den: i128) -> Result<BigRational> {
    if num == 0 {
        return Ok(BigRational::zero());
    }
    if den == 0 {
        return Err(Error::Pole(format!("{num}/0 in product coefficient")));
    }
    Ok(BigRational::new(num.into(), den.into()))
}

pub fn product_z1_z1i(i: usize, m: usize, n: usize) -> Result<ProductCoefficients> {
    check_ambient(m, n)?;
    if i == 0 || i > m {
        return Err(Error::OutOfRange(format!("product needs 1 <= i <= m = {m}, got {i}")));
    }
    let (i_, m_, n_) = (i as i128, m as i128, n as i128);
    let a = ratio(
        (i_ + 1) * (m_ + 1) * n_ * (n_ - 1) * (n_ - i_ + 2) * (n_ - m_ + 1),
        i_ * m_ * (n_ + 2) * (n_ + 3) * (n_ - i_ + 1) * (n_ - m_),
    )?;
    let b_up = ratio(
        (i_ + 1) * (m_ - i_) * n_ * (n_ - 1) * (n_ + 1) * (n_ - m_ - i_),
        m_ * (n_ - i_ + 1) * (n_ - 2 * i_) * (n_ - 2 * i_ - 1) * (n_ - m_),
    )?;
    let b_same = ratio(
        2 * i_ * (n_ - 1) * (n_ + 1) * (n_ - i_ + 1) * (n_ - 2 * m_).pow(2),
        m_ * (n_ + 2) * (n_ - 2 * i_) * (n_ - 2 * i_ + 2) * (n_ - m_),
    )?;
    let b_down = ratio(
        (m_ - i_ + 1) * n_ * (n_ + 1) * (n_ - 1) * (n_ - i_ + 2) * (n_ - m_ - i_ + 1),
        i_ * m_ * (n_ - 2 * i_ + 2) * (n_ - 2 * i_ + 3) * (n_ - m_),
    )?;
    Ok(ProductCoefficients { i, m, n, a, b_up, b_same, b_down })
}
