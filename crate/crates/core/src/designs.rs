//! Design tests through zonal kernels, and linear-programming bounds.
//!
//! `X` is a `T`-design iff `Σ_{a,b ∈ X} Z_μ(y(a,b)) = 0` for every
//! `μ ∈ T \ {(0)}`. Sums run over ordered pairs including `a = b`, so the
//! diagonal contributes `|X| · dim H_μ`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::grassmann::{principal_angles, Mode, PrincipalAngles, SubspaceConfiguration};
use crate::partitions::{binom, enumerate_t_t, Partition};
use crate::scalar::{format_rational, int, parse_rational, Scalar};
use crate::symfunc::SchurExpansion;
use crate::zonal::{
    dim_h, product_z1_z1i, xstar_in_zonal_basis, zonal_closed_21, zonal_james_constantine, ZonalPolynomial,
};

/// Default float tolerance, relative to `|X|² · dim H_μ`.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

/// `E = {(1^i) : 0 ≤ i ≤ m}`.
pub fn family_e(m: usize) -> Vec<Partition> {
    (0..=m).map(|i| Partition::ones(i, m).expect("i <= m")).collect()
}

/// `F = {(2,1^{i−1}) : 2 ≤ i ≤ m}`; `(2)` is not included.
pub fn family_f(m: usize) -> Vec<Partition> {
    (2..=m).map(|i| Partition::hook(i, m).expect("i <= m")).collect()
}

/// Parses `E`, `F`, `T<t>` and explicit partitions such as `(2,1)`, joined
/// by `+`. The result is sorted and deduplicated.
pub fn parse_design_set(text: &str, m: usize) -> Result<Vec<Partition>> {
    let mut out = Vec::new();
    for token in text.split('+').map(str::trim) {
        match token {
            "" => return Err(Error::Parse(format!("empty term in design set {text:?}"))),
            "E" => out.extend(family_e(m)),
            "F" => out.extend(family_f(m)),
            t if t.starts_with('T') => {
                let depth: u32 = t[1..].parse().map_err(|_| Error::Parse(format!("bad T_t term {t:?}")))?;
                out.extend(enumerate_t_t(m, depth));
            }
            t => {
                let mu = Partition::parse(t, m)?;
                if mu.length() > m || mu.m() != m {
                    return Err(Error::InvalidPartition {
                        parts: mu.parts().iter().map(|&p| p as i64).collect(),
                        reason: format!("needs at most {m} parts"),
                    });
                }
                out.push(mu);
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Pairwise principal angles of a configuration, with ordered-pair
/// multiplicities. The diagonal is kept separately as a count.
#[derive(Clone, Debug)]
pub struct AngleTable {
    pub size: usize,
    pub m: usize,
    pub n: usize,
    pub mode: Mode,
    /// Distinct off-diagonal angle vectors (exact mode) or every unordered
    /// pair in row-major order (float mode), each with its ordered weight.
    pub entries: Vec<(PrincipalAngles, u64)>,
}

/// Computes every unordered pair once; `threads > 1` fans out over a rayon
/// pool of that size.
pub fn angle_table(x: &SubspaceConfiguration, threads: usize) -> Result<AngleTable> {
    let pts = x.points();
    let pairs: Vec<(usize, usize)> = (0..pts.len()).flat_map(|i| (i + 1..pts.len()).map(move |j| (i, j))).collect();
    let compute = |&(i, j): &(usize, usize)| principal_angles(&pts[i], &pts[j]);
    let angles: Vec<PrincipalAngles> = if threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::OutOfRange(format!("thread pool: {e}")))?;
        pool.install(|| pairs.par_iter().map(compute).collect::<Result<Vec<_>>>())?
    } else {
        pairs.iter().map(compute).collect::<Result<Vec<_>>>()?
    };
    let entries = match x.mode() {
        Mode::Float => angles.into_iter().map(|a| (a, 2)).collect(),
        Mode::Exact => {
            let mut counts: HashMap<Vec<BigRational>, u64> = HashMap::new();
            for a in angles {
                if let PrincipalAngles::Exact(v) = a {
                    *counts.entry(v).or_default() += 2;
                }
            }
            let mut sorted: Vec<_> = counts.into_iter().collect();
            sorted.sort();
            sorted.into_iter().map(|(v, c)| (PrincipalAngles::Exact(v), c)).collect()
        }
    };
    Ok(AngleTable { size: pts.len(), m: x.m(), n: x.n(), mode: x.mode(), entries })
}

/// A defect value: exact rational, or float.
#[derive(Clone, Debug, PartialEq)]
pub enum Defect {
    Exact(BigRational),
    Float(f64),
}

impl Defect {
    pub fn to_f64(&self) -> f64 {
        match self {
            Defect::Exact(v) => f64::from_rational(v),
            Defect::Float(v) => *v,
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self, Defect::Exact(v) if v.is_zero())
    }
}

impl std::fmt::Display for Defect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Defect::Exact(v) => f.write_str(&format_rational(v)),
            Defect::Float(v) => write!(f, "{v:e}"),
        }
    }
}

impl Serialize for Defect {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Defect::Exact(v) => s.serialize_str(&format_rational(v)),
            Defect::Float(v) => s.serialize_f64(*v),
        }
    }
}

fn kernel(mu: &Partition, table: &AngleTable) -> Result<Arc<ZonalPolynomial>> {
    if mu.m() != table.m {
        return Err(Error::AmbientMismatch { expected: table.m, found: mu.m() });
    }
    zonal_james_constantine(mu, table.n)
}

/// `Σ_{a,b} Z_μ(y(a,b))` from a precomputed angle table.
pub fn defect_from_table(table: &AngleTable, mu: &Partition) -> Result<Defect> {
    let z = kernel(mu, table)?;
    let diagonal = int(table.size as i64) * z.at_ones();
    match table.mode {
        Mode::Exact => {
            let mut total = diagonal;
            for (angles, weight) in &table.entries {
                let PrincipalAngles::Exact(y) = angles else { unreachable!() };
                total += int(*weight as i64) * z.eval(y)?;
            }
            Ok(Defect::Exact(total))
        }
        Mode::Float => {
            let mut total = f64::from_rational(&diagonal);
            for (angles, weight) in &table.entries {
                total += *weight as f64 * z.eval(&angles.to_f64())?;
            }
            Ok(Defect::Float(total))
        }
    }
}

pub fn design_defect(x: &SubspaceConfiguration, mu: &Partition) -> Result<Defect> {
    defect_from_table(&angle_table(x, 1)?, mu)
}

#[derive(Clone, Debug, Serialize)]
pub struct DefectEntry {
    pub partition: Partition,
    pub defect: Defect,
    #[serde(serialize_with = "crate::zonal::bigint_string")]
    pub dim: BigInt,
    /// `defect / (|X|² dim H_μ)`, as a float.
    pub relative: f64,
    pub vanishes: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DesignReport {
    pub label: String,
    pub size: usize,
    pub m: usize,
    pub n: usize,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub tested: Vec<Partition>,
    pub entries: Vec<DefectEntry>,
    pub is_design: bool,
}

impl DesignReport {
    pub fn entry(&self, mu: &Partition) -> Option<&DefectEntry> {
        self.entries.iter().find(|e| &e.partition == mu)
    }

    /// Verdict restricted to a subset of the tested partitions.
    pub fn passes_for(&self, subset: &[Partition]) -> bool {
        subset.iter().all(|mu| self.entry(mu).is_some_and(|e| e.vanishes))
    }
}

pub fn report_from_table(label: &str, table: &AngleTable, t: &[Partition], tol: f64) -> Result<DesignReport> {
    let size = table.size;
    let mut entries = Vec::with_capacity(t.len());
    for mu in t {
        let defect = defect_from_table(table, mu)?;
        let dim = dim_h(mu, table.n)?.value;
        let scale = (size * size) as f64 * f64::from_rational(&BigRational::from_integer(dim.clone()));
        let relative = defect.to_f64() / scale;
        let vanishes = mu.is_zero()
            || match &defect {
                Defect::Exact(v) => v.is_zero(),
                Defect::Float(v) => v.abs() <= tol * scale,
            };
        entries.push(DefectEntry { partition: mu.clone(), defect, dim, relative, vanishes });
    }
    Ok(DesignReport {
        label: label.to_string(),
        size,
        m: table.m,
        n: table.n,
        mode: table.mode,
        tolerance: (table.mode == Mode::Float).then_some(tol),
        tested: t.to_vec(),
        is_design: entries.iter().all(|e| e.vanishes),
        entries,
    })
}

/// Tests every `μ ∈ T`; `(0)` always passes.
pub fn is_t_design(x: &SubspaceConfiguration, t: &[Partition], tol: f64) -> Result<DesignReport> {
    is_t_design_with(x, t, tol, 1)
}

pub fn is_t_design_with(x: &SubspaceConfiguration, t: &[Partition], tol: f64, threads: usize) -> Result<DesignReport> {
    let table = angle_table(x, threads)?;
    report_from_table(&x.label, &table, t, tol)
}

/// Finitely supported `μ ↦ c_μ`, read as `F = Σ c_μ Z_μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientFunction {
    pub m: usize,
    pub n: usize,
    support: BTreeMap<Partition, BigRational>,
}

impl CoefficientFunction {
    pub fn new<I>(m: usize, n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Partition, BigRational)>,
    {
        let mut support = BTreeMap::new();
        for (mu, c) in terms {
            if mu.m() != m {
                return Err(Error::AmbientMismatch { expected: m, found: mu.m() });
            }
            *support.entry(mu).or_insert_with(BigRational::zero) += c;
        }
        support.retain(|_, c: &mut BigRational| !c.is_zero());
        Ok(Self { m, n, support })
    }

    pub fn coeff(&self, mu: &Partition) -> BigRational {
        self.support.get(mu).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn support(&self) -> &BTreeMap<Partition, BigRational> {
        &self.support
    }

    /// `F` in the normalized Schur basis.
    pub fn expansion(&self) -> Result<SchurExpansion> {
        let mut out = SchurExpansion::new(self.m);
        for (mu, c) in &self.support {
            let z = zonal_james_constantine(mu, self.n)?;
            for (sigma, v) in z.expansion.coeffs() {
                out.add_term(sigma.clone(), c * v)?;
            }
        }
        Ok(out)
    }

    pub fn eval<S: Scalar>(&self, y: &[S]) -> Result<S> {
        self.expansion()?.eval(y)
    }
}

#[derive(Serialize, Deserialize)]
struct CoeffWire {
    partition: Partition,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct CoefficientFunctionWire {
    m: usize,
    n: usize,
    coefficients: Vec<CoeffWire>,
}

impl Serialize for CoefficientFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CoefficientFunctionWire {
            m: self.m,
            n: self.n,
            coefficients: self
                .support
                .iter()
                .map(|(p, c)| CoeffWire { partition: p.clone(), coeff: format_rational(c) })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoefficientFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = CoefficientFunctionWire::deserialize(d)?;
        let terms = wire
            .coefficients
            .into_iter()
            .map(|t| Ok((t.partition, parse_rational(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        CoefficientFunction::new(wire.m, wire.n, terms).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LpBound {
    #[serde(with = "crate::scalar::rational_string")]
    pub bound: BigRational,
    #[serde(with = "crate::scalar::rational_string")]
    pub f_at_ones: BigRational,
    #[serde(with = "crate::scalar::rational_string")]
    pub constant: BigRational,
    pub t_plus: Vec<Partition>,
    pub t_minus: Vec<Partition>,
}

/// `|X| ≥ F(1,…,1)/c_(0)` for any `T_c^+`-design `X`, given `F ≥ 0`.
pub fn lp_bound(c: &CoefficientFunction) -> Result<LpBound> {
    let constant = c.coeff(&Partition::zero(c.m));
    if !constant.is_positive() {
        return Err(Error::InvalidCertificate(format!(
            "constant coefficient must be positive, got {}",
            format_rational(&constant)
        )));
    }
    let mut f_at_ones = BigRational::zero();
    let (mut t_plus, mut t_minus) = (Vec::new(), Vec::new());
    for (mu, v) in &c.support {
        f_at_ones += v * BigRational::from_integer(dim_h(mu, c.n)?.value);
        if v.is_positive() {
            t_plus.push(mu.clone());
        } else {
            t_minus.push(mu.clone());
        }
    }
    Ok(LpBound { bound: &f_at_ones / &constant, f_at_ones, constant, t_plus, t_minus })
}

fn check_params(m: usize, n: usize) -> Result<()> {
    if m == 0 || n < 2 * m {
        return Err(Error::OutOfRange(format!("need 1 <= m and 2m <= n, got m = {m}, n = {n}")));
    }
    Ok(())
}

/// Certificate for `F = Π y_i = X*_(1^m)`.
pub fn certificate_e(m: usize, n: usize) -> Result<CoefficientFunction> {
    check_params(m, n)?;
    CoefficientFunction::new(m, n, xstar_in_zonal_basis(m, m, n)?)
}

/// Certificate for `F = (Σ y_i)/m = X*_(1)`.
pub fn certificate_one_design(m: usize, n: usize) -> Result<CoefficientFunction> {
    check_params(m, n)?;
    let (mm, nn) = (m as i64, n as i64);
    CoefficientFunction::new(
        m,
        n,
        [
            (Partition::zero(m), BigRational::new(mm.into(), nn.into())),
            (Partition::ones(1, m)?, BigRational::new((nn - mm).into(), (nn * (nn - 1) * (nn + 1)).into())),
        ],
    )
}

type ZonalCombination = BTreeMap<Partition, BigRational>;

fn add_scaled(acc: &mut ZonalCombination, terms: &ZonalCombination, factor: &BigRational) {
    for (mu, c) in terms {
        *acc.entry(mu.clone()).or_insert_with(BigRational::zero) += c * factor;
    }
}

/// `X*_(2)` through the closed form of `Z_(2)`, rewriting the lower terms
/// with the column coefficients.
fn xstar_row2_in_zonal_basis(m: usize, n: usize) -> Result<ZonalCombination> {
    let z2 = zonal_closed_21(1, m, n)?;
    let top = Partition::row(2, m)?;
    let lead = z2.expansion.coeff(&top);
    let mut out = ZonalCombination::new();
    out.insert(top.clone(), BigRational::one() / &lead);
    for (sigma, c) in z2.expansion.coeffs() {
        if sigma == &top {
            continue;
        }
        let column = xstar_in_zonal_basis(sigma.weight() as usize, m, n)?;
        add_scaled(&mut out, &column, &(-c / &lead));
    }
    Ok(out)
}

/// Certificate for `F = binom(n−2, m−1)(Π y_i)(Σ y_i) + Σ y_i(1 − y_i)`,
/// assembled from the change of basis, the closed form of `Z_(2)` and the
/// product rule for `Z_(1) Z_(1^j)`.
pub fn certificate_f(m: usize, n: usize) -> Result<CoefficientFunction> {
    check_params(m, n)?;
    if m < 2 {
        return Err(Error::OutOfRange(format!("certificate F needs m >= 2, got {m}")));
    }
    let (mm, nn) = (m as i64, n as i64);
    let weight = binom(nn - 2, mm - 1)?;
    let top = xstar_in_zonal_basis(m, m, n)?;
    let single = xstar_in_zonal_basis(1, m, n)?;
    let (d1_0, d1_1) = (single[&Partition::zero(m)].clone(), single[&Partition::ones(1, m)?].clone());
    let mut f = ZonalCombination::new();

    // binom(n−2, m−1) · X*_(1^m) · m X*_(1)
    let scale = &weight * int(mm);
    for (col, d) in &top {
        let j = col.weight() as usize;
        let mut product = ZonalCombination::new();
        product.insert(col.clone(), d1_0.clone());
        if j == 0 {
            product.insert(Partition::ones(1, m)?, d1_1.clone());
        } else {
            add_scaled(&mut product, &product_z1_z1i(j, m, n)?.terms()?, &d1_1);
        }
        add_scaled(&mut f, &product, &(&scale * d));
    }

    // Σ y_i = m X*_(1)
    add_scaled(&mut f, &single, &int(mm));

    // −Σ y_i² = −binom(m+1, 2) X*_(2) + binom(m, 2) X*_(1,1)
    add_scaled(&mut f, &xstar_row2_in_zonal_basis(m, n)?, &-binom(mm + 1, 2)?);
    add_scaled(&mut f, &xstar_in_zonal_basis(2, m, n)?, &binom(mm, 2)?);

    let cert = CoefficientFunction::new(m, n, f)?;
    let expected_constant = &weight * int(mm) / binom(nn, mm)?;
    if cert.coeff(&Partition::zero(m)) != expected_constant {
        return Err(Error::InvalidCertificate(format!(
            "constant term {} differs from {}",
            format_rational(&cert.coeff(&Partition::zero(m))),
            format_rational(&expected_constant)
        )));
    }
    if !cert.coeff(&Partition::row(2, m)?).is_zero() {
        return Err(Error::InvalidCertificate("coefficient of Z_(2) does not cancel".into()));
    }
    Ok(cert)
}

#[derive(Clone, Debug, Serialize)]
pub struct NonnegativityReport {
    pub points_checked: usize,
    #[serde(with = "crate::scalar::rational_string")]
    pub minimum: BigRational,
    pub argmin: Vec<String>,
    pub violations: usize,
    pub nonnegative: bool,
    /// Sampling evidence only; not a proof of nonnegativity.
    pub heuristic: bool,
}

fn descending_grid(m: usize, depth: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(m);
    fn rec(m: usize, bound: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if current.len() == m {
            out.push(current.clone());
            return;
        }
        for v in (0..=bound).rev() {
            current.push(v);
            rec(m, v, current, out);
            current.pop();
        }
    }
    rec(m, depth, &mut current, &mut out);
    out
}

/// Evaluates `F` exactly on the grid `{k/depth}` of descending points in
/// `[0,1]^m`, plus `samples` seeded random rational points.
pub fn check_nonnegativity(
    c: &CoefficientFunction,
    grid_depth: u32,
    samples: usize,
    seed: u64,
) -> Result<NonnegativityReport> {
    let f = c.expansion()?;
    let depth = grid_depth.max(1);
    let mut points: Vec<Vec<BigRational>> = descending_grid(c.m, depth)
        .into_iter()
        .map(|k| k.into_iter().map(|v| BigRational::new(v.into(), depth.into())).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let mut y: Vec<BigRational> =
            (0..c.m).map(|_| BigRational::new(rng.random_range(0i64..=1000).into(), 1000.into())).collect();
        y.sort_by(|a, b| b.cmp(a));
        points.push(y);
    }
    let mut minimum: Option<(BigRational, Vec<BigRational>)> = None;
    let mut violations = 0;
    for y in &points {
        let v = f.eval(y)?;
        if v.is_negative() {
            violations += 1;
        }
        if minimum.as_ref().is_none_or(|(best, _)| &v < best) {
            minimum = Some((v, y.clone()));
        }
    }
    let (minimum, at) = minimum.expect("grid is non-empty");
    Ok(NonnegativityReport {
        points_checked: points.len(),
        argmin: at.iter().map(format_rational).collect(),
        nonnegative: violations == 0,
        minimum,
        violations,
        heuristic: true,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TightnessVerdict {
    pub is_design: bool,
    pub angle_condition: bool,
    pub consistent: bool,
    pub report: DesignReport,
}

fn check_cardinality(x: &SubspaceConfiguration) -> Result<()> {
    let expected = binom(x.n() as i64, x.m() as i64)?;
    if BigRational::from_integer(x.len().into()) != expected {
        return Err(Error::WrongCardinality {
            found: x.len(),
            expected: format!("binom({}, {}) = {}", x.n(), x.m(), format_rational(&expected)),
        });
    }
    Ok(())
}

fn classify(
    x: &SubspaceConfiguration,
    t: Vec<Partition>,
    tol: f64,
    condition: impl Fn(&PrincipalAngles) -> bool,
) -> Result<TightnessVerdict> {
    check_cardinality(x)?;
    let table = angle_table(x, 1)?;
    let angle_condition = table.entries.iter().all(|(a, _)| condition(a));
    let report = report_from_table(&x.label, &table, &t, tol)?;
    Ok(TightnessVerdict {
        is_design: report.is_design,
        angle_condition,
        consistent: report.is_design == angle_condition,
        report,
    })
}

/// For `|X| = binom(n,m)`: `E`-design versus `y_m(a,b) = 0` on distinct
/// pairs.
pub fn classify_tight_e(x: &SubspaceConfiguration, tol: f64) -> Result<TightnessVerdict> {
    classify(x, family_e(x.m()), tol, |a| a.last_vanishes(tol))
}

/// For `|X| = binom(n,m)`: `E ∪ F`-design versus all angles in `{0, 1}`.
pub fn classify_tight_ef(x: &SubspaceConfiguration, tol: f64) -> Result<TightnessVerdict> {
    let mut t = family_e(x.m());
    t.extend(family_f(x.m()));
    classify(x, t, tol, |a| a.is_binary(tol))
}

/// The three conditions of the LP equality case for a certificate `c` and an
/// exact configuration.
#[derive(Clone, Debug, Serialize)]
pub struct LpConditions {
    pub plus_design: bool,
    pub minus_design_and_vanishing: bool,
    pub meets_bound: bool,
}

pub fn lp_conditions(x: &SubspaceConfiguration, c: &CoefficientFunction) -> Result<LpConditions> {
    let bound = lp_bound(c)?;
    let table = angle_table(x, 1)?;
    let plus = report_from_table(&x.label, &table, &bound.t_plus, 0.0)?;
    let minus = report_from_table(&x.label, &table, &bound.t_minus, 0.0)?;
    let f = c.expansion()?;
    let mut vanishing = true;
    for (angles, _) in &table.entries {
        vanishing &= match angles {
            PrincipalAngles::Exact(y) => f.eval(y)?.is_zero(),
            PrincipalAngles::Float(y) => f.eval(y)?.abs() <= DEFAULT_TOLERANCE,
        };
    }
    Ok(LpConditions {
        plus_design: plus.is_design,
        minus_design_and_vanishing: minus.is_design && vanishing,
        meets_bound: BigRational::from_integer(x.len().into()) == bound.bound,
    })
}
