//! Points of the complex Grassmannian `G(m, C^n)` and their principal angles.
//!
//! A point is stored as an `m × n` basis whose rows span the subspace. Exact
//! points keep arbitrary Gaussian-rational bases and use the Gram-corrected
//! projector `P_a = A^H (A A^H)^{-1} A`; float points are orthonormalized on
//! demand. Vectors are rows, and `⟨u, v⟩ = Σ u_k conj(v_k)`.

use std::fmt;

use nalgebra::DMatrix;
use num::rational::BigRational;
use num::traits::{One, Zero};
use num::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{char_poly, conj_transpose, format_poly, inverse, mat_mul, rank, rational_roots, Matrix};
use crate::partitions::binom;
use crate::scalar::{complex_to_f64, format_complex, format_rational, parse_complex, parse_complex_f64, ExactComplex};

pub type FloatComplex = Complex<f64>;

/// Relative singular-value cutoff for float rank decisions.
pub const RANK_THRESHOLD: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Basis {
    Exact(Matrix<ExactComplex>),
    Float(Matrix<FloatComplex>),
}

/// An `m`-dimensional subspace of `C^n`, given by a full-rank basis.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspacePoint {
    basis: Basis,
    m: usize,
    n: usize,
}

fn shape<T>(rows: &[Vec<T>]) -> Result<(usize, usize)> {
    let m = rows.len();
    if m == 0 {
        return Err(Error::Parse("basis has no rows".into()));
    }
    let n = rows[0].len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse("basis rows must be non-empty and of equal length".into()));
    }
    if m > n {
        return Err(Error::RankDeficient { rank: n, m });
    }
    Ok((m, n))
}

fn to_dmatrix(rows: &Matrix<FloatComplex>) -> DMatrix<FloatComplex> {
    DMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j])
}

/// Orthonormal rows spanning the same space, via SVD.
fn orthonormal_rows(rows: &Matrix<FloatComplex>) -> Result<DMatrix<FloatComplex>> {
    let m = rows.len();
    let svd = to_dmatrix(rows).svd(false, true);
    let top = svd.singular_values.max();
    let kept = svd.singular_values.iter().filter(|&&s| top > 0.0 && s > RANK_THRESHOLD * top).count();
    if kept < m {
        return Err(Error::RankDeficient { rank: kept, m });
    }
    Ok(svd.v_t.expect("requested v_t"))
}

impl SubspacePoint {
    pub fn exact(rows: Matrix<ExactComplex>) -> Result<Self> {
        let (m, n) = shape(&rows)?;
        let r = rank(&rows);
        if r < m {
            return Err(Error::RankDeficient { rank: r, m });
        }
        Ok(Self { basis: Basis::Exact(rows), m, n })
    }

    pub fn float(rows: Matrix<FloatComplex>) -> Result<Self> {
        let (m, n) = shape(&rows)?;
        if rows.iter().flatten().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Parse("non-finite basis entry".into()));
        }
        orthonormal_rows(&rows)?;
        Ok(Self { basis: Basis::Float(rows), m, n })
    }

    /// Exact point from integer rows.
    pub fn from_integer_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::exact(
            rows.iter()
                .map(|r| {
                    r.iter().map(|&v| Complex::new(BigRational::from_integer(v.into()), BigRational::zero())).collect()
                })
                .collect(),
        )
    }

    /// `span(e_i : i ∈ indices)` with 0-based indices.
    pub fn coordinate(indices: &[usize], n: usize) -> Result<Self> {
        let rows = indices
            .iter()
            .map(|&i| {
                if i >= n {
                    return Err(Error::OutOfRange(format!("coordinate {i} outside 0..{n}")));
                }
                let mut row = vec![ExactComplex::zero(); n];
                row[i] = ExactComplex::one();
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::exact(rows)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn mode(&self) -> Mode {
        match self.basis {
            Basis::Exact(_) => Mode::Exact,
            Basis::Float(_) => Mode::Float,
        }
    }

    pub fn to_float(&self) -> Self {
        match &self.basis {
            Basis::Float(_) => self.clone(),
            Basis::Exact(rows) => Self {
                basis: Basis::Float(rows.iter().map(|r| r.iter().map(complex_to_f64).collect()).collect()),
                m: self.m,
                n: self.n,
            },
        }
    }

    fn float_rows(&self) -> Matrix<FloatComplex> {
        match &self.to_float().basis {
            Basis::Float(rows) => rows.clone(),
            Basis::Exact(_) => unreachable!(),
        }
    }

    /// True when both bases span the same subspace (exact: rank test; float:
    /// all principal angles within `tol` of 1).
    pub fn same_span(&self, other: &Self, tol: f64) -> Result<bool> {
        check_pair(self, other)?;
        match (&self.basis, &other.basis) {
            (Basis::Exact(a), Basis::Exact(b)) => {
                let stacked: Matrix<ExactComplex> = a.iter().chain(b.iter()).cloned().collect();
                Ok(rank(&stacked) == self.m)
            }
            _ => Ok(principal_angles(self, other)?.to_f64().iter().all(|y| (1.0 - y).abs() <= tol)),
        }
    }

    /// Basis of the orthogonal complement `a^⊥` (an `(n − m)`-dimensional
    /// point).
    pub fn orthogonal_complement(&self) -> Result<Self> {
        match &self.basis {
            Basis::Exact(rows) => {
                // w ⊥ every row  <=>  conj(w) lies in the null space of A
                let null = null_space(rows);
                Self::exact(null.into_iter().map(|v| v.into_iter().map(|z| z.conj()).collect()).collect())
            }
            Basis::Float(_) => {
                let q = orthonormal_rows(&self.float_rows())?;
                let mut found: Vec<Vec<FloatComplex>> =
                    (0..self.m).map(|i| q.row(i).iter().copied().collect()).collect();
                for k in 0..self.n {
                    let mut v = vec![FloatComplex::zero(); self.n];
                    v[k] = FloatComplex::one();
                    for _ in 0..2 {
                        for u in &found {
                            let dot: FloatComplex = v.iter().zip(u).map(|(a, b)| a * b.conj()).sum();
                            for (vi, ui) in v.iter_mut().zip(u) {
                                *vi -= dot * ui;
                            }
                        }
                    }
                    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                    if norm > 1e-8 {
                        found.push(v.into_iter().map(|z| z / norm).collect());
                    }
                }
                Self::float(found.split_off(self.m))
            }
        }
    }
}

#[allow(clippy::needless_range_loop)]
fn null_space(a: &Matrix<ExactComplex>) -> Matrix<ExactComplex> {
    let rows = a.len();
    let cols = a[0].len();
    let mut r = a.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&i| !r[i][col].is_zero()) else {
            continue;
        };
        r.swap(p, row);
        let inv = ExactComplex::one() / r[row][col].clone();
        for c in 0..cols {
            r[row][c] = r[row][c].clone() * inv.clone();
        }
        for i in 0..rows {
            if i != row && !r[i][col].is_zero() {
                let f = r[i][col].clone();
                for c in 0..cols {
                    let v = r[row][c].clone();
                    r[i][c] = r[i][c].clone() - f.clone() * v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![ExactComplex::zero(); cols];
            v[free] = ExactComplex::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[i][free].clone();
            }
            v
        })
        .collect()
}

fn check_pair(a: &SubspacePoint, b: &SubspacePoint) -> Result<()> {
    if a.mode() != b.mode() {
        return Err(Error::ModeMismatch(format!("{} point paired with {} point", a.mode(), b.mode())));
    }
    if (a.m, a.n) != (b.m, b.n) {
        let (expected, found) = if a.m != b.m { (a.m, b.m) } else { (a.n, b.n) };
        return Err(Error::AmbientMismatch { expected, found });
    }
    Ok(())
}

/// Descending principal angles `y_1 ≥ … ≥ y_m` (squared cosines).
#[derive(Clone, Debug, PartialEq)]
pub enum PrincipalAngles {
    Exact(Vec<BigRational>),
    Float(Vec<f64>),
}

impl PrincipalAngles {
    pub fn mode(&self) -> Mode {
        match self {
            PrincipalAngles::Exact(_) => Mode::Exact,
            PrincipalAngles::Float(_) => Mode::Float,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            PrincipalAngles::Exact(v) => v.len(),
            PrincipalAngles::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            PrincipalAngles::Exact(v) => v.iter().map(crate::scalar::Scalar::from_rational).collect(),
            PrincipalAngles::Float(v) => v.clone(),
        }
    }

    /// Every angle in `{0, 1}` (exactly, or within `tol` in float mode).
    pub fn is_binary(&self, tol: f64) -> bool {
        match self {
            PrincipalAngles::Exact(v) => v.iter().all(|y| y.is_zero() || y.is_one()),
            PrincipalAngles::Float(v) => v.iter().all(|y| y.abs() <= tol || (1.0 - y).abs() <= tol),
        }
    }

    /// `y_m = 0` (exactly, or within `tol`).
    pub fn last_vanishes(&self, tol: f64) -> bool {
        match self {
            PrincipalAngles::Exact(v) => v.last().is_some_and(Zero::is_zero),
            PrincipalAngles::Float(v) => v.last().is_some_and(|y| y.abs() <= tol),
        }
    }
}

impl fmt::Display for PrincipalAngles {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = match self {
            PrincipalAngles::Exact(v) => v.iter().map(format_rational).collect(),
            PrincipalAngles::Float(v) => v.iter().map(|y| y.to_string()).collect(),
        };
        write!(f, "({})", body.join(","))
    }
}

impl Serialize for PrincipalAngles {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PrincipalAngles::Exact(v) => v.iter().map(format_rational).collect::<Vec<_>>().serialize(s),
            PrincipalAngles::Float(v) => v.serialize(s),
        }
    }
}

fn gram_inverse(a: &Matrix<ExactComplex>) -> Result<Matrix<ExactComplex>> {
    inverse(&mat_mul(a, &conj_transpose(a))).ok_or(Error::RankDeficient { rank: rank(a), m: a.len() })
}

/// Principal angles between `a` and `b`: the `m` largest eigenvalues of
/// `P_a P_b`, descending.
pub fn principal_angles(a: &SubspacePoint, b: &SubspacePoint) -> Result<PrincipalAngles> {
    check_pair(a, b)?;
    match (&a.basis, &b.basis) {
        (Basis::Exact(ra), Basis::Exact(rb)) => exact_angles(ra, rb),
        _ => float_angles(&a.float_rows(), &b.float_rows()),
    }
}

fn exact_angles(a: &Matrix<ExactComplex>, b: &Matrix<ExactComplex>) -> Result<PrincipalAngles> {
    let ab = mat_mul(a, &conj_transpose(b));
    let ba = mat_mul(b, &conj_transpose(a));
    let reduced = mat_mul(&mat_mul(&gram_inverse(a)?, &ab), &mat_mul(&gram_inverse(b)?, &ba));
    let poly = char_poly(&reduced);
    if poly.iter().any(|c| !c.im.is_zero()) {
        let text: Vec<String> = poly.iter().map(format_complex).collect();
        return Err(Error::IrrationalAngles { poly: format!("non-real coefficients [{}]", text.join(", ")) });
    }
    let real: Vec<BigRational> = poly.into_iter().map(|c| c.re).collect();
    let (mut roots, rest) = rational_roots(&real, true);
    if rest.len() > 1 {
        return Err(Error::IrrationalAngles { poly: format_poly(&real) });
    }
    roots.sort_by(|x, y| y.cmp(x));
    Ok(PrincipalAngles::Exact(roots))
}

fn float_angles(a: &Matrix<FloatComplex>, b: &Matrix<FloatComplex>) -> Result<PrincipalAngles> {
    let qa = orthonormal_rows(a)?;
    let qb = orthonormal_rows(b)?;
    let cross = &qa * qb.adjoint();
    let mut y: Vec<f64> = cross.singular_values().iter().map(|s| (s * s).clamp(0.0, 1.0)).collect();
    y.sort_by(|x, z| z.total_cmp(x));
    Ok(PrincipalAngles::Float(y))
}

/// The image `s_a(b)`: each basis row `v` of `b` goes to `2 v P_a − v`.
pub fn symmetry_image(a: &SubspacePoint, b: &SubspacePoint) -> Result<SubspacePoint> {
    check_pair(a, b)?;
    match (&a.basis, &b.basis) {
        (Basis::Exact(ra), Basis::Exact(rb)) => {
            let two = ExactComplex::new(BigRational::from_integer(2.into()), BigRational::zero());
            let coeffs = mat_mul(&mat_mul(rb, &conj_transpose(ra)), &gram_inverse(ra)?);
            let projected = mat_mul(&coeffs, ra);
            let rows = projected
                .into_iter()
                .zip(rb)
                .map(|(p, v)| p.into_iter().zip(v).map(|(pk, vk)| two.clone() * pk - vk.clone()).collect())
                .collect();
            SubspacePoint::exact(rows)
        }
        _ => {
            let qa = orthonormal_rows(&a.float_rows())?;
            let vb = to_dmatrix(&b.float_rows());
            let image = (&vb * qa.adjoint() * &qa) * FloatComplex::new(2.0, 0.0) - &vb;
            SubspacePoint::float(image.row_iter().map(|r| r.iter().copied().collect()).collect())
        }
    }
}

/// Every principal angle lies in `{0, 1}`; `tol` is ignored for exact points.
pub fn is_antipodal_pair(a: &SubspacePoint, b: &SubspacePoint, tol: f64) -> Result<bool> {
    Ok(principal_angles(a, b)?.is_binary(tol))
}

/// A finite ordered set of points sharing `(m, n)` and mode.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceConfiguration {
    pub label: String,
    m: usize,
    n: usize,
    mode: Mode,
    points: Vec<SubspacePoint>,
}

impl SubspaceConfiguration {
    pub fn new(label: impl Into<String>, points: Vec<SubspacePoint>) -> Result<Self> {
        let first = points.first().ok_or_else(|| Error::Parse("configuration has no points".into()))?;
        let (m, n, mode) = (first.m, first.n, first.mode());
        if n < 2 * m {
            return Err(Error::OutOfRange(format!("need n >= 2m, got m = {m}, n = {n}")));
        }
        for p in &points {
            if (p.m, p.n) != (m, n) {
                return Err(Error::Parse(format!("point in G({}, {}) inside a G({m}, {n}) configuration", p.m, p.n)));
            }
            if p.mode() != mode {
                return Err(Error::ModeMismatch("configuration mixes exact and float points".into()));
            }
        }
        Ok(Self { label: label.into(), m, n, mode, points })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn points(&self) -> &[SubspacePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn to_float(&self) -> Self {
        Self {
            label: self.label.clone(),
            m: self.m,
            n: self.n,
            mode: Mode::Float,
            points: self.points.iter().map(SubspacePoint::to_float).collect(),
        }
    }

    /// Sub-configuration by 0-based indices.
    pub fn select(&self, indices: &[usize], label: impl Into<String>) -> Result<Self> {
        let points = indices
            .iter()
            .map(|&i| {
                self.points
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::OutOfRange(format!("point index {i} outside 0..{}", self.len())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(label, points)
    }

    /// Full pairwise matrix of principal angles.
    pub fn angle_matrix(&self) -> Result<Vec<Vec<PrincipalAngles>>> {
        self.points.iter().map(|a| self.points.iter().map(|b| principal_angles(a, b)).collect()).collect()
    }

    /// Every pair of distinct points is antipodal.
    pub fn is_antipodal_set(&self, tol: f64) -> Result<bool> {
        for (i, a) in self.points.iter().enumerate() {
            for b in &self.points[i + 1..] {
                if !is_antipodal_pair(a, b, tol)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: ConfigWire = serde_json::from_str(text)?;
        let points = wire
            .points
            .into_iter()
            .map(|p| match wire.mode {
                Mode::Exact => SubspacePoint::exact(
                    p.rows
                        .iter()
                        .map(|r| r.iter().map(|e| parse_complex(&e.text())).collect::<Result<Vec<_>>>())
                        .collect::<Result<Vec<_>>>()?,
                ),
                Mode::Float => SubspacePoint::float(
                    p.rows
                        .iter()
                        .map(|r| r.iter().map(|e| parse_complex_f64(&e.text())).collect::<Result<Vec<_>>>())
                        .collect::<Result<Vec<_>>>()?,
                ),
            })
            .collect::<Result<Vec<_>>>()?;
        let config = Self::new(wire.label.unwrap_or_default(), points)?;
        if (config.m, config.n) != (wire.m, wire.n) {
            return Err(Error::Parse(format!(
                "header says G({}, {}) but points live in G({}, {})",
                wire.m, wire.n, config.m, config.n
            )));
        }
        Ok(config)
    }

    pub fn to_json(&self) -> Result<String> {
        let points = self
            .points
            .iter()
            .map(|p| PointWire {
                rows: match &p.basis {
                    Basis::Exact(rows) => {
                        rows.iter().map(|r| r.iter().map(|z| Entry::Text(format_complex(z))).collect()).collect()
                    }
                    Basis::Float(rows) => {
                        rows.iter().map(|r| r.iter().map(|z| Entry::Text(format_float_complex(z))).collect()).collect()
                    }
                },
            })
            .collect();
        let wire = ConfigWire {
            m: self.m,
            n: self.n,
            mode: self.mode,
            label: Some(self.label.clone()).filter(|l| !l.is_empty()),
            points,
        };
        Ok(serde_json::to_string_pretty(&wire)?)
    }
}

fn format_float_complex(z: &FloatComplex) -> String {
    if z.im == 0.0 {
        format!("{:?}", z.re)
    } else if z.im < 0.0 {
        format!("{:?}-{:?}*i", z.re, -z.im)
    } else {
        format!("{:?}+{:?}*i", z.re, z.im)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Entry {
    Text(String),
    Number(f64),
}

impl Entry {
    fn text(&self) -> String {
        match self {
            Entry::Text(s) => s.clone(),
            Entry::Number(v) => format!("{v:?}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PointWire {
    rows: Vec<Vec<Entry>>,
}

#[derive(Serialize, Deserialize)]
struct ConfigWire {
    m: usize,
    n: usize,
    mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    points: Vec<PointWire>,
}

fn subsets(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(m);
    fn rec(start: usize, n: usize, m: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == m {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, m, current, out);
            current.pop();
        }
    }
    rec(0, n, m, &mut current, &mut out);
    out
}

/// The `binom(n, m)` coordinate subspaces, in lexicographic subset order.
pub fn great_antipodal(m: usize, n: usize) -> Result<SubspaceConfiguration> {
    if m == 0 || n < 2 * m {
        return Err(Error::OutOfRange(format!("need 1 <= m and 2m <= n, got m = {m}, n = {n}")));
    }
    let points = subsets(n, m).iter().map(|idx| SubspacePoint::coordinate(idx, n)).collect::<Result<Vec<_>>>()?;
    debug_assert_eq!(binom(n as i64, m as i64)?, BigRational::from_integer(points.len().into()));
    SubspaceConfiguration::new(format!("great antipodal set in G({m},{n})"), points)
}

/// Six exact points of `G(2, C^4)`: four coordinate planes and two planes
/// through `e_1 ± i e_2`.
pub fn appendix_b_config() -> SubspaceConfiguration {
    let one = || ExactComplex::one();
    let zero = || ExactComplex::zero();
    let i = |s: i64| ExactComplex::new(BigRational::zero(), BigRational::from_integer(s.into()));
    let e3 = vec![zero(), zero(), one(), zero()];
    let mut points: Vec<SubspacePoint> = [[0, 1], [2, 3], [0, 3], [1, 3]]
        .iter()
        .map(|idx| SubspacePoint::coordinate(idx, 4).expect("coordinate plane"))
        .collect();
    for s in [1, -1] {
        let tilted = vec![one(), i(s), zero(), zero()];
        points.push(SubspacePoint::exact(vec![tilted, e3.clone()]).expect("full rank"));
    }
    SubspaceConfiguration::new("six planes in C^4", points).expect("consistent configuration")
}

/// `n / m` mutually orthogonal coordinate blocks of size `m`.
pub fn orthogonal_split_config(m: usize, n: usize) -> Result<SubspaceConfiguration> {
    if m == 0 || !n.is_multiple_of(m) {
        return Err(Error::OutOfRange(format!("m = {m} must divide n = {n}")));
    }
    let points = (0..n / m)
        .map(|k| SubspacePoint::coordinate(&(k * m..(k + 1) * m).collect::<Vec<_>>(), n))
        .collect::<Result<Vec<_>>>()?;
    SubspaceConfiguration::new(format!("orthogonal split of C^{n} into {m}-planes"), points)
}

fn gaussian_point(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Result<SubspacePoint> {
    let raw: Matrix<FloatComplex> = (0..m)
        .map(|_| (0..n).map(|_| FloatComplex::new(StandardNormal.sample(rng), StandardNormal.sample(rng))).collect())
        .collect();
    let q = orthonormal_rows(&raw)?;
    SubspacePoint::float(q.row_iter().map(|r| r.iter().copied().collect()).collect())
}

/// Haar-random float point: orthonormalized complex Gaussian rows.
pub fn random_subspace(m: usize, n: usize, seed: u64) -> Result<SubspacePoint> {
    if m == 0 || n < 2 * m {
        return Err(Error::OutOfRange(format!("need 1 <= m and 2m <= n, got m = {m}, n = {n}")));
    }
    gaussian_point(&mut ChaCha8Rng::seed_from_u64(seed), m, n)
}

/// `count` independent Haar-random points from one seeded stream.
pub fn random_configuration(m: usize, n: usize, count: usize, seed: u64) -> Result<SubspaceConfiguration> {
    if m == 0 || n < 2 * m {
        return Err(Error::OutOfRange(format!("need 1 <= m and 2m <= n, got m = {m}, n = {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (0..count).map(|_| gaussian_point(&mut rng, m, n)).collect::<Result<Vec<_>>>()?;
    SubspaceConfiguration::new(format!("{count} random points in G({m},{n}), seed {seed}"), points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn exact(v: &[(i64, i64)]) -> Vec<BigRational> {
        v.iter().map(|&(p, q)| rat(p, q)).collect()
    }

    #[test]
    fn identical_and_orthogonal() {
        let a = SubspacePoint::coordinate(&[0, 1], 4).unwrap();
        let b = SubspacePoint::coordinate(&[2, 3], 4).unwrap();
        assert_eq!(principal_angles(&a, &a).unwrap(), PrincipalAngles::Exact(vec![int(1), int(1)]));
        assert_eq!(principal_angles(&a, &b).unwrap(), PrincipalAngles::Exact(vec![int(0), int(0)]));
    }

    #[test]
    fn tilted_plane_angle() {
        let x = appendix_b_config();
        let y = principal_angles(&x.points()[2], &x.points()[4]).unwrap();
        assert_eq!(y, PrincipalAngles::Exact(exact(&[(1, 2), (0, 1)])));
        assert!(!is_antipodal_pair(&x.points()[2], &x.points()[4], 0.0).unwrap());
    }

    #[test]
    fn irrational_angles_are_reported() {
        // angles (5 ± √5)/10
        let a = SubspacePoint::coordinate(&[0, 1], 4).unwrap();
        let b = SubspacePoint::from_integer_rows(&[&[1, 0, 1, 0], &[1, 1, 0, 1]]).unwrap();
        let err = principal_angles(&a, &b).unwrap_err();
        assert!(matches!(err, Error::IrrationalAngles { .. }), "{err}");
        let float = principal_angles(&a.to_float(), &b.to_float()).unwrap().to_f64();
        let root5 = 5f64.sqrt();
        assert!((float[0] - (5.0 + root5) / 10.0).abs() < 1e-12);
        assert!((float[1] - (5.0 - root5) / 10.0).abs() < 1e-12);
    }

    #[test]
    fn reflection_fixes_coordinate_subspaces() {
        let s = great_antipodal(2, 4).unwrap();
        for a in s.points() {
            for b in s.points() {
                let image = symmetry_image(a, b).unwrap();
                assert!(image.same_span(b, 0.0).unwrap());
            }
            assert!(symmetry_image(a, a).unwrap().same_span(a, 0.0).unwrap());
        }
    }

    #[test]
    fn great_antipodal_shape() {
        assert_eq!(great_antipodal(2, 4).unwrap().len(), 6);
        let line = great_antipodal(1, 2).unwrap();
        assert_eq!(line.len(), 2);
        assert_eq!(
            principal_angles(&line.points()[0], &line.points()[1]).unwrap(),
            PrincipalAngles::Exact(vec![int(0)])
        );
        assert!(great_antipodal(3, 5).is_err());
    }

    #[test]
    fn orthogonal_split_shape() {
        let x = orthogonal_split_config(2, 4).unwrap();
        assert_eq!(x.len(), 2);
        assert_eq!(x.points()[1], SubspacePoint::coordinate(&[2, 3], 4).unwrap());
        assert!(orthogonal_split_config(2, 5).is_err());
    }

    #[test]
    fn complement_is_orthogonal() {
        let x = appendix_b_config();
        for p in x.points() {
            let c = p.orthogonal_complement().unwrap();
            assert_eq!((c.m(), c.n()), (2, 4));
            assert_eq!(principal_angles(p, &c).unwrap(), PrincipalAngles::Exact(vec![int(0), int(0)]));
            let cf = p.to_float().orthogonal_complement().unwrap();
            assert!(principal_angles(&p.to_float(), &cf).unwrap().to_f64().iter().all(|y| y.abs() < 1e-12));
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            SubspacePoint::from_integer_rows(&[&[1, 0, 0], &[2, 0, 0]]),
            Err(Error::RankDeficient { rank: 1, m: 2 })
        ));
        let exact = SubspacePoint::coordinate(&[0], 2).unwrap();
        assert!(matches!(principal_angles(&exact, &exact.to_float()), Err(Error::ModeMismatch(_))));
        assert!(SubspaceConfiguration::new("x", vec![SubspacePoint::coordinate(&[0, 1], 3).unwrap()]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let x = appendix_b_config();
        let text = x.to_json().unwrap();
        assert!(text.contains("\"1+1*i\"") || text.contains("\"0+1*i\""));
        assert_eq!(SubspaceConfiguration::from_json(&text).unwrap(), x);
        let f = random_configuration(2, 4, 3, 5).unwrap();
        let back = SubspaceConfiguration::from_json(&f.to_json().unwrap()).unwrap();
        assert_eq!(back, f);
        let minimal = r#"{"m":1,"n":2,"mode":"exact","points":[{"rows":[["1","0"]]},{"rows":[["0","1"]]}]}"#;
        assert_eq!(SubspaceConfiguration::from_json(minimal).unwrap().len(), 2);
    }

    #[test]
    fn random_points_are_deterministic() {
        let a = random_subspace(2, 6, 11).unwrap();
        assert_eq!(a, random_subspace(2, 6, 11).unwrap());
        let y = principal_angles(&a, &a).unwrap().to_f64();
        assert!(y.iter().all(|v| (v - 1.0).abs() < 1e-12));
    }
}
