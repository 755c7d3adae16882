//! Small dense linear algebra over exact fields.
//!
//! Matrices here are at most a few dozen rows, so everything is plain
//! `Vec<Vec<T>>` with cubic elimination.

#![allow(clippy::needless_range_loop)]

use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::integer::Integer;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use num::Complex;

use crate::scalar::format_rational;

pub type Matrix<T> = Vec<Vec<T>>;

/// A field we can run Gaussian elimination over.
pub trait Field:
    Clone
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Pivot preference: exact fields return 1 for any nonzero entry,
    /// floating fields the magnitude.
    fn pivot_weight(&self) -> f64;
}

impl Field for BigRational {
    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

impl Field for f64 {
    fn pivot_weight(&self) -> f64 {
        self.abs()
    }
}

impl Field for Complex<BigRational> {
    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

fn pick_pivot<T: Field>(a: &Matrix<T>, col: usize, from: usize) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (r, row) in a.iter().enumerate().skip(from) {
        let w = row[col].pivot_weight();
        if w > 0.0 && best.is_none_or(|(_, bw)| w > bw) {
            best = Some((r, w));
        }
    }
    best.map(|(r, _)| r)
}

pub fn identity<T: Field>(n: usize) -> Matrix<T> {
    (0..n).map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect()
}

pub fn mat_mul<T: Field>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols).map(|j| (0..inner).fold(T::zero(), |acc, k| acc + row[k].clone() * b[k][j].clone())).collect()
        })
        .collect()
}

pub fn conj_transpose(a: &Matrix<Complex<BigRational>>) -> Matrix<Complex<BigRational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| (0..rows).map(|i| a[i][j].conj()).collect()).collect()
}

pub fn determinant<T: Field>(a: &Matrix<T>) -> T {
    let n = a.len();
    let mut a = a.clone();
    let mut det = T::one();
    for col in 0..n {
        let Some(p) = pick_pivot(&a, col, col) else {
            return T::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det = det * pivot.clone();
        for r in col + 1..n {
            if a[r][col].pivot_weight() == 0.0 {
                continue;
            }
            let f = a[r][col].clone() / pivot.clone();
            for c in col..n {
                let v = a[col][c].clone();
                a[r][c] = a[r][c].clone() - f.clone() * v;
            }
        }
    }
    det
}

/// Rank by row reduction. Only meaningful for exact fields.
pub fn rank<T: Field>(a: &Matrix<T>) -> usize {
    let mut a = a.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = pick_pivot(&a, col, r) else {
            continue;
        };
        a.swap(p, r);
        let pivot = a[r][col].clone();
        for rr in r + 1..rows {
            if a[rr][col].pivot_weight() == 0.0 {
                continue;
            }
            let f = a[rr][col].clone() / pivot.clone();
            for c in col..cols {
                let v = a[r][c].clone();
                a[rr][c] = a[rr][c].clone() - f.clone() * v;
            }
        }
        r += 1;
    }
    r
}

/// Solves `a X = b` for square nonsingular `a`; `None` when singular.
pub fn solve<T: Field>(a: &Matrix<T>, b: &Matrix<T>) -> Option<Matrix<T>> {
    let n = a.len();
    let k = b.first().map_or(0, Vec::len);
    let mut aug: Matrix<T> = a.iter().zip(b).map(|(ra, rb)| ra.iter().chain(rb.iter()).cloned().collect()).collect();
    for col in 0..n {
        let p = pick_pivot(&aug, col, col)?;
        aug.swap(p, col);
        let pivot = aug[col][col].clone();
        for c in col..n + k {
            aug[col][c] = aug[col][c].clone() / pivot.clone();
        }
        for r in 0..n {
            if r == col || aug[r][col].pivot_weight() == 0.0 {
                continue;
            }
            let f = aug[r][col].clone();
            for c in col..n + k {
                let v = aug[col][c].clone();
                aug[r][c] = aug[r][c].clone() - f.clone() * v;
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn inverse<T: Field>(a: &Matrix<T>) -> Option<Matrix<T>> {
    solve(a, &identity(a.len()))
}

/// Characteristic polynomial `det(x I - a)` by Faddeev–LeVerrier.
///
/// Coefficients are returned lowest degree first; the leading one is 1.
pub fn char_poly<T: Field>(a: &Matrix<T>) -> Vec<T> {
    let n = a.len();
    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[n] = T::one();
    // M_0 = 0, c_n = 1; M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k
    let mut m: Matrix<T> = vec![vec![T::zero(); n]; n];
    let mut k_scalar = T::zero();
    for k in 1..=n {
        k_scalar = k_scalar + T::one();
        let mut next = mat_mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = row[i].clone() + coeffs[n - k + 1].clone();
        }
        let am = mat_mul(a, &next);
        let trace = (0..n).fold(T::zero(), |acc, i| acc + am[i][i].clone());
        coeffs[n - k] = -(trace / k_scalar.clone());
        m = next;
    }
    coeffs
}

fn poly_eval(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Divides by `(x - root)`, assuming `root` is a root.
fn deflate(coeffs: &[BigRational], root: &BigRational) -> Vec<BigRational> {
    let deg = coeffs.len() - 1;
    let mut out = vec![BigRational::zero(); deg];
    let mut carry = BigRational::zero();
    for k in (0..deg).rev() {
        carry = carry * root + &coeffs[k + 1];
        out[k] = carry.clone();
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Rational roots of a rational polynomial (lowest degree first), with
/// multiplicity, together with the unfactored remainder.
///
/// Candidate roots come from the rational root theorem applied to the
/// primitive integer form of each square-free stage; the search restricts to
/// nonnegative candidates when `nonnegative_only` is set.
pub fn rational_roots(coeffs: &[BigRational], nonnegative_only: bool) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut poly: Vec<BigRational> = coeffs.to_vec();
    while poly.len() > 1 && poly.last().is_some_and(Zero::is_zero) {
        poly.pop();
    }
    let mut roots = Vec::new();
    while poly.len() > 1 && poly[0].is_zero() {
        roots.push(BigRational::zero());
        poly.remove(0);
    }
    loop {
        if poly.len() <= 1 {
            break;
        }
        let lcm = poly.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = poly.iter().map(|c| (c * &lcm).to_integer()).collect();
        let lead = ints.last().expect("nonempty");
        let constant = &ints[0];
        let mut found = None;
        'search: for q in divisors(lead) {
            for p in divisors(constant) {
                let signs: &[i32] = if nonnegative_only { &[1] } else { &[1, -1] };
                for &s in signs {
                    let cand = BigRational::new(&p * BigInt::from(s), q.clone());
                    if poly_eval(&poly, &cand).is_zero() {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some(r) => {
                poly = deflate(&poly, &r);
                roots.push(r);
            }
            None => break,
        }
    }
    (roots, poly)
}

pub fn format_poly(coeffs: &[BigRational]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| match k {
            0 => format_rational(c),
            1 => format!("({})x", format_rational(c)),
            _ => format!("({})x^{k}", format_rational(c)),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
