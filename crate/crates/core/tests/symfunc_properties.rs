use grassdesign::linalg::determinant;
use grassdesign::partitions::{enumerate_t_t, Partition};
use grassdesign::scalar::int;
use grassdesign::symfunc::{giambelli_eval, normalized_schur_eval, pieri_e1, schur_eval, schur_norm};
use num::rational::BigRational;
use num::traits::One;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `det(y_i^{μ_j + m − j}) / det(y_i^{m − j})`; needs distinct coordinates.
fn bialternant(mu: &Partition, y: &[BigRational]) -> BigRational {
    let m = y.len();
    let power = |x: &BigRational, e: u32| (0..e).fold(BigRational::one(), |acc, _| acc * x);
    let num: Vec<Vec<BigRational>> =
        y.iter().map(|yi| (0..m).map(|j| power(yi, mu.parts()[j] + (m - 1 - j) as u32)).collect()).collect();
    let den: Vec<Vec<BigRational>> =
        y.iter().map(|yi| (0..m).map(|j| power(yi, (m - 1 - j) as u32)).collect()).collect();
    determinant(&num) / determinant(&den)
}

fn random_point(rng: &mut ChaCha8Rng, m: usize) -> Vec<BigRational> {
    (0..m).map(|_| BigRational::new(rng.random_range(-30i64..=30).into(), rng.random_range(1i64..=12).into())).collect()
}

fn distinct_point(rng: &mut ChaCha8Rng, m: usize) -> Vec<BigRational> {
    loop {
        let y = random_point(rng, m);
        if (0..m).all(|i| (i + 1..m).all(|j| y[i] != y[j])) {
            return y;
        }
    }
}

#[test]
fn jacobi_trudi_matches_dual_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for m in 1..=4 {
        let shapes = enumerate_t_t(m, 5);
        for _ in 0..200 {
            let y = random_point(&mut rng, m);
            for mu in &shapes {
                assert_eq!(schur_eval(mu, &y).unwrap(), giambelli_eval(mu, &y).unwrap(), "{mu}");
            }
        }
    }
}

#[test]
fn jacobi_trudi_matches_bialternant() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for m in 1..=4 {
        let shapes = enumerate_t_t(m, 5);
        for _ in 0..200 {
            let y = distinct_point(&mut rng, m);
            for mu in &shapes {
                assert_eq!(schur_eval(mu, &y).unwrap(), bialternant(mu, &y), "{mu}");
            }
        }
    }
}

#[test]
fn norm_is_value_at_ones() {
    for m in 1..=4 {
        let ones = vec![int(1); m];
        for mu in enumerate_t_t(m, 6) {
            assert_eq!(schur_norm(&mu), schur_eval(&mu, &ones).unwrap(), "{mu}");
        }
    }
}

#[test]
fn schur_is_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for m in 2..=4 {
        for mu in enumerate_t_t(m, 5) {
            let y = random_point(&mut rng, m);
            let mut shuffled = y.clone();
            shuffled.shuffle(&mut rng);
            assert_eq!(schur_eval(&mu, &y).unwrap(), schur_eval(&mu, &shuffled).unwrap());
        }
    }
}

#[test]
fn pieri_matches_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for m in 1..=4 {
        for j in 1..=m {
            let rule = pieri_e1(j, m).unwrap();
            let one = Partition::ones(1, m).unwrap();
            let col = Partition::ones(j, m).unwrap();
            for _ in 0..20 {
                let y = random_point(&mut rng, m);
                let product = normalized_schur_eval(&one, &y).unwrap() * normalized_schur_eval(&col, &y).unwrap();
                assert_eq!(rule.eval(&y).unwrap(), product, "j={j} m={m}");
            }
        }
    }
}

proptest! {
    #[test]
    fn normalized_value_at_ones_is_one(raw in prop::collection::vec(0u32..5, 1..5)) {
        let mut parts = raw;
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let mu = Partition::new(parts).unwrap();
        let ones = vec![int(1); mu.m()];
        prop_assert_eq!(normalized_schur_eval(&mu, &ones).unwrap(), int(1));
    }

    #[test]
    fn float_tracks_exact(num in prop::collection::vec(0i64..100, 3), mu_parts in prop::collection::vec(0u32..4, 3)) {
        let mut parts = mu_parts;
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let mu = Partition::new(parts).unwrap();
        let exact: Vec<BigRational> = num.iter().map(|&k| BigRational::new(k.into(), 100.into())).collect();
        let float: Vec<f64> = num.iter().map(|&k| k as f64 / 100.0).collect();
        let e: f64 = grassdesign::Scalar::from_rational(&schur_eval(&mu, &exact).unwrap());
        let f = schur_eval(&mu, &float).unwrap();
        prop_assert!((e - f).abs() <= 1e-12 * (1.0 + e.abs()));
    }
}
