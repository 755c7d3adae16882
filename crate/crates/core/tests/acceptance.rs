//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails or overruns its time budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use grassdesign::designs::{
    certificate_e, certificate_one_design, design_defect, family_e, family_f, is_t_design, lp_bound, Defect,
};
use grassdesign::grassmann::{
    appendix_b_config, great_antipodal, is_antipodal_pair, orthogonal_split_config, random_configuration,
    PrincipalAngles,
};
use grassdesign::linalg::{identity, mat_mul, Matrix};
use grassdesign::partitions::{binom, enumerate_t_t, Partition};
use grassdesign::scalar::{int, rat};
use grassdesign::zonal::{
    dim_h, product_z1_z1i, xstar_in_zonal_basis, zonal_closed_1i, zonal_closed_21, zonal_closed_i, ZonalCache,
};
use num::rational::BigRational;
use num::traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Relative floor for float defects: `defect / (|X|^2 dim H_mu)`.
const FLOAT_DEFECT_FLOOR: f64 = -1e-9;
const POINTS_PER_IDENTITY: usize = 50;
const RANDOM_CONFIGURATIONS: u64 = 20;
const MAX_ROW: u32 = 6;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    what: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn sweep(max_m: usize, max_n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=max_m).flat_map(move |m| (2 * m..=max_n).map(move |n| (m, n)))
}

fn dim(mu: &Partition, n: usize) -> Result<BigRational, String> {
    Ok(BigRational::from_integer(dim_h(mu, n).map_err(err)?.value))
}

fn great_antipodal_is_ef_design() -> Outcome {
    for (m, n) in [(2, 4), (2, 5), (2, 6), (3, 6)] {
        let s = great_antipodal(m, n).map_err(err)?;
        let expected = binom(n as i64, m as i64).map_err(err)?;
        ensure(int(s.len() as i64) == expected, || format!("|S| = {} for ({m},{n})", s.len()))?;
        let set: Vec<Partition> = family_e(m).into_iter().chain(family_f(m)).filter(|p| !p.is_zero()).collect();
        let report = is_t_design(&s, &set, 0.0).map_err(err)?;
        for e in &report.entries {
            ensure(e.defect.is_exact_zero(), || format!("({m},{n}) {}: defect {}", e.partition, e.defect))?;
        }
    }
    Ok("4 cases, all defects exactly 0".into())
}

fn certificate_e_meets_cardinality() -> Outcome {
    let mut cases = 0;
    for (m, n) in sweep(3, 8) {
        let bound = lp_bound(&certificate_e(m, n).map_err(err)?).map_err(err)?.bound;
        let expected = binom(n as i64, m as i64).map_err(err)?;
        ensure(bound == expected, || format!("({m},{n}): {bound} != {expected}"))?;
        cases += 1;
    }
    Ok(format!("{cases} cases exact"))
}

fn six_planes_reproduce() -> Outcome {
    let x = appendix_b_config();
    let angle = |a: (i64, i64), b: i64| PrincipalAngles::Exact(vec![rat(a.0, a.1), rat(b, 1)]);
    let full = angle((1, 1), 1);
    let half = angle((1, 2), 0);
    let one = angle((1, 1), 0);
    let zero = angle((0, 1), 0);
    let printed = [
        [&full, &zero, &one, &one, &one, &one],
        [&zero, &full, &one, &one, &one, &one],
        [&one, &one, &full, &one, &half, &half],
        [&one, &one, &one, &full, &half, &half],
        [&one, &one, &half, &half, &full, &one],
        [&one, &one, &half, &half, &one, &full],
    ];
    let matrix = x.angle_matrix().map_err(err)?;
    for (i, row) in printed.iter().enumerate() {
        for (j, want) in row.iter().enumerate() {
            ensure(&matrix[i][j] == *want, || format!("entry ({},{}) = {}", i + 1, j + 1, matrix[i][j]))?;
        }
    }
    let e: Vec<Partition> = family_e(2);
    ensure(is_t_design(&x, &e, 0.0).map_err(err)?.is_design, || "not an E-design".into())?;
    let ef: Vec<Partition> = e.iter().cloned().chain(family_f(2)).collect();
    ensure(!is_t_design(&x, &ef, 0.0).map_err(err)?.is_design, || "unexpectedly an E+F-design".into())?;
    let (x3, x5) = (&x.points()[2], &x.points()[4]);
    ensure(!is_antipodal_pair(x3, x5, 0.0).map_err(err)?, || "(x3,x5) antipodal".into())?;
    Ok("36 entries match; E passes, E+F fails, (x3,x5) not antipodal".into())
}

fn great_antipodal_is_not_two_design() -> Outcome {
    let s = great_antipodal(2, 4).map_err(err)?;
    let defect = design_defect(&s, &Partition::row(2, 2).map_err(err)?).map_err(err)?;
    ensure(!defect.is_exact_zero(), || "defect at (2) vanished".into())?;
    Ok(format!("defect at (2) = {defect}"))
}

fn one_design_bound() -> Outcome {
    for (m, n) in [(1, 4), (2, 4), (2, 6), (3, 6)] {
        let bound = lp_bound(&certificate_one_design(m, n).map_err(err)?).map_err(err)?.bound;
        ensure(bound == rat(n as i64, m as i64), || format!("({m},{n}): {bound}"))?;
    }
    let x = orthogonal_split_config(2, 4).map_err(err)?;
    ensure(x.len() == 2, || format!("{} points", x.len()))?;
    let report = is_t_design(&x, &enumerate_t_t(2, 1), 0.0).map_err(err)?;
    ensure(report.is_design, || "split configuration is not a 1-design".into())?;
    Ok("bounds n/m exact; 2-point split is a 1-design".into())
}

fn closed_forms_match_oracle() -> Outcome {
    let oracle = ZonalCache::with_seed(0);
    let mut checked = 0;
    for (m, n) in sweep(3, 8) {
        for i in 0..=m {
            let want = oracle.zonal(&Partition::ones(i, m).map_err(err)?, n).map_err(err)?;
            ensure(zonal_closed_1i(i, m, n).map_err(err)? == *want, || format!("(1^{i}) m={m} n={n}"))?;
            checked += 1;
        }
        for i in 0..=MAX_ROW {
            let want = oracle.zonal(&Partition::row(i, m).map_err(err)?, n).map_err(err)?;
            ensure(zonal_closed_i(i, m, n).map_err(err)? == *want, || format!("({i}) m={m} n={n}"))?;
            checked += 1;
        }
        for i in 1..=m {
            let want = oracle.zonal(&Partition::hook(i, m).map_err(err)?, n).map_err(err)?;
            ensure(zonal_closed_21(i, m, n).map_err(err)? == *want, || format!("(2,1^{}) m={m} n={n}", i - 1))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} polynomials equal coefficient-by-coefficient"))
}

fn change_of_basis_is_identity() -> Outcome {
    let mut cases = 0;
    for (m, n) in sweep(4, 10) {
        let size = m + 1;
        let mut z: Matrix<BigRational> = vec![vec![BigRational::zero(); size]; size];
        let mut d = z.clone();
        for i in 0..=m {
            let zi = zonal_closed_1i(i, m, n).map_err(err)?;
            let di = xstar_in_zonal_basis(i, m, n).map_err(err)?;
            for j in 0..=m {
                let key = Partition::ones(j, m).map_err(err)?;
                z[j][i] = zi.expansion.coeff(&key);
                d[j][i] = di.get(&key).cloned().unwrap_or_else(BigRational::zero);
            }
        }
        ensure(mat_mul(&z, &d) == identity(size), || format!("m={m} n={n}"))?;
        cases += 1;
    }
    Ok(format!("{cases} cases exact"))
}

fn product_identity_holds() -> Outcome {
    let oracle = ZonalCache::with_seed(0);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut evaluations = 0;
    for (m, n) in sweep(3, 8) {
        let z1 = zonal_closed_1i(1, m, n).map_err(err)?;
        for i in 1..=m {
            let zi = zonal_closed_1i(i, m, n).map_err(err)?;
            let c = product_z1_z1i(i, m, n).map_err(err)?;
            let tag = format!("i={i} m={m} n={n}");
            ensure(c.a.is_positive(), || format!("{tag}: a = {}", c.a))?;
            ensure(!c.b_up.is_negative() && !c.b_same.is_negative() && !c.b_down.is_negative(), || {
                format!("{tag}: negative b")
            })?;
            ensure(i < m || c.b_up.is_zero(), || format!("{tag}: b_up nonzero at i = m"))?;
            ensure(n != 2 * m || c.b_same.is_zero(), || format!("{tag}: b_same nonzero at n = 2m"))?;
            let rhs = c
                .terms()
                .map_err(err)?
                .into_iter()
                .map(|(mu, k)| Ok((oracle.zonal(&mu, n).map_err(err)?, k)))
                .collect::<Result<Vec<_>, String>>()?;
            for _ in 0..POINTS_PER_IDENTITY {
                let y: Vec<BigRational> = (0..m)
                    .map(|_| BigRational::new(rng.random_range(0i64..=60).into(), rng.random_range(1i64..=60).into()))
                    .collect();
                let left = z1.eval(&y).map_err(err)? * zi.eval(&y).map_err(err)?;
                let mut right = BigRational::zero();
                for (z, k) in &rhs {
                    right += k * z.eval(&y).map_err(err)?;
                }
                ensure(left == right, || format!("{tag} at {y:?}"))?;
                evaluations += 1;
            }
        }
    }
    Ok(format!("{evaluations} exact evaluations"))
}

fn normalization_and_dimension_sum() -> Outcome {
    let oracle = ZonalCache::with_seed(0);
    let mut checked = 0;
    for (m, n) in sweep(3, 8) {
        for mu in enumerate_t_t(m, 4) {
            let z = oracle.zonal(&mu, n).map_err(err)?;
            ensure(z.at_ones() == dim(&mu, n)?, || format!("{mu} n={n}"))?;
            checked += 1;
        }
        let mut total = BigRational::zero();
        for i in 0..=m {
            total += dim(&Partition::ones(i, m).map_err(err)?, n)?;
        }
        ensure(total == binom(n as i64, m as i64).map_err(err)?.pow(2), || format!("sum m={m} n={n}"))?;
    }
    Ok(format!("{checked} normalizations, dimension sums exact"))
}

fn binomial_identities() -> Outcome {
    let b = |k: i64, r: i64| binom(k, r).expect("integer arguments");
    let sign = |e: i64| if e % 2 == 0 { int(1) } else { int(-1) };
    for n in 0..=12 {
        for m in 0..=n {
            for k in 0..=m {
                ensure(b(n - k, m - k) * b(n, k) == b(n, m) * b(m, k), || format!("first n={n} m={m} k={k}"))?;
            }
            for p in 0..=n {
                let lhs = (0..=m).fold(BigRational::zero(), |acc, k| acc + sign(k) * b(p, k) * b(n - k, m - k));
                ensure(lhs == b(n - p, m), || format!("second n={n} p={p} m={m}"))?;
            }
        }
        for m in 0..=12 {
            for p in 0..=12 {
                let lhs = (0..=p).fold(BigRational::zero(), |acc, k| acc + b(n, p - k) * b(m, k));
                ensure(lhs == b(n + m, p), || format!("third n={n} m={m} p={p}"))?;
            }
        }
    }
    for n in 0..=10 {
        for r in 0..=10 {
            for i in 0..=r {
                for u in 0..=10 {
                    let lhs = (i..=r)
                        .fold(BigRational::zero(), |acc, t| acc + sign(t - i) * b(t, i) * b(n - t, r - t) * b(u, t));
                    ensure(lhs == b(n - u, r - i) * b(u, i), || format!("fourth n={n} r={r} i={i} u={u}"))?;
                }
            }
        }
    }
    Ok("four identities exhaustive".into())
}

fn random_defects_are_nonnegative() -> Outcome {
    let mut sizes = ChaCha8Rng::seed_from_u64(99);
    let mut worst = f64::INFINITY;
    for (m, n) in [(2, 4), (2, 6)] {
        let shapes = enumerate_t_t(m, 3);
        for seed in 0..RANDOM_CONFIGURATIONS {
            let size = sizes.random_range(1..=6);
            let x = random_configuration(m, n, size, seed).map_err(err)?;
            for e in is_t_design(&x, &shapes, 1e-8).map_err(err)?.entries {
                ensure(matches!(e.defect, Defect::Float(v) if v.is_finite()), || "non-float defect".into())?;
                worst = worst.min(e.relative);
                ensure(e.relative >= FLOAT_DEFECT_FLOOR, || {
                    format!("G({m},{n}) seed {seed} {}: {:e}", e.partition, e.relative)
                })?;
            }
        }
    }
    Ok(format!("minimum relative defect {worst:e}"))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            what: "great antipodal sets are exact E+F-designs",
            budget: Duration::from_secs(30),
            run: great_antipodal_is_ef_design,
        },
        Criterion {
            id: 2,
            what: "E certificate bound equals binom(n,m)",
            budget: Duration::from_secs(5),
            run: certificate_e_meets_cardinality,
        },
        Criterion {
            id: 3,
            what: "six planes in C^4: angle matrix, E pass, E+F fail",
            budget: Duration::from_secs(5),
            run: six_planes_reproduce,
        },
        Criterion {
            id: 4,
            what: "great antipodal set in G(2,4) is not a 2-design",
            budget: Duration::from_secs(5),
            run: great_antipodal_is_not_two_design,
        },
        Criterion {
            id: 5,
            what: "1-design bound n/m and orthogonal split",
            budget: Duration::from_secs(5),
            run: one_design_bound,
        },
        Criterion {
            id: 6,
            what: "closed-form zonals equal the general construction",
            budget: Duration::from_secs(60),
            run: closed_forms_match_oracle,
        },
        Criterion {
            id: 7,
            what: "column change of basis is the identity",
            budget: Duration::from_secs(10),
            run: change_of_basis_is_identity,
        },
        Criterion {
            id: 8,
            what: "Z_(1) Z_(1^i) four-term identity and signs",
            budget: Duration::from_secs(60),
            run: product_identity_holds,
        },
        Criterion {
            id: 9,
            what: "Z_mu(1,...,1) = dim H_mu and column dimension sum",
            budget: Duration::from_secs(30),
            run: normalization_and_dimension_sum,
        },
        Criterion { id: 10, what: "binomial identity suite", budget: Duration::from_secs(5), run: binomial_identities },
        Criterion {
            id: 11,
            what: "random float configurations have nonnegative defects",
            budget: Duration::from_secs(30),
            run: random_defects_are_nonnegative,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let line = match outcome {
            Ok(detail) if elapsed <= c.budget => format!("PASS criterion {}: {} ({detail})", c.id, c.what),
            Ok(detail) => format!("FAIL criterion {}: {} ({detail}; over budget)", c.id, c.what),
            Err(why) => format!("FAIL criterion {}: {} ({why})", c.id, c.what),
        };
        if line.starts_with("FAIL") {
            failed += 1;
        }
        println!("{line} [{:.2}s / {}s]", elapsed.as_secs_f64(), c.budget.as_secs());
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
