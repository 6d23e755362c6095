//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! Every check is exact except the numeric cross-check of the cone
//! constant, whose tolerance is `ALPHA_TOLERANCE`. Time budgets are part of
//! each criterion.

use curve_count::divisor::places_up_to;
use curve_count::{brute_force_n, lifting_rhs, linear_suite, quasi_suite, EffDivisor, MuDivCache, Place};
use exact_arith::rational::{frac, int, qpow};
use exact_arith::{BigInt, BigRational, FiniteField};
use gen_series::{check_degree_bounds, check_local_identity, dp6a2_coeff, series_truncate, times_dp6a2_numerator, ExponentForm};
use lattice_fan::dual::alpha_f64;
use lattice_fan::gale::gale_data_sigma_n;
use lattice_fan::{alpha, build_sigma_n, check_fan, delta, CheckConfig};
use point_count::count::{brute_counts, strata_counts};
use point_count::{count_bilinear, count_bilinear_brute, count_bilinear_closed, count_open, counting_polynomial, points_exact};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use std::time::{Duration, Instant};
use variety_model::{builtin_dp6a2, builtin_xn, check_positivity, mu0, rlv_and_incidence, VarietyDescriptor};

const SEED: u64 = maninlab::DEFAULT_SEED;
const ALPHA_TOLERANCE: f64 = 1e-6;

type Check = Result<(), String>;

/// Name, time budget in seconds, check.
type Criterion = (&'static str, u64, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn fan_certificates() -> Check {
    for n in 3..=6 {
        let fan = build_sigma_n(n).map_err(e)?;
        let cfg = CheckConfig { samples: 10_000, seed: SEED, sample_bound: 1_000_000 };
        let cert = check_fan(&fan, Some(&gale_data_sigma_n(n)), &cfg).map_err(e)?;
        ensure(cert.all_pass() && cert.samples_checked >= 10_000, || format!("n={n}: {cert:?}"))?;
        ensure(cert.case_split == Some(true), || format!("n={n}: symbolic case split missing"))?;
    }
    Ok(())
}

fn local_identity() -> Check {
    let cases = [(builtin_xn(3).map_err(e)?, vec![2, 3, 4, 5]), (builtin_xn(4).map_err(e)?, vec![2, 3, 4, 5]), (builtin_dp6a2(), vec![2, 3])];
    for (v, qs) in cases {
        for q in qs {
            let r = check_local_identity(&v, q).map_err(e)?;
            // Right-hand side recomputed from the point count.
            let one_minus = int(1) - frac(1, q as i64);
            let mut rhs = BigRational::from_integer(points_exact(&v, q).map_err(e)?) * qpow(q, -(v.dim() as i64));
            for _ in 0..v.pic_rank() {
                rhs *= &one_minus;
            }
            ensure(r.pass && r.l1 == r.l2 && r.l2 == r.r && r.r == rhs, || format!("{} q={q}: {r:?} vs {rhs}", v.name))?;
        }
    }
    Ok(())
}

fn bilinear_counts() -> Check {
    for n in 1..=4u32 {
        for q in 2..=5u64 {
            let qb = BigInt::from(q);
            let closed = qb.pow(2 * n - 1) + qb.pow(n) - qb.pow(n - 1);
            let rec = count_bilinear(n, q);
            ensure(rec == closed && count_bilinear_closed(n, q) == closed, || format!("n={n} q={q}: {rec} vs {closed}"))?;
            if n <= 3 {
                let brute = count_bilinear_brute(n, q).ok_or("brute force out of range")?;
                ensure(BigInt::from(brute) == closed, || format!("n={n} q={q}: brute {brute} vs {closed}"))?;
            }
        }
    }
    ensure(count_bilinear(3, 2) == BigInt::from(36), || "N_3(2) != 36".into())
}

fn lifting_formula() -> Check {
    let v = builtin_xn(3).map_err(e)?;
    for (q, m_max) in [(2u64, 5i64), (3, 4)] {
        for m in 0..=m_max {
            let direct = brute_force_n(&v, q, m).map_err(e)?;
            let lifted = lifting_rhs(&v, q, m).map_err(e)?;
            ensure(direct.complete() && lifted.complete(), || format!("q={q} m={m}: multidegrees skipped"))?;
            ensure(direct.per_y == lifted.per_y, || format!("q={q} m={m}: {} vs {}", direct.total, lifted.total))?;
        }
        let constants = brute_force_n(&v, q, 0).map_err(e)?.total;
        let open = count_open(&v, q).map_err(e)?;
        ensure(BigInt::from(constants) == open, || format!("q={q}: constant maps {constants} vs open points {open}"))?;
    }
    Ok(())
}

/// `lim_{t -> 1} (1 - t)^r sum_y t^{<y, -K>}` for an orthant dual cone:
/// counts by degree via a coin-change table, then Richardson extrapolation
/// in `eps = 1 - t`.
fn numeric_alpha(weights: &[i64]) -> f64 {
    let r = weights.len() as i32;
    let eval = |eps: f64| {
        let t = 1.0 - eps;
        let top = (60.0 / eps) as usize;
        let mut c = vec![0f64; top + 1];
        c[0] = 1.0;
        for &w in weights {
            for m in w as usize..=top {
                c[m] += c[m - w as usize];
            }
        }
        let (mut sum, mut p) = (0.0, 1.0);
        for x in c {
            sum += x * p;
            p *= t;
        }
        sum * eps.powi(r)
    };
    // The value is analytic in eps; eliminate the first three error terms.
    let mut table: Vec<f64> = [0.008, 0.004, 0.002, 0.001].iter().map(|&h| eval(h)).collect();
    for k in 1..table.len() {
        let f = 2f64.powi(k as i32);
        table = table.windows(2).map(|w| (f * w[1] - w[0]) / (f - 1.0)).collect();
    }
    table[0]
}

fn alpha_and_delta() -> Check {
    for n in 3..=5usize {
        let v = builtin_xn(n).map_err(e)?;
        let anti_k = v.anticanonical().map_err(e)?;
        let a = alpha(&v.eff_cone(), &anti_k).map_err(e)?;
        let want = BigRational::new(BigInt::from(1), BigInt::from(n as i64 * (n as i64 - 1).pow(n as u32)));
        ensure(a == want, || format!("n={n}: alpha {a}, expected {want}"))?;
        // The oracle assumes the effective cone is the orthant.
        let r = v.pic_rank();
        let orthant = v.effective_cone.iter().all(|g| g.0.iter().all(|&x| x >= 0))
            && (0..r).all(|i| v.effective_cone.iter().any(|g| g.0.iter().enumerate().all(|(j, &x)| x == (i == j) as i64)));
        ensure(orthant, || format!("n={n}: effective cone is not the orthant"))?;
        let numeric = numeric_alpha(anti_k.as_slice());
        let gap = (numeric - alpha_f64(&a)).abs();
        ensure(gap < ALPHA_TOLERANCE, || format!("n={n}: numeric {numeric} vs {a} (gap {gap:e})"))?;
        ensure(delta(&anti_k).map_err(e)? == 1, || format!("n={n}: delta != 1"))?;
    }
    let d = builtin_dp6a2();
    ensure(delta(&d.anticanonical().map_err(e)?).map_err(e)? == 1, || "dP6-A2: delta != 1".into())
}

/// A 0/1 pattern on the dP6-A2 coordinates whose offset vector is `nu`.
fn dp6_pattern(v: &VarietyDescriptor, nu: [u32; 3]) -> Result<Vec<u32>, String> {
    for mask in 0..1u32 << v.coord_count() {
        let pat: Vec<u32> = (0..v.coord_count()).map(|k| mask >> k & 1).collect();
        if ExponentForm::new(v, &pat).map_err(e)?.offsets == nu.map(i64::from).to_vec() {
            return Ok(pat);
        }
    }
    Err(format!("no pattern realises nu={nu:?}"))
}

fn dp6a2_series() -> Check {
    let v = builtin_dp6a2();
    let gap = |a: u32, b: u32| a.abs_diff(b);
    for code in 0..27u32 {
        let nu = [code % 3, code / 3 % 3, code / 9];
        // Vanishing region on the box |d| <= 12.
        for d in (0..=12).flat_map(|x| (0..=12).flat_map(move |y| (0..=12).map(move |z| [x, y, z]))) {
            let outside = d[0] >= 5 + gap(nu[1], nu[0]) + gap(nu[2], nu[0])
                || d[1] >= 7 + gap(nu[0], nu[1]) + gap(nu[2], nu[1])
                || d[2] >= 7 + gap(nu[0], nu[2]) + gap(nu[1], nu[2]);
            ensure(!outside || dp6a2_coeff(nu, d).is_zero(), || format!("nu={nu:?} d={d:?}: nonzero in the vanishing region"))?;
        }
        // Closed form against the expanded series on box 10.
        let pat = dp6_pattern(&v, nu)?;
        let s = series_truncate(&v, &pat, 10).map_err(e)?;
        let g = times_dp6a2_numerator(&s);
        for d in (0..=10).flat_map(|x| (0..=10).flat_map(move |y| (0..=10).map(move |z| [x, y, z]))) {
            ensure(g.coeff(&d) == Some(dp6a2_coeff(nu, d)), || format!("nu={nu:?} d={d:?}: closed form differs"))?;
        }
        // Degree bounds on the closed-form coefficients; the half-integer
        // one is specific to nu = (0, 1, 1).
        let extra = nu[1].min(nu[2]) as i64;
        for d in (0..=12).flat_map(|x| (0..=12).flat_map(move |y| (0..=12).map(move |z| [x, y, z]))) {
            let exact_arith::Degree::Finite(deg) = dp6a2_coeff(nu, d).degree() else { continue };
            let (deg, size) = (deg as i64, d.iter().map(|&x| x as i64).sum::<i64>());
            ensure(deg <= size + extra, || format!("nu={nu:?} d={d:?}: degree {deg} > |d| + {extra}"))?;
            ensure(nu != [0, 1, 1] || 2 * deg <= 2 * size + 1, || format!("d={d:?}: degree {deg} > |d| + 1/2"))?;
        }
        let cert = check_degree_bounds(&s, &v).map_err(e)?;
        ensure(cert.pass && (nu != [0, 1, 1] || cert.half_bound == Some(true)), || format!("nu={nu:?}: {cert:?}"))?;
    }
    Ok(())
}

fn positivity() -> Check {
    for n in 3..=6 {
        let v = builtin_xn(n).map_err(e)?;
        let rep = check_positivity(&v);
        ensure(rep.pass && rep.conditions.iter().all(|c| c.pass), || format!("X_{n}: {rep:?}"))?;
        // Every pair of t-degrees is tested, so any ordering works.
        let pairs = rep.conditions.iter().filter(|c| c.name.starts_with('G')).count();
        ensure(pairs == n * (n - 1) / 2, || format!("X_{n}: {pairs} pair conditions"))?;
        // The averaged class is F_0 / (n - 1).
        let avg = rep.conditions.last().ok_or("no conditions")?;
        let mut want = vec!["0".to_string(); v.pic_rank()];
        want[0] = format!("1/{}", n - 1);
        ensure(avg.vector == want, || format!("X_{n}: averaged class {:?}", avg.vector))?;
    }
    ensure(variety_model::positivity::EPSILON == (1, 1000), || "eps is not 1/1000".into())?;
    let rep = check_positivity(&builtin_dp6a2());
    ensure(rep.pass && rep.conditions.len() >= 5 && rep.conditions.iter().all(|c| c.pass), || format!("dP6-A2: {rep:?}"))
}

fn counting_lemma_suites() -> Check {
    let lin = linear_suite(SEED, 500).map_err(e)?;
    ensure(lin.instances == 500 && lin.pass(), || format!("linear: {:?}", lin.violations))?;
    ensure(lin.exact_cases > 0, || "linear: exact case never reached".into())?;
    let qua = quasi_suite(SEED, 200).map_err(e)?;
    ensure(qua.instances == 200 && qua.pass(), || format!("quasi-linear: {:?}", qua.violations))?;
    ensure(qua.exact_cases > 0, || "quasi-linear: exact case never reached".into())
}

fn mobius_suite() -> Check {
    for v in [builtin_xn(3).map_err(e)?, builtin_xn(4).map_err(e)?, builtin_dp6a2()] {
        let inc = rlv_and_incidence(&v).map_err(e)?;
        let table = mu0(&inc);
        let n = inc.coords as u32;
        for beta in 0..1u32 << n {
            // Divisors in beta meet iff some relevant support avoids beta.
            let meets = inc.rlv.iter().any(|&s| s & beta == 0);
            let mut sum = 0i64;
            let mut alpha = beta;
            loop {
                sum += table.at_mask(alpha);
                if alpha == 0 {
                    break;
                }
                alpha = (alpha - 1) & beta;
            }
            ensure(sum == meets as i64, || format!("{} beta={beta:b}: sum {sum}, meets {meets}", v.name))?;
        }
        ensure(table.verify(&inc), || format!("{}: verify disagrees", v.name))?;
    }

    // mu(E + E') = mu(E) mu(E') for divisor tuples on disjoint places.
    let v = builtin_xn(3).map_err(e)?;
    let cache = MuDivCache::new(&v).map_err(e)?;
    let support: Vec<u32> = cache.table.support().map(|(m, _)| m).collect();
    let k = Arc::new(FiniteField::with_order(2).map_err(e)?);
    let places = places_up_to(&k, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let tuple = |rng: &mut ChaCha8Rng, at: &[Place]| -> Vec<EffDivisor> {
        let mut parts = vec![Vec::new(); 7];
        for p in at {
            let (mask, mult) = if rng.gen_range(0..4) > 0 {
                (support[rng.gen_range(0..support.len())], 1)
            } else {
                (rng.gen_range(0..128u32), rng.gen_range(1..=2))
            };
            for (c, part) in parts.iter_mut().enumerate() {
                if mask >> c & 1 == 1 {
                    part.push((p.clone(), mult));
                }
            }
        }
        parts.into_iter().map(EffDivisor::from_parts).collect()
    };
    let mut nonzero = 0;
    for i in 0..200 {
        let mut order = places.clone();
        for a in (1..order.len()).rev() {
            order.swap(a, rng.gen_range(0..=a));
        }
        let cut = rng.gen_range(1..order.len());
        let (left, right) = order.split_at(cut);
        let a = tuple(&mut rng, &left[..left.len().min(2)]);
        let b = tuple(&mut rng, &right[..right.len().min(2)]);
        let sum: Vec<EffDivisor> = a.iter().zip(&b).map(|(x, y)| x.add(y)).collect();
        let (ma, mb, ms) = (cache.mu_div(&a).map_err(e)?, cache.mu_div(&b).map_err(e)?, cache.mu_div(&sum).map_err(e)?);
        nonzero += (ms != 0) as usize;
        ensure(ms == ma * mb, || format!("tuple {i}: {ms} != {ma} * {mb}"))?;
    }
    ensure(nonzero >= 20, || format!("only {nonzero} tuples with nonzero mu"))
}

fn point_counts() -> Check {
    for v in [builtin_xn(3).map_err(e)?, builtin_xn(4).map_err(e)?, builtin_dp6a2()] {
        for q in [2u64, 3] {
            let brute = brute_counts(&v, q).map_err(e)?;
            let strata = strata_counts(&v, q).map_err(e)?;
            ensure(brute == strata, || format!("{} q={q}: brute {brute:?} vs strata {strata:?}", v.name))?;
            let torus = BigInt::from(q - 1).pow(v.pic_rank() as u32);
            for x in [&brute.0, &brute.1] {
                ensure(x % &torus == BigInt::from(0), || format!("{} q={q}: {x} not divisible by {torus}", v.name))?;
            }
        }
    }
    let x3 = builtin_xn(3).map_err(e)?;
    let p = counting_polynomial(&x3).map_err(e)?;
    ensure(p.coeffs == [1, 4, 1].map(BigInt::from).to_vec(), || format!("X_3 polynomial {:?}", p.coeffs))?;
    ensure(p.holdouts == [7, 8], || format!("holdouts {:?}", p.holdouts))?;
    for q in [7u64, 8] {
        let direct = points_exact(&x3, q).map_err(e)?;
        let want = BigInt::from(q * q + 4 * q + 1);
        ensure(direct == want, || format!("X_3 q={q}: {direct} vs {want}"))?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("fan certificates for n = 3..6", 5, fan_certificates),
        ("local identity L1 = L2 = R", 30, local_identity),
        ("bilinear counts", 5, bilinear_counts),
        ("lifting formula against brute force", 600, lifting_formula),
        ("cone constant and divisibility index", 5, alpha_and_delta),
        ("dP6-A2 series", 60, dp6a2_series),
        ("positivity hypotheses", 1, positivity),
        ("counting-lemma suites", 60, counting_lemma_suites),
        ("Moebius suite", 10, mobius_suite),
        ("point-count consistency", 60, point_counts),
    ];
    let mut failed = Vec::new();
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if outcome.is_ok() && elapsed > Duration::from_secs(*budget) {
            outcome = Err(format!("took {elapsed:.2?}, budget {budget} s"));
        }
        match &outcome {
            Ok(()) => println!("PASS {:>2} {name} ({elapsed:.2?})", i + 1),
            Err(msg) => {
                println!("FAIL {:>2} {name} ({elapsed:.2?}): {msg}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
