//! One pipeline per subcommand. Each returns the `result` object of the
//! report and whether every check in it passed.

use crate::{FanCheck, PointMethod};
use anyhow::{anyhow, Context, Result};
use curve_count::divisor::places_up_to;
use curve_count::{brute_force_n, lifting_rhs, linear_suite, quasi_suite, zeta_report, CurveError, EffDivisor, MuDivCache, Place};
use exact_arith::{BigInt, BigRational, FiniteField};
use gen_series::{
    check_degree_bounds, check_local_identity, convergence_certificate, dp6a2_coeff, parse_series_dump, series_truncate,
    times_dp6a2_numerator, ExponentForm, SeriesError,
};
use lattice_fan::gale::gale_data_sigma_n;
use lattice_fan::{alpha, build_sigma_n, check_fan, delta, dual_cone_rays, CheckConfig};
use maninlab::RunConfig;
use point_count::count::{brute_counts, strata_counts};
use point_count::{count_open, count_points, counting_polynomial, CountError, Method};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::sync::Arc;
use variety_model::{check_positivity, mu0, rlv_and_incidence, VarietyDescriptor};

pub enum Job {
    Fan { n: Vec<usize>, check: FanCheck, samples: usize },
    Mu { v: VarietyDescriptor, tuples: usize },
    Series { v: VarietyDescriptor, pattern: Option<Vec<u32>>, bound: u32, dump: Option<PathBuf>, coeffs: bool },
    Points { v: VarietyDescriptor, q: Vec<u64>, method: PointMethod, polynomial: bool },
    LocalCheck { v: VarietyDescriptor, q: Vec<u64> },
    Alpha { v: VarietyDescriptor },
    LemmaSuite { linear: usize, quasi: usize },
    CountCurves { v: VarietyDescriptor, q: Vec<u64>, m_max: i64 },
    LiftingCheck { v: VarietyDescriptor, q: Vec<u64>, m_max: i64 },
    Zeta { v: VarietyDescriptor, q: Vec<u64>, m_max: i64, euler_bound: u32 },
}

pub struct Outcome {
    pub result: Value,
    pub pass: bool,
    pub descriptor: Option<VarietyDescriptor>,
}

/// Errors that mean "too big to enumerate" rather than "wrong".
fn cap_message(e: &anyhow::Error) -> Option<String> {
    let count_cap = |c: &CountError| matches!(c, CountError::BruteCap { .. });
    let hit = match (e.downcast_ref::<CurveError>(), e.downcast_ref::<SeriesError>(), e.downcast_ref::<CountError>()) {
        (Some(CurveError::Cap(_)), _, _) => true,
        (Some(CurveError::Count(c)), _, _) => count_cap(c),
        (_, Some(SeriesError::BoxTooLarge { .. } | SeriesError::BruteCap(_)), _) => true,
        (_, Some(SeriesError::Count(c)), _) => count_cap(c),
        (_, _, Some(c)) => count_cap(c),
        _ => false,
    };
    hit.then(|| e.to_string())
}

/// Runs `f`, turning cap errors into a JSON entry.
fn capped<T>(f: impl FnOnce() -> Result<T>) -> Result<Result<T, Value>> {
    match f() {
        Ok(x) => Ok(Ok(x)),
        Err(e) => match cap_message(&e) {
            Some(msg) => Ok(Err(json!({ "cap_exceeded": msg }))),
            None => Err(e),
        },
    }
}

fn rational(x: &BigRational) -> Value {
    json!({ "num": x.numer().to_string(), "den": x.denom().to_string() })
}

fn to_value<T: serde::Serialize>(x: &T) -> Result<Value> {
    serde_json::to_value(x).context("serializing report")
}

pub fn run(job: Job, cfg: &RunConfig) -> Result<Outcome> {
    let with = |v: VarietyDescriptor, (result, pass): (Value, bool)| Outcome { result, pass, descriptor: Some(v) };
    Ok(match job {
        Job::Fan { n, check, samples } => {
            let (result, pass) = fan(&n, check, samples, cfg.seed)?;
            Outcome { result, pass, descriptor: None }
        }
        Job::Mu { v, tuples } => {
            let r = mu(&v, tuples, cfg.seed)?;
            with(v, r)
        }
        Job::Series { v, pattern, bound, dump, coeffs } => {
            let r = series(&v, pattern, bound, dump, coeffs)?;
            with(v, r)
        }
        Job::Points { v, q, method, polynomial } => {
            let r = points(&v, &q, method, polynomial)?;
            with(v, r)
        }
        Job::LocalCheck { v, q } => {
            let r = local_check(&v, &q)?;
            with(v, r)
        }
        Job::Alpha { v } => {
            let r = alpha_report(&v)?;
            with(v, r)
        }
        Job::LemmaSuite { linear, quasi } => {
            let lin = linear_suite(cfg.seed, linear)?;
            let qua = quasi_suite(cfg.seed, quasi)?;
            let pass = lin.pass() && qua.pass();
            Outcome { result: json!({ "linear": to_value(&lin)?, "quasi_linear": to_value(&qua)? }), pass, descriptor: None }
        }
        Job::CountCurves { v, q, m_max } => {
            let r = count_curves(&v, &q, m_max)?;
            with(v, r)
        }
        Job::LiftingCheck { v, q, m_max } => {
            let r = lifting_check(&v, &q, m_max)?;
            with(v, r)
        }
        Job::Zeta { v, q, m_max, euler_bound } => {
            let mut tables = Vec::new();
            for &q in &q {
                tables.push(match capped(|| Ok(zeta_report(&v, q, m_max, euler_bound)?))? {
                    Ok(z) => to_value(&z)?,
                    Err(cap) => json!({ "q": q, "error": cap }),
                });
            }
            with(v, (json!({ "tables": tables }), true))
        }
    })
}

fn fan(ns: &[usize], check: FanCheck, samples: usize, seed: u64) -> Result<(Value, bool)> {
    let mut certs = Vec::new();
    let mut pass = true;
    for &n in ns {
        let fan = build_sigma_n(n)?;
        let cfg = CheckConfig { samples, seed, sample_bound: 1_000_000 };
        let cert = check_fan(&fan, Some(&gale_data_sigma_n(n)), &cfg)?;
        let ok = match check {
            FanCheck::All => cert.all_pass(),
            FanCheck::Simplicial => cert.simplicial,
            FanCheck::Smooth => cert.smooth,
            FanCheck::Complete => cert.complete,
            FanCheck::Separated => cert.separated,
            FanCheck::Projective => cert.projective,
        };
        pass &= ok;
        certs.push(json!({
            "n": n,
            "rays": fan.rays.len(),
            "maximal_cones": fan.cones.len(),
            "certificate": to_value(&cert)?,
            "pass": ok,
        }));
    }
    Ok((json!({ "fans": certs }), pass))
}

/// One pattern per place: usually a pattern where `mu0` is nonzero,
/// sometimes an arbitrary one with multiplicities up to 2.
fn random_tuple(rng: &mut ChaCha8Rng, places: &[Place], support: &[u32], coords: usize) -> Vec<EffDivisor> {
    let mut parts = vec![Vec::new(); coords];
    for p in places {
        let (mask, mult) = if rng.gen_range(0..4) > 0 {
            (support[rng.gen_range(0..support.len())], 1)
        } else {
            (rng.gen_range(0..1u32 << coords), rng.gen_range(1..=2))
        };
        for (c, part) in parts.iter_mut().enumerate() {
            if mask >> c & 1 == 1 {
                part.push((p.clone(), mult));
            }
        }
    }
    parts.into_iter().map(EffDivisor::from_parts).collect()
}

fn mu(v: &VarietyDescriptor, tuples: usize, seed: u64) -> Result<(Value, bool)> {
    let inc = rlv_and_incidence(v)?;
    let table = mu0(&inc);
    let identity = table.verify(&inc);
    let support: Vec<Value> = table
        .support()
        .map(|(mask, value)| json!({ "pattern": format!("{mask:0width$b}", width = inc.coords), "mu": value }))
        .collect();

    // mu(E + E') = mu(E) mu(E') for E, E' on disjoint sets of places.
    let cache = MuDivCache::new(v)?;
    let k = Arc::new(FiniteField::with_order(2)?);
    let places = places_up_to(&k, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut nonzero = 0;
    let patterns: Vec<u32> = table.support().map(|(m, _)| m).collect();
    for i in 0..tuples {
        let split = rng.gen_range(1..places.len());
        let mut shuffled = places.clone();
        for a in (1..shuffled.len()).rev() {
            shuffled.swap(a, rng.gen_range(0..=a));
        }
        let (left, right) = shuffled.split_at(split);
        let left = &left[..left.len().min(2)];
        let right = &right[..right.len().min(2)];
        let a = random_tuple(&mut rng, left, &patterns, inc.coords);
        let b = random_tuple(&mut rng, right, &patterns, inc.coords);
        let sum: Vec<EffDivisor> = a.iter().zip(&b).map(|(x, y)| x.add(y)).collect();
        let (ma, mb, ms) = (cache.mu_div(&a)?, cache.mu_div(&b)?, cache.mu_div(&sum)?);
        nonzero += (ms != 0) as usize;
        if ms != ma * mb {
            failures.push(format!("tuple {i}: mu(E+E') = {ms}, mu(E) mu(E') = {}", ma * mb));
        }
    }
    let pass = identity && failures.is_empty();
    let result = json!({
        "coords": inc.coords,
        "relevant_patterns": inc.rlv.len(),
        "support": support,
        "summation_identity": identity,
        "multiplicativity": { "tuples": tuples, "nonzero": nonzero, "failures": failures },
    });
    Ok((result, pass))
}

fn series(v: &VarietyDescriptor, pattern: Option<Vec<u32>>, bound: u32, dump: Option<PathBuf>, coeffs: bool) -> Result<(Value, bool)> {
    let s = match &dump {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            parse_series_dump(&text)?
        }
        None => {
            let e = pattern.unwrap_or_else(|| vec![0; v.coord_count()]);
            match capped(|| Ok(series_truncate(v, &e, bound)?))? {
                Ok(s) => s,
                Err(cap) => return Ok((json!({ "pattern": e, "box": bound, "error": cap }), true)),
            }
        }
    };
    let bounds = check_degree_bounds(&s, v)?;
    let mut pass = bounds.pass;
    let mut result = json!({
        "pattern": s.e,
        "box": s.bound,
        "vars": s.vars,
        "nonzero_coefficients": s.coeffs.len(),
        "degree_bounds": to_value(&bounds)?,
    });
    if v.name == "dP6-A2" && s.vars == 3 {
        // The numerator times the series against the closed form, over the box.
        let nu = ExponentForm::new(v, &s.e)?.offsets;
        let nu: [u32; 3] = [0, 1, 2].map(|j| nu[j] as u32);
        let g = times_dp6a2_numerator(&s);
        let mut mismatches = Vec::new();
        let b = s.bound;
        for d in (0..=b).flat_map(|x| (0..=b).flat_map(move |y| (0..=b).map(move |z| [x, y, z]))) {
            if g.coeff(&d) != Some(dp6a2_coeff(nu, d)) {
                mismatches.push(d.to_vec());
            }
        }
        pass &= mismatches.is_empty();
        result["closed_form"] = json!({ "nu": nu, "mismatches": mismatches });
    }
    if coeffs {
        result["series"] = s.to_json();
    }
    Ok((result, pass))
}

fn torus_divides(raw: &BigInt, q: u64, rank: usize) -> bool {
    let torus = BigInt::from(q - 1).pow(rank as u32);
    raw % &torus == BigInt::from(0)
}

fn points(v: &VarietyDescriptor, qs: &[u64], method: PointMethod, polynomial: bool) -> Result<(Value, bool)> {
    let r = v.pic_rank();
    let mut pass = true;
    let mut rows = Vec::new();
    for &q in qs {
        let row = match method {
            PointMethod::Compare => {
                let strata = strata_counts(v, q)?;
                match capped(|| Ok(brute_counts(v, q)?))? {
                    Ok(brute) => {
                        let agree = brute == strata;
                        let divisible = torus_divides(&brute.0, q, r) && torus_divides(&brute.1, q, r);
                        pass &= agree && divisible;
                        json!({
                            "q": q,
                            "brute": { "raw": brute.0.to_string(), "open_raw": brute.1.to_string() },
                            "strata": { "raw": strata.0.to_string(), "open_raw": strata.1.to_string() },
                            "agree": agree,
                            "torus_divides": divisible,
                        })
                    }
                    Err(cap) => json!({ "q": q, "error": cap }),
                }
            }
            _ => {
                let m = match method {
                    PointMethod::Brute => Method::Brute,
                    PointMethod::Strata => Method::Strata,
                    _ => Method::Auto,
                };
                let rep = count_points(v, q, m)?;
                let divisible = torus_divides(&rep.raw, q, r);
                pass &= divisible;
                let mut row = to_value(&rep)?;
                row["torus_divides"] = json!(divisible);
                row
            }
        };
        rows.push(row);
    }
    let mut result = json!({ "counts": rows });
    if polynomial {
        result["polynomial"] = match counting_polynomial(v) {
            Ok(p) => to_value(&p)?,
            Err(e @ (CountError::HoldoutFailed { .. } | CountError::NotPolynomial { .. })) => {
                pass = false;
                json!({ "failure": e.to_string() })
            }
            Err(e) => return Err(e.into()),
        };
    }
    Ok((result, pass))
}

fn local_check(v: &VarietyDescriptor, qs: &[u64]) -> Result<(Value, bool)> {
    let mut pass = true;
    let mut rows = Vec::new();
    for &q in qs {
        let r = check_local_identity(v, q)?;
        pass &= r.pass;
        rows.push(to_value(&r)?);
    }
    Ok((json!({ "identities": rows }), pass))
}

fn alpha_report(v: &VarietyDescriptor) -> Result<(Value, bool)> {
    let anti_k = v.anticanonical()?;
    let eff = v.eff_cone();
    let a = alpha(&eff, &anti_k)?;
    let rays = dual_cone_rays(&eff)?;
    let positivity = check_positivity(v);
    let convergence = convergence_certificate(v)?;
    let pass = positivity.pass && convergence.pass;
    let result = json!({
        "anticanonical": anti_k.as_slice(),
        "alpha": rational(&a),
        "delta": delta(&anti_k)?,
        "dual_cone_rays": rays,
        "positivity": to_value(&positivity)?,
        "convergence": to_value(&convergence)?,
    });
    Ok((result, pass))
}

fn count_curves(v: &VarietyDescriptor, qs: &[u64], m_max: i64) -> Result<(Value, bool)> {
    let mut rows = Vec::new();
    for &q in qs {
        for m in 0..=m_max {
            let n = brute_force_n(v, q, m)?;
            let mut row = to_value(&n)?;
            row["q"] = json!(q);
            row["complete"] = json!(n.complete());
            rows.push(row);
        }
    }
    Ok((json!({ "counts": rows }), true))
}

fn lifting_check(v: &VarietyDescriptor, qs: &[u64], m_max: i64) -> Result<(Value, bool)> {
    let mut pass = true;
    let mut rows = Vec::new();
    let mut constants = Vec::new();
    for &q in qs {
        for m in 0..=m_max {
            let direct = brute_force_n(v, q, m)?;
            let lifted = lifting_rhs(v, q, m)?;
            if direct.skipped != lifted.skipped {
                return Err(anyhow!("the two sides skipped different multidegrees at q={q}, m={m}"));
            }
            let agree = direct.total == lifted.total && direct.per_y == lifted.per_y;
            pass &= agree;
            rows.push(json!({
                "q": q,
                "m": m,
                "direct": direct.total.to_string(),
                "lifted": lifted.total.to_string(),
                "multidegrees": direct.per_y.len(),
                "skipped": direct.skipped,
                "agree": agree,
            }));
            if m == 0 {
                let open = count_open(v, q)?;
                let agree = BigInt::from(direct.total) == open;
                pass &= agree;
                constants.push(json!({ "q": q, "constant_maps": direct.total.to_string(), "open_points": open.to_string(), "agree": agree }));
            }
        }
    }
    Ok((json!({ "coefficients": rows, "constant_maps": constants }), pass))
}
