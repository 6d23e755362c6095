use curve_count::divisor::places_up_to;
use curve_count::nde::{all_nonzero_by_inclusion_exclusion, all_nonzero_direct, plug_in};
use curve_count::relation::Relation;
use curve_count::*;
use exact_arith::FiniteField;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use variety_model::{builtin_dp6a2, builtin_xn};

fn lifting_matches_brute(n: usize, q: u64, ms: std::ops::RangeInclusive<i64>) {
    let v = builtin_xn(n).unwrap();
    for m in ms {
        let b = brute_force_n(&v, q, m).unwrap();
        let l = lifting_rhs(&v, q, m).unwrap();
        assert!(b.complete() && l.complete(), "X_{n} q={q} m={m} hit a cap");
        assert_eq!(b.per_y, l.per_y, "X_{n} q={q} m={m}");
        assert_eq!(b.total, l.total);
    }
}

#[test]
fn lifting_formula_x3_q2() {
    lifting_matches_brute(3, 2, 0..=5);
}

#[test]
fn lifting_formula_x3_q3() {
    lifting_matches_brute(3, 3, 0..=4);
}

#[test]
fn lifting_formula_x4_q2() {
    lifting_matches_brute(4, 2, 0..=3);
}

#[test]
fn some_counts_are_nonzero() {
    let v = builtin_xn(3).unwrap();
    assert!(brute_force_n(&v, 3, 0).unwrap().total > 0);
    assert!((1..=4).any(|m| brute_force_n(&v, 2, m).unwrap().total > 0));
}

#[test]
fn unreachable_degree_is_empty() {
    // <y, -K> = 1 has no solution for X_3 (-K = (3, 2, 2, 2)).
    let v = builtin_xn(3).unwrap();
    let b = brute_force_n(&v, 2, 1).unwrap();
    assert!(b.per_y.is_empty());
    assert_eq!((b.total, lifting_rhs(&v, 2, 1).unwrap().total), (0, 0));
}

#[test]
fn twisted_sections_give_the_same_counts() {
    let v = builtin_xn(3).unwrap();
    for m in 0..=4 {
        assert_eq!(lifting_rhs_twisted(&v, 3, m, 2).unwrap(), lifting_rhs(&v, 3, m).unwrap());
    }
}

#[test]
fn dp6a2_lifting_small_degrees() {
    let v = builtin_dp6a2();
    for m in 0..=2 {
        let b = brute_force_n(&v, 2, m).unwrap();
        assert_eq!(b.total, lifting_rhs(&v, 2, m).unwrap().total, "m={m}");
    }
}

#[test]
fn counting_lemma_suites() {
    let lin = linear_suite(0x5eed, 500).unwrap();
    assert!(lin.pass(), "{:?}", lin.violations);
    assert!(lin.exact_cases > 50, "only {} exact cases", lin.exact_cases);
    let quasi = quasi_suite(0x5eed, 200).unwrap();
    assert!(quasi.pass(), "{:?}", quasi.violations);
    assert!(quasi.exact_cases > 20, "only {} exact cases", quasi.exact_cases);
}

fn random_divisor(rng: &mut ChaCha8Rng, places: &[Place], budget: &mut i64) -> EffDivisor {
    let mut parts = Vec::new();
    for _ in 0..rng.gen_range(0..=2) {
        let p = &places[rng.gen_range(0..places.len())];
        let m = rng.gen_range(1..=2);
        if p.degree() * m as i64 <= *budget {
            *budget -= p.degree() * m as i64;
            parts.push((p.clone(), m));
        }
    }
    EffDivisor::from_parts(parts)
}

#[test]
fn mu_summation_on_random_tuples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let k = Arc::new(FiniteField::with_order(2).unwrap());
    let places = places_up_to(&k, 2);
    for v in [builtin_xn(3).unwrap(), builtin_dp6a2()] {
        let cache = MuDivCache::new(&v).unwrap();
        for _ in 0..100 {
            let mut budget = 4;
            // Concentrate on few places so that patterns overlap.
            let local: Vec<Place> = (0..2).map(|_| places[rng.gen_range(0..places.len())].clone()).collect();
            let e: Vec<EffDivisor> = (0..7).map(|_| random_divisor(&mut rng, &local, &mut budget)).collect();
            assert!(e.iter().map(EffDivisor::degree).sum::<i64>() <= 4);
            let s = cache.partial_sum(&e).unwrap();
            assert!(s == 0 || s == 1);
            assert_eq!(s == 1, cache.meets_everywhere(&e).unwrap(), "{e:?}");
        }
    }
}

#[test]
fn mu_is_multiplicative() {
    let v = builtin_xn(3).unwrap();
    let cache = MuDivCache::new(&v).unwrap();
    let (p, p2) = (Place::Infinity, Place::Finite(vec![1, 1]));
    for a in 1..1u32 << 7 {
        for b in [0b0010010u32, 0b0100100, 0b0010110, 0b1001001] {
            let e: Vec<EffDivisor> = (0..7)
                .map(|c| {
                    let mut parts = Vec::new();
                    if a >> c & 1 == 1 {
                        parts.push((p.clone(), 1));
                    }
                    if b >> c & 1 == 1 {
                        parts.push((p2.clone(), 1));
                    }
                    EffDivisor::from_parts(parts)
                })
                .collect();
            assert_eq!(cache.mu_div(&e).unwrap(), cache.table.at_mask(a) * cache.table.at_mask(b));
        }
    }
}

#[test]
fn inclusion_exclusion_on_random_relations() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let v = builtin_xn(3).unwrap();
    let d = builtin_dp6a2();
    for i in 0..100 {
        let q = [2u64, 3][i % 2];
        let k = FiniteField::with_order(q).unwrap();
        let var = if i % 4 < 2 { &v } else { &d };
        let s: Vec<Form> = (0..4)
            .map(|_| {
                let deg = rng.gen_range(0..=2);
                let mut poly: Vec<u32> = (0..deg).map(|_| rng.gen_range(0..q) as u32).collect();
                poly.push(1);
                Form::new(poly, deg).unwrap()
            })
            .collect();
        let g = vec![Form::one(); 3];
        let t_deg: Vec<i64> = (0..3).map(|_| rng.gen_range(-1..=2)).collect();
        let rel: Relation = plug_in(&k, var, &s, &g, &t_deg);
        assert_eq!(all_nonzero_by_inclusion_exclusion(&k, &rel), all_nonzero_direct(&k, &rel) as i128);
    }
}

#[test]
fn open_count_from_constant_tuples() {
    let v = builtin_xn(3).unwrap();
    let zero = vec![EffDivisor::zero(); 7];
    for q in [2, 3, 5] {
        let n = count_nde_nonzero(&v, q, &zero[..4], &zero).unwrap();
        assert_eq!(exact_arith::BigInt::from(n), point_count::count_open(&v, q).unwrap());
    }
}

#[test]
fn zeta_table_shape() {
    let v = builtin_xn(3).unwrap();
    let r = zeta_report(&v, 3, 4, 4).unwrap();
    assert_eq!(r.rows.len(), 5);
    assert!(r.rows.iter().all(|row| row.complete));
    let j = serde_json::to_value(&r).unwrap();
    assert_eq!(j["rows"][0]["N"], serde_json::json!(point_count::count_open(&v, 3).unwrap().to_string()));
    // The number of y grows along steps of <u, -K> = 2 (adding e_1).
    let main = |m: usize| {
        let row = &r.rows[m];
        exact_arith::BigRational::new(row.main_term_num.parse().unwrap(), row.main_term_den.parse().unwrap())
    };
    assert!(main(2) <= main(4));
    assert!(main(0) <= main(2));
}
