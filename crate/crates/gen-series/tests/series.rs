use exact_arith::rational::{frac, int, qpow};
use exact_arith::{BigInt, BigRational, RhoPolynomial};
use gen_series::exact::{evaluate_histogram, exponent_histogram, within_tail_bound};
use gen_series::*;
use num_traits::One;
use point_count::{count_bilinear, count_bilinear_brute};
use proptest::prelude::*;
use variety_model::{builtin_dp6a2, builtin_xn, VarietyDescriptor};

fn pattern(mask: u32, n: usize) -> Vec<u32> {
    (0..n).map(|k| mask >> k & 1).collect()
}

/// dP6-A2 pattern (s0..s3, t1..t3) realising a given offset vector.
fn dp6_pattern(nu: [u32; 3]) -> Vec<u32> {
    let mut e = vec![0; 7];
    match nu[0] {
        0 => {}
        1 => e[1] = 1,
        _ => e[4] = 1,
    }
    for j in 1..3 {
        if nu[j] >= 1 {
            e[1 + j] = 1;
        }
        if nu[j] >= 2 {
            e[4 + j] = 1;
        }
    }
    e
}

#[test]
fn xn_zero_pattern_matches_closed_form() {
    for n in 3..=5 {
        let v = builtin_xn(n).unwrap();
        let bound = if n == 5 { 5 } else { 7 };
        let s = series_truncate(&v, &vec![0; 2 * n + 1], bound).unwrap();
        assert_eq!(s.vars, n);
        for (d, p) in &s.coeffs {
            let k = d[0];
            assert!(d.iter().all(|&x| x == k), "off-diagonal {d:?}");
            let want = if k == 0 { RhoPolynomial::monomial(0, 1) } else { RhoPolynomial::monomial(k - 1, 1).mul(&RhoPolynomial::from_coeffs(vec![-1, 1])) };
            assert_eq!(p, &want);
        }
        assert_eq!(s.coeffs.len(), bound as usize + 1);
    }
}

#[test]
fn dp6a2_formula_matches_expansion_on_box_ten() {
    let v = builtin_dp6a2();
    for code in 0..27u32 {
        let nu = [code % 3, code / 3 % 3, code / 9];
        let e = dp6_pattern(nu);
        assert_eq!(ExponentForm::new(&v, &e).unwrap().offsets, nu.map(i64::from).to_vec());
        let g = times_dp6a2_numerator(&series_truncate(&v, &e, 10).unwrap());
        for d1 in 0..=10 {
            for d2 in 0..=10 {
                for d3 in 0..=10 {
                    assert_eq!(g.coeff(&[d1, d2, d3]).unwrap(), dp6a2_coeff(nu, [d1, d2, d3]), "nu={nu:?} d=({d1},{d2},{d3})");
                }
            }
        }
        // The product is a polynomial: nothing survives past the vanishing bounds.
        let gap = |a: u32, b: u32| a.abs_diff(b);
        for d in g.coeffs.keys() {
            assert!(d[0] < 5 + gap(nu[1], nu[0]) + gap(nu[2], nu[0]));
            assert!(d[1] < 7 + gap(nu[0], nu[1]) + gap(nu[2], nu[1]));
            assert!(d[2] < 7 + gap(nu[0], nu[2]) + gap(nu[1], nu[2]));
        }
    }
}

#[test]
fn dp6a2_listed_coefficients_vanish() {
    for d in [[0, 0, 1], [0, 1, 0], [0, 1, 1], [1, 0, 0]] {
        assert!(dp6a2_coeff([0, 0, 0], d).is_zero());
    }
}

fn exact_matches_truncation(v: &VarietyDescriptor, bound: u32) {
    let n = v.coord_count();
    for mask in 0..1u32 << n {
        let e = pattern(mask, n);
        let hist = exponent_histogram(v, &e, bound).unwrap();
        let vars = ExponentForm::new(v, &e).unwrap().vars();
        for q in [2u64, 3, 4, 5] {
            let exact = exact_ftilde_at(v, &e, q).unwrap();
            let truncated = evaluate_histogram(&hist, q, vars);
            assert!(within_tail_bound(&(&exact - &truncated), q, bound), "{} e={e:?} q={q}", v.name);
        }
    }
}

#[test]
fn exact_values_within_tail_bound_x3_x4() {
    exact_matches_truncation(&builtin_xn(3).unwrap(), 14);
    exact_matches_truncation(&builtin_xn(4).unwrap(), 10);
}

#[test]
fn exact_values_within_tail_bound_dp6a2() {
    exact_matches_truncation(&builtin_dp6a2(), 16);
}

#[test]
fn x3_value_at_two() {
    let v = builtin_xn(3).unwrap();
    assert_eq!(exact_ftilde_at(&v, &[0; 7], 2).unwrap(), frac(7, 6));
    assert_eq!(local_factor(&v, &[0; 7], 2).unwrap(), frac(7, 6));
}

#[test]
fn degree_bounds() {
    let v = builtin_xn(3).unwrap();
    for mask in 0..1u32 << 7 {
        let c = check_degree_bounds(&series_truncate(&v, &pattern(mask, 7), 6).unwrap(), &v).unwrap();
        assert!(c.pass, "X_3 e={mask:b}: {c:?}");
    }
    let d = builtin_dp6a2();
    for mask in 0..1u32 << 7 {
        let c = check_degree_bounds(&series_truncate(&d, &pattern(mask, 7), 8).unwrap(), &d).unwrap();
        assert!(c.pass, "dP6 e={mask:b}: {c:?}");
    }
    let c = check_degree_bounds(&series_truncate(&d, &dp6_pattern([0, 1, 1]), 8).unwrap(), &d).unwrap();
    assert_eq!(c.half_bound, Some(true));
    assert!(c.max_excess.unwrap() <= 0);
    let c0 = check_degree_bounds(&series_truncate(&d, &[0; 7], 8).unwrap(), &d).unwrap();
    assert_eq!(c0.growth, Some(true));
}

#[test]
fn convergence_certificates() {
    for n in 3..=5 {
        let r = convergence_certificate(&builtin_xn(n).unwrap()).unwrap();
        assert!(r.pass, "n={n}: {r:?}");
        assert!(r.checked > 0);
    }
    assert!(convergence_certificate(&builtin_dp6a2()).unwrap().pass);
}

#[test]
fn local_identity_holds() {
    let r = check_local_identity(&builtin_xn(3).unwrap(), 2).unwrap();
    assert_eq!((r.l1.clone(), r.l2.clone(), r.r.clone()), (frac(13, 64), frac(13, 64), frac(13, 64)));
    for (v, qs) in [
        (builtin_xn(3).unwrap(), vec![3u64, 4, 5, 7]),
        (builtin_xn(4).unwrap(), vec![2, 3]),
        (builtin_dp6a2(), vec![2, 3, 4, 5]),
    ] {
        for q in qs {
            let r = check_local_identity(&v, q).unwrap();
            assert!(r.pass, "{} q={q}: {r:?}", v.name);
        }
    }
}

#[test]
fn densities_by_strata_and_brute_force() {
    for v in [builtin_xn(3).unwrap(), builtin_dp6a2()] {
        for mask in (0..1u32 << 7).step_by(5) {
            let e = pattern(mask, 7);
            for q in [2u64, 3] {
                assert_eq!(local_density(&v, &e, q).unwrap(), local_density_brute(&v, &e, q).unwrap());
            }
        }
    }
    // With x_0 fixed to 0 only the bilinear form remains: N_3(2) / 2^6.
    let mut e = vec![0; 7];
    e[0] = 1;
    assert_eq!(local_density(&builtin_xn(3).unwrap(), &e, 2).unwrap(), frac(36, 64));
}

#[test]
fn bilinear_counts_follow_the_recurrence() {
    assert_eq!(count_bilinear_brute(1, 2), Some(3));
    for q in [2u64, 3, 4, 5] {
        let mut prev = BigInt::from(count_bilinear_brute(1, q).unwrap());
        for n in 2..=4u32 {
            let next = BigInt::from(q) * &prev + BigInt::from(q - 1) * BigInt::from(q).pow(2 * n - 2);
            let closed = BigInt::from(q).pow(2 * n - 1) + BigInt::from(q).pow(n) - BigInt::from(q).pow(n - 1);
            assert_eq!(next, closed);
            assert_eq!(count_bilinear(n, q), closed);
            if n <= 3 {
                assert_eq!(BigInt::from(count_bilinear_brute(n, q).unwrap()), closed);
            }
            prev = next;
        }
    }
}

#[test]
fn dump_shape() {
    let v = builtin_xn(3).unwrap();
    let j = series_truncate(&v, &[0; 7], 2).unwrap().to_json();
    assert_eq!(j["box"], 2);
    assert_eq!(j["e"].as_array().unwrap().len(), 7);
    assert_eq!(j["coeffs"][1]["d"], serde_json::json!([1, 1, 1]));
    assert_eq!(j["coeffs"][1]["rho_poly"], serde_json::json!([-1, 1]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Summing the coefficients of prod (1 - t_i) F below d recovers rho^{phi(d)}.
    #[test]
    fn partial_sums_recover_the_exponent(mask in 0u32..128, d in proptest::collection::vec(0u32..6, 3), dp6 in any::<bool>()) {
        let v = if dp6 { builtin_dp6a2() } else { builtin_xn(3).unwrap() };
        let e = pattern(mask, 7);
        let s = series_truncate(&v, &e, 5).unwrap();
        let mut acc = RhoPolynomial::zero();
        for a in 0..=d[0] { for b in 0..=d[1] { for c in 0..=d[2] {
            acc = acc.add(&s.coeff(&[a, b, c]).unwrap());
        }}}
        let phi = ExponentForm::new(&v, &e).unwrap().phi(&d);
        prop_assert_eq!(acc, RhoPolynomial::monomial(phi as u32, 1));
    }

    #[test]
    fn exact_value_dominates_partial_sums(mask in 0u32..128, q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9]), dp6 in any::<bool>()) {
        let v = if dp6 { builtin_dp6a2() } else { builtin_xn(3).unwrap() };
        let e = pattern(mask, 7);
        let exact = exact_ftilde_at(&v, &e, q).unwrap();
        prop_assert!(exact > BigRational::from_integer(0.into()));
        let t = truncated_ftilde_at(&v, &e, q, 8).unwrap();
        prop_assert!(t <= exact);
        prop_assert!(exact <= int(2) * (BigRational::one() + qpow(q, 2)));
    }
}
