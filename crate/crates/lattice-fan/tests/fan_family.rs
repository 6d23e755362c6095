use lattice_fan::gale::gale_data_sigma_n;
use lattice_fan::{
    build_sigma_n, check_fan, enumerate_dual_points, family_rank, CheckConfig, Cone, LowerBound, PicVector,
};
use proptest::prelude::*;

#[test]
fn sigma_n_certificates_for_small_n() {
    for n in 3..=6 {
        let fan = build_sigma_n(n).unwrap();
        assert_eq!(fan.cones.len(), 1 + n + n * (n - 1));
        assert_eq!(fan.rays.len(), 2 * n + 1);
        let cert = check_fan(&fan, Some(&gale_data_sigma_n(n)), &CheckConfig::default()).unwrap();
        assert!(cert.all_pass(), "n={n}: {:?}", cert.failures);
        assert_eq!(cert.samples_checked, 10_000);
    }
}

#[test]
fn rank_of_mixed_families() {
    for n in 3..=6usize {
        for m1 in 0u32..(1 << n) {
            for m2 in 0u32..(1 << n) {
                let i1: Vec<usize> = (1..=n).filter(|i| m1 >> (i - 1) & 1 == 1).collect();
                let i2: Vec<usize> = (1..=n).filter(|i| m2 >> (i - 1) & 1 == 1).collect();
                let union = (m1 | m2).count_ones() as usize;
                let mut want = if m1 & m2 == 0 { union } else { (union + 1).min(n) };
                // f_k = -sum_{j != k} g_j: the one dependent disjoint family.
                if m2.count_ones() == 1 && m1 | m2 == (1 << n) - 1 && m1 & m2 == 0 {
                    want = n - 1;
                }
                assert_eq!(family_rank(n, &i1, &i2), want, "n={n} {i1:?} {i2:?}");
            }
        }
    }
}

fn nested_loop_count(k: &[i64], m: i64) -> usize {
    // Dual cone of the orthant is the orthant.
    fn go(k: &[i64], rest: i64) -> usize {
        match k {
            [] => (rest == 0) as usize,
            [a, tail @ ..] => (0..=rest / a).map(|y| go(tail, rest - a * y)).sum(),
        }
    }
    go(k, m)
}

#[test]
fn dual_points_match_nested_loops() {
    for n in 3..=5usize {
        let mut k = vec![n as i64 - 1; n + 1];
        k[0] = n as i64;
        let eff = Cone::orthant(n + 1);
        let anti_k = PicVector(k.clone());
        let counts: Vec<usize> = (0..=16)
            .map(|m| enumerate_dual_points(&eff, &anti_k, m, &[]).unwrap().len())
            .collect();
        for (m, &c) in counts.iter().enumerate() {
            assert_eq!(c, nested_loop_count(&k, m as i64), "n={n} m={m}");
        }
        // Adding a dual ray u injects level m into level m + <u, -K>.
        for &step in &k {
            for m in 0..counts.len() - step as usize {
                assert!(counts[m + step as usize] >= counts[m], "n={n} m={m} step={step}");
            }
        }
    }
}

proptest! {
    #[test]
    fn extra_bounds_only_remove_points(m in 0i64..10, c in 0usize..4, b in -2i64..3) {
        let eff = Cone::orthant(4);
        let k = PicVector(vec![3, 2, 2, 2]);
        let all = enumerate_dual_points(&eff, &k, m, &[]).unwrap();
        let lb = LowerBound { class: PicVector::basis(4, c), bound: b };
        let some = enumerate_dual_points(&eff, &k, m, &[lb]).unwrap();
        prop_assert!(some.iter().all(|y| all.contains(y) && y[c] >= b));
        prop_assert_eq!(some.len(), all.iter().filter(|y| y[c] >= b).count());
    }

    #[test]
    fn generators_are_members(gens in prop::collection::vec(prop::collection::vec(-3i64..4, 3), 1..5)) {
        prop_assume!(gens.iter().all(|g| g.iter().any(|&x| x != 0)));
        let cone = Cone::new(3, gens.clone()).unwrap();
        for g in &gens {
            let q: Vec<_> = g.iter().map(|&x| exact_arith::rational::int(x)).collect();
            prop_assert!(cone.contains(&q).unwrap());
        }
    }
}
