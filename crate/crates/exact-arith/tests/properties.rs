use exact_arith::{factor, field_make, FiniteField, FqPoly};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn fields() -> Vec<Arc<FiniteField>> {
    [(2, 1), (3, 1), (2, 2), (5, 1), (3, 2), (2, 3), (7, 1), (1021, 1), (31, 2)]
        .iter()
        .map(|&(p, f)| Arc::new(field_make(p, f).unwrap()))
        .collect()
}

proptest! {
    #[test]
    fn field_axioms(idx in 0usize..9, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let k = &fields()[idx];
        let q = k.order();
        let (a, b, c) = (a % q, b % q, c % q);
        prop_assert_eq!(k.add(k.add(a, b), c), k.add(a, k.add(b, c)));
        prop_assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
        prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
        prop_assert_eq!(k.add(a, b), k.add(b, a));
        prop_assert_eq!(k.mul(a, b), k.mul(b, a));
        if a != 0 {
            prop_assert_eq!(k.mul(a, k.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn gcd_divides_and_is_greatest(idx in 0usize..3, seed in any::<u64>()) {
        let k = fields()[idx].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rand_poly = |d: usize| {
            FqPoly::new(k.clone(), (0..=d).map(|_| rng.gen_range(0..k.order())).collect())
        };
        let common = rand_poly(2);
        let a = rand_poly(4).mul(&common).unwrap();
        let b = rand_poly(3).mul(&common).unwrap();
        let g = a.gcd(&b).unwrap();
        prop_assume!(!g.is_zero());
        prop_assert!(g.is_monic());
        prop_assert!(g.divides(&a).unwrap() && g.divides(&b).unwrap());
        if !common.is_zero() {
            prop_assert!(common.divides(&g).unwrap());
        }
    }
}

#[test]
fn factorization_reassembles_random_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (p, f) in [(2u64, 1u32), (3, 1), (2, 2)] {
        let k = Arc::new(field_make(p, f).unwrap());
        let mut done = 0;
        while done < 200 {
            let d = rng.gen_range(0..=8);
            let c: Vec<u32> = (0..=d).map(|_| rng.gen_range(0..k.order())).collect();
            let poly = FqPoly::new(k.clone(), c);
            if poly.is_zero() {
                continue;
            }
            let fz = factor(&poly).unwrap();
            assert_eq!(fz.expand(&k), poly);
            for (g, m) in &fz.factors {
                assert!(exact_arith::is_irreducible(g) && g.is_monic() && *m >= 1);
            }
            done += 1;
        }
    }
}
