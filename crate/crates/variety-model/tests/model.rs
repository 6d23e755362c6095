use lattice_fan::gale::projectivity_witness;
use proptest::prelude::*;
use variety_model::{
    builtin_dp6a2, builtin_xn, is_f_face, mu0, rlv_and_incidence, xn_intersection_readings, IncidenceSource, PicVector,
};

#[test]
fn git_route_matches_fan_route() {
    for n in 3..=4 {
        let v = builtin_xn(n).unwrap();
        let fan_inc = rlv_and_incidence(&v).unwrap();
        let mut w = v.clone();
        w.incidence = Some(IncidenceSource::Ample(PicVector(projectivity_witness(n))));
        let git_inc = rlv_and_incidence(&w).unwrap();
        assert_eq!(fan_inc.rlv, git_inc.rlv, "n={n}");
    }
}

#[test]
fn dp6a2_ample_class_is_generic() {
    let v = builtin_dp6a2();
    let base = rlv_and_incidence(&v).unwrap().rlv;
    for k in 0..4 {
        for sgn in [-1, 1] {
            let mut w: Vec<i64> = v.clone().incidence.map(|s| match s {
                IncidenceSource::Ample(w) => w.0,
                _ => unreachable!(),
            }).unwrap();
            for c in w.iter_mut() {
                *c *= 100;
            }
            w[k] += sgn;
            let mut p = v.clone();
            p.incidence = Some(IncidenceSource::Ample(PicVector(w)));
            assert_eq!(rlv_and_incidence(&p).unwrap().rlv, base);
        }
    }
}

#[test]
fn mu0_identity_exhaustive() {
    for v in [builtin_xn(3).unwrap(), builtin_xn(4).unwrap(), builtin_xn(5).unwrap(), builtin_dp6a2()] {
        let inc = rlv_and_incidence(&v).unwrap();
        let mu = mu0(&inc);
        assert!(mu.verify(&inc), "{}", v.name);
    }
}

#[test]
fn relation_monomials_have_degree_d_tot() {
    for v in [builtin_xn(3).unwrap(), builtin_xn(6).unwrap(), builtin_dp6a2()] {
        let d = v.d_tot();
        for m in v.monomials() {
            let mut deg = PicVector::zero(v.pic_rank());
            for (k, e) in m {
                deg = deg.add(&v.degree(k).scale(e as i64));
            }
            assert_eq!(deg, d);
        }
    }
}

#[test]
fn intersection_readings_for_xn() {
    for n in 3..=5 {
        let v = builtin_xn(n).unwrap();
        let inc = rlv_and_incidence(&v).unwrap();
        let readings = xn_intersection_readings(&v, &inc);
        // The intersection of all F_i and G_i is empty; the G_i alone meet.
        assert!(readings[0].1);
        assert!(!readings[2].1);
        assert!(readings[1].1);
        assert!(!readings[3].1);
    }
}

proptest! {
    #[test]
    fn f_face_rule(mask in 0u32..(1 << 7)) {
        let v = builtin_xn(3).unwrap();
        let surviving = (1..=3).filter(|&i| mask >> i & 1 == 1 && mask >> (3 + i) & 1 == 1).count();
        prop_assert_eq!(is_f_face(&v, mask), surviving != 1);
    }

    #[test]
    fn incidence_is_monotone(a in 0u32..(1 << 7), b in 0u32..(1 << 7)) {
        let v = builtin_dp6a2();
        let inc = rlv_and_incidence(&v).unwrap();
        if inc.holds(a | b) {
            prop_assert!(inc.holds(a) && inc.holds(b));
        }
    }
}
