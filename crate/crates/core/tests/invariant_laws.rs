mod common;

use chernlab_core::invariants::{
    char_class_c1, chern_t2, is_free_at, local_length, pseudo_null_part, support_codim, PrimeCertificate,
};
use chernlab_core::module::{ext, PresentedModule};
use chernlab_core::ring::RingRef;
use common::*;
use proptest::prelude::*;

fn point(r: &RingRef, a: u32, b: u32) -> PrimeCertificate {
    PrimeCertificate::parse(r, &[&format!("x1 - {a}"), &format!("x2 - {b}")]).unwrap()
}

fn finite(r: &RingRef, pts: &[(u32, u32, u32)]) -> PresentedModule {
    PresentedModule::new(row(r, &point_power_ideal(r, pts)))
}

fn all_points(r: &RingRef, pts: &[(u32, u32, u32)]) -> Vec<PrimeCertificate> {
    let mut out: Vec<PrimeCertificate> = Vec::new();
    for &(a, b, _) in pts {
        let p = point(r, a, b);
        if !out.iter().any(|q| q.key() == p.key()) {
            out.push(p);
        }
    }
    out
}

fn points() -> impl Strategy<Value = Vec<(u32, u32, u32)>> {
    prop::collection::vec((0u32..5, 0u32..5, 1u32..=2), 1..=3)
}

proptest! {
    #![proptest_config(cases(24))]

    #[test]
    fn c1_is_additive(a in terms(2, 2, 3), b in terms(2, 2, 3), free in 0usize..=1) {
        let r = ring(7, 2);
        let (f, g) = (nonzero(&r, &a), nonzero(&r, &b));
        let m = PresentedModule::new(row(&r, std::slice::from_ref(&f)));
        let n = PresentedModule::new(row(&r, std::slice::from_ref(&g)));
        let sum = m.direct_sum(&n).direct_sum(&PresentedModule::free(&r, free));
        let c = char_class_c1(&sum).unwrap();
        prop_assert!(c.principal_rep().unwrap().is_associate(&(&f * &g)));
        let cm = char_class_c1(&m).unwrap();
        prop_assert!(cm.principal_rep().unwrap().is_associate(&f));
    }

    #[test]
    fn t2_is_additive(p in points(), q in points()) {
        let r = ring(5, 2);
        let (m, n) = (finite(&r, &p), finite(&r, &q));
        let mut primes = all_points(&r, &p);
        for c in all_points(&r, &q) {
            if !primes.iter().any(|x| x.key() == c.key()) {
                primes.push(c);
            }
        }
        let whole = chern_t2(&m.direct_sum(&n), &primes).unwrap();
        let parts = chern_t2(&m, &primes).unwrap().plus(&chern_t2(&n, &primes).unwrap());
        prop_assert!(whole.same_as(&parts));
        // a free summand contributes nothing in codimension two
        let padded = chern_t2(&m.direct_sum(&PresentedModule::free(&r, 1)), &primes).unwrap();
        prop_assert!(padded.same_as(&chern_t2(&m, &primes).unwrap()));
    }

    #[test]
    fn biduality_preserves_t2(p in points()) {
        let r = ring(5, 2);
        let m = finite(&r, &p);
        let primes = all_points(&r, &p);
        let e = ext(2, &m, None).unwrap();
        let ee = ext(2, &e, None).unwrap();
        let t = chern_t2(&m, &primes).unwrap();
        prop_assert!(chern_t2(&e, &primes).unwrap().same_as(&t));
        prop_assert!(chern_t2(&ee, &primes).unwrap().same_as(&t));
        prop_assert_eq!(ee.dim_k().unwrap(), m.dim_k().unwrap());
    }

    #[test]
    fn lengths_add_up(p in points()) {
        let r = ring(5, 2);
        let m = finite(&r, &p);
        let total: u64 = all_points(&r, &p).iter().map(|q| local_length(&m, q).unwrap().unwrap()).sum();
        prop_assert_eq!(Some(total), m.dim_k().unwrap());
        prop_assert_eq!(support_codim(&m).unwrap(), 2);
        prop_assert_eq!(pseudo_null_part(&m).unwrap().module.dim_k().unwrap(), m.dim_k().unwrap());
    }

    #[test]
    fn freeness_is_detected(a in 0u32..5, b in 0u32..5, f in terms(2, 2, 3), l in 1usize..=2) {
        let r = ring(5, 2);
        let f = nonzero(&r, &f);
        let m = PresentedModule::free(&r, l).direct_sum(&PresentedModule::new(row(&r, std::slice::from_ref(&f))));
        let p = point(&r, a, b);
        prop_assert_eq!(is_free_at(&m, &p, l).unwrap(), f.evaluate(&[a, b]) != 0);
        prop_assert!(!is_free_at(&m, &p, l + 1).unwrap());
    }
}

#[test]
fn embedded_point_on_a_curve() {
    // R/(x^2, xy): the line x = 0 with an embedded point at the origin
    let r = ring(5, 2);
    let m = PresentedModule::new(row(&r, &[poly(&r, "x1^2"), poly(&r, "x1*x2")]));
    let t2 = pseudo_null_part(&m).unwrap().module;
    assert_eq!(t2.dim_k().unwrap(), Some(1));
    let origin = point(&r, 0, 0);
    assert_eq!(local_length(&t2, &origin).unwrap(), Some(1));
    assert_eq!(local_length(&m, &origin).unwrap(), None);
    assert_eq!(local_length(&m, &point(&r, 1, 1)).unwrap(), Some(0));
    let c = char_class_c1(&m).unwrap();
    assert!(c.principal_rep().unwrap().is_associate(&poly(&r, "x1")));
}
