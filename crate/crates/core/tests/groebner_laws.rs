mod common;

use chernlab_core::automorphism::RingAutomorphism;
use chernlab_core::groebner::{GroebnerBasis, ModuleOrderKind, ModuleSpace};
use chernlab_core::ideal::{poly_gcd, poly_lcm, Ideal};
use chernlab_core::poly::Polynomial;
use common::*;
use proptest::prelude::*;

fn gb_of(r: &chernlab_core::ring::RingRef, gens: &[Polynomial]) -> GroebnerBasis {
    let sp = ModuleSpace::new(r, 1, ModuleOrderKind::PositionOverTerm);
    let vs: Vec<_> = gens.iter().map(|g| sp.vector(std::slice::from_ref(g))).collect();
    GroebnerBasis::compute(&sp, &vs).unwrap()
}

fn field_and_vars() -> impl Strategy<Value = (u64, usize)> {
    (prop::sample::select(vec![2u64, 5, 101]), 2usize..=3)
}

proptest! {
    #![proptest_config(cases(48))]

    #[test]
    fn basis_is_idempotent_and_closed(
        (p, n) in field_and_vars(),
        raw in prop::collection::vec(terms(3, 3, 4), 1..=3),
    ) {
        let r = ring(p, n);
        let gens: Vec<Polynomial> = raw.iter().map(|t| build(&r, &t.iter().map(|(c, e)| (*c, e[..n].to_vec())).collect())).collect();
        let i = Ideal::from_gens(&r, gens.clone());
        let g = i.groebner_basis().unwrap();
        prop_assert!(gb_of(&r, &g).verify());
        let again = Ideal::from_gens(&r, g.clone()).groebner_basis().unwrap();
        prop_assert_eq!(&again, &g);
        for f in &gens {
            prop_assert!(i.contains(f).unwrap());
        }
    }

    #[test]
    fn membership_is_sound(
        (p, n) in field_and_vars(),
        raw in prop::collection::vec(terms(3, 3, 3), 1..=3),
        mult in prop::collection::vec(terms(3, 2, 3), 3),
        probe in terms(3, 4, 5),
    ) {
        let r = ring(p, n);
        let cut = |t: &Terms| -> Terms { t.iter().map(|(c, e)| (*c, e[..n].to_vec())).collect() };
        let gens: Vec<Polynomial> = raw.iter().map(|t| build(&r, &cut(t))).collect();
        let i = Ideal::from_gens(&r, gens.clone());
        let mut combo = Polynomial::zero(&r);
        for (g, m) in gens.iter().zip(&mult) {
            combo = &combo + &(g * &build(&r, &cut(m)));
        }
        prop_assert!(i.contains(&combo).unwrap());
        let f = build(&r, &cut(&probe));
        let nf = i.normal_form(&f).unwrap();
        prop_assert!(i.contains(&(&f - &nf)).unwrap());
        prop_assert_eq!(i.normal_form(&nf).unwrap(), nf.clone());
        prop_assert_eq!(i.contains(&f).unwrap(), nf.is_zero());
    }

    #[test]
    fn gcd_laws(a in terms(2, 3, 3), b in terms(2, 3, 3), h in terms(2, 2, 3)) {
        let r = ring(7, 2);
        let (f, g, h) = (nonzero(&r, &a), nonzero(&r, &b), nonzero(&r, &h));
        let d = poly_gcd(&f, &g).unwrap();
        prop_assert!(d.divides(&f) && d.divides(&g));
        let scaled = poly_gcd(&(&f * &h), &(&g * &h)).unwrap();
        prop_assert!(scaled.is_associate(&(&d * &h)));
        let l = poly_lcm(&f, &g).unwrap();
        prop_assert!((&d * &l).is_associate(&(&f * &g)));
        prop_assert!(poly_gcd(&f, &g).unwrap().is_associate(&poly_gcd(&g, &f).unwrap()));
    }

    #[test]
    fn automorphisms_respect_the_ring_structure(
        a in terms(2, 3, 4),
        b in terms(2, 3, 4),
        units in prop::collection::vec(1u32..5, 2),
    ) {
        let r = ring(5, 2);
        let (f, g) = (build(&r, &a), build(&r, &b));
        let sigma = RingAutomorphism::twist(&r, &units).unwrap();
        prop_assert_eq!(sigma.apply(&(&f * &g)), &sigma.apply(&f) * &sigma.apply(&g));
        prop_assert_eq!(sigma.apply(&(&f + &g)), &sigma.apply(&f) + &sigma.apply(&g));
        prop_assert_eq!(sigma.inverse().apply(&sigma.apply(&f)), f.clone());
        prop_assert!(sigma.compose(&sigma.inverse()).is_identity());
    }
}

#[test]
fn degree_falls_do_not_inflate_syzygies() {
    // 26 points' worth of affine generators; the quotients below used to
    // overrun the degree ceiling through cofactor growth
    let r = ring(101, 2);
    let gens = point_power_ideal(&r, &[(9, 72, 2), (22, 32, 1), (32, 98, 2)]);
    let i = Ideal::from_gens(&r, gens);
    let p = Ideal::parse(&r, &["x1 - 22", "x2 - 32"]).unwrap();
    let sat = i.saturation(&p).unwrap();
    let rest = Ideal::from_gens(&r, point_power_ideal(&r, &[(9, 72, 2), (32, 98, 2)]));
    assert!(sat.equals(&rest).unwrap());
}
