use chernlab::oracle::{ideal_dimension, macaulay_membership, module_dimension, monomials_up_to, primary_length};
use chernlab_core::error::AlgebraError;
use chernlab_core::ideal::Ideal;
use chernlab_core::invariants::{local_length, PrimeCertificate};
use chernlab_core::matrix::Matrix;
use chernlab_core::module::PresentedModule;
use chernlab_core::poly::Polynomial;
use chernlab_core::ring::{Ring, RingRef, RingSpec};
use proptest::prelude::*;

fn ring(p: u64, n: usize) -> RingRef {
    Ring::new(RingSpec::grevlex(p, n)).unwrap()
}

fn ideal(r: &RingRef, gens: &[&str]) -> Ideal {
    Ideal::parse(r, gens).unwrap()
}

fn point(r: &RingRef, a: u32, b: u32) -> PrimeCertificate {
    PrimeCertificate::parse(r, &[&format!("x1 - {a}"), &format!("x2 - {b}")]).unwrap()
}

#[test]
fn staircase_dimension() {
    let r = ring(5, 2);
    let i = ideal(&r, &["x1^2", "x1*x2", "x2^3"]);
    assert_eq!(ideal_dimension(&i).unwrap(), 4);
    assert_eq!(i.standard_monomials(1 << 10).unwrap().map(|m| m.len()), Some(4));
    assert_eq!(module_dimension(&PresentedModule::cyclic(&i)).unwrap(), 4);
}

#[test]
fn membership_by_linear_algebra() {
    let r = ring(5, 2);
    let p = |s: &str| Polynomial::parse(&r, s).unwrap();
    assert_eq!(macaulay_membership(&r, &[p("x1^2")], &p("x1^3"), 4), Some(true));
    assert_eq!(macaulay_membership(&r, &[p("x1^2")], &p("x1*x2"), 4), Some(false));
    assert_eq!(macaulay_membership(&r, &[p("x1^2")], &p("x1^5"), 4), None);
    // x2 = x2 (x1 x2 + 1) - x1 x2^2 needs degree 3
    let gens = [p("x1*x2 + 1"), p("x2^2")];
    assert_eq!(macaulay_membership(&r, &gens, &p("x2"), 2), Some(false));
    assert_eq!(macaulay_membership(&r, &gens, &p("x2"), 3), Some(true));
}

#[test]
fn positive_dimensional_quotients_are_rejected() {
    let r = ring(5, 2);
    let e = ideal_dimension(&ideal(&r, &["x1"])).unwrap_err();
    assert!(matches!(e, AlgebraError::Unbounded(_)));
    assert!(module_dimension(&PresentedModule::free(&r, 1)).is_err());
}

#[test]
fn lengths_of_point_modules() {
    let r = ring(7, 2);
    let m = PresentedModule::cyclic(&ideal(&r, &["x1^2", "x2^2"]));
    assert_eq!(primary_length(&m, &point(&r, 0, 0)).unwrap(), 4);
    assert_eq!(primary_length(&m, &point(&r, 0, 1)).unwrap(), 0);
    let q = PresentedModule::cyclic(&ideal(&r, &["x1^2", "x2 - 1"]));
    assert_eq!(primary_length(&q, &point(&r, 0, 1)).unwrap(), 2);
    // a degree-two point over F_7: x1^2 - 3 has no root
    let quad = PrimeCertificate::parse(&r, &["x1^2 - 3", "x2"]).unwrap();
    let n = PresentedModule::cyclic(&ideal(&r, &["x1^2 - 3", "x2^2"]));
    assert_eq!(primary_length(&n, &quad).unwrap(), 2);
    assert_eq!(local_length(&n, &quad).unwrap(), Some(2));
}

#[test]
fn monomial_enumeration_counts() {
    // C(d + n, n) monomials of degree at most d
    assert_eq!(monomials_up_to(2, 4).len(), 15);
    assert_eq!(monomials_up_to(3, 3).len(), 20);
    let seen: std::collections::HashSet<_> = monomials_up_to(3, 4).into_iter().collect();
    assert_eq!(seen.len(), 35);
}

fn local_module(r: &RingRef, pts: &[(u32, u32, u32)], rank: usize) -> PresentedModule {
    let x = |a: u32| &Polynomial::var(r, 0) - &Polynomial::constant(r, a as i64);
    let y = |b: u32| &Polynomial::var(r, 1) - &Polynomial::constant(r, b as i64);
    let mut j = Ideal::unit(r);
    for &(a, b, e) in pts {
        j = j.product(&Ideal::from_gens(r, vec![x(a), y(b)]).power(e));
    }
    let mut cols = Vec::new();
    for i in 0..rank {
        for g in j.generators() {
            let mut c = vec![Polynomial::zero(r); rank];
            c[i] = g.clone();
            cols.push(c);
        }
    }
    // glue the summands together with one extra relation
    if rank == 2 {
        cols.push(vec![x(pts[0].0), y(pts[0].1)]);
    }
    PresentedModule::new(Matrix::from_columns(r, rank, &cols))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn engine_lengths_match_the_filtration(
        pts in prop::collection::vec((0u32..5, 0u32..5, 1u32..=2), 1..=3),
        rank in 1usize..=2,
        probe in (0u32..5, 0u32..5),
    ) {
        let r = ring(5, 2);
        let m = local_module(&r, &pts, rank);
        let mut total = 0;
        let mut probes: Vec<(u32, u32)> = pts.iter().map(|p| (p.0, p.1)).collect();
        probes.sort();
        probes.dedup();
        for &(a, b) in &probes {
            let p = point(&r, a, b);
            let brute = primary_length(&m, &p).unwrap();
            prop_assert_eq!(local_length(&m, &p).unwrap(), Some(brute));
            total += brute;
        }
        prop_assert_eq!(total, module_dimension(&m).unwrap());
        prop_assert_eq!(Some(total), m.dim_k().unwrap());
        if !probes.contains(&probe) {
            prop_assert_eq!(primary_length(&m, &point(&r, probe.0, probe.1)).unwrap(), 0);
        }
    }

    #[test]
    fn oracle_and_engine_agree_on_membership(
        a in prop::collection::vec(((0u16..=2, 0u16..=2), 1u32..5), 1..=3),
        b in prop::collection::vec(((0u16..=2, 0u16..=2), 1u32..5), 1..=3),
    ) {
        let r = ring(5, 2);
        let build = |t: &[((u16, u16), u32)]| {
            let mut f = Polynomial::zero(&r);
            for &((i, j), c) in t {
                let m = &Polynomial::var(&r, 0).pow(i as u32) * &Polynomial::var(&r, 1).pow(j as u32);
                f = &f + &m.scale(c);
            }
            f
        };
        let gens = [build(&a), build(&b)];
        let i = Ideal::from_gens(&r, gens.to_vec());
        for m in monomials_up_to(2, 5) {
            let f = Polynomial::monomial(&r, m, 1);
            let engine = i.contains(&f).unwrap();
            let oracle = macaulay_membership(&r, &gens, &f, 8).unwrap();
            // the oracle can only miss memberships that need a higher degree
            prop_assert!(!oracle || engine);
            if !engine {
                prop_assert!(!oracle);
            }
        }
    }
}
