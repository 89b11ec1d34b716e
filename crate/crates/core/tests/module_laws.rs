mod common;

use chernlab_core::automorphism::RingAutomorphism;
use chernlab_core::ideal::Ideal;
use chernlab_core::matrix::Matrix;
use chernlab_core::module::{
    exterior_power, ext, fitting_ideal, free_resolution, lift, prune, syzygies, PresentedModule,
};
use chernlab_core::poly::Polynomial;
use chernlab_core::ring::RingRef;
use common::*;
use proptest::prelude::*;

fn matrix(r: &RingRef, rows: usize, cols: usize, raw: &[Terms]) -> Matrix {
    let cells: Vec<Vec<Polynomial>> = (0..cols)
        .map(|j| (0..rows).map(|i| build(r, &raw[(i * cols + j) % raw.len()])).collect())
        .collect();
    Matrix::from_columns(r, rows, &cells)
}

fn points() -> impl Strategy<Value = Vec<(u32, u32, u32)>> {
    prop::collection::vec((0u32..7, 0u32..7, 1u32..=2), 1..=3)
}

proptest! {
    #![proptest_config(cases(32))]

    #[test]
    fn syzygies_and_lifts(raw in prop::collection::vec(terms(2, 2, 3), 6), mult in prop::collection::vec(terms(2, 2, 2), 3)) {
        let r = ring(7, 2);
        let a = matrix(&r, 2, 3, &raw);
        let s = syzygies(&a).unwrap();
        prop_assert!(a.mul(&s).is_zero());
        let c = matrix(&r, 3, 1, &mult);
        let b = a.mul(&c);
        let x = lift(&a, &b).unwrap().expect("image vector must lift");
        prop_assert_eq!(a.mul(&x), b);
    }

    #[test]
    fn fitting_ideals_ignore_the_presentation(
        raw in prop::collection::vec(terms(2, 2, 3), 4),
        extra in prop::collection::vec(terms(2, 1, 2), 2),
        scalar in 1u32..7,
    ) {
        let r = ring(7, 2);
        let a = matrix(&r, 2, 2, &raw);
        let m = PresentedModule::new(a.clone());
        // a combination column, a rescaled column and an elementary row operation
        let combo = a.mul(&matrix(&r, 2, 1, &extra));
        let mut b = a.hcat(&combo);
        b.set(0, 0, &b.get(0, 0).clone() * &Polynomial::constant(&r, scalar as i64));
        b.set(1, 0, &b.get(1, 0).clone() * &Polynomial::constant(&r, scalar as i64));
        let shear = {
            let t = build(&r, &extra[0]);
            let mut e = Matrix::identity(&r, 2);
            e.set(0, 1, t);
            e
        };
        let alt = PresentedModule::new(shear.mul(&b));
        for k in 0..=2 {
            prop_assert_eq!(
                fitting_ideal(k, &m).groebner_basis().unwrap(),
                fitting_ideal(k, &alt).groebner_basis().unwrap()
            );
        }
    }

    #[test]
    fn ext_vanishes_beyond_the_dimension(pts in points(), rank in 1usize..=2) {
        let r = ring(7, 2);
        let gens = point_power_ideal(&r, &pts);
        let m = PresentedModule::new(Matrix::identity(&r, rank).hcat(&Matrix::zeros(&r, rank, 0)));
        let rel: Vec<Vec<Polynomial>> = (0..rank)
            .flat_map(|i| gens.iter().map(move |g| (i, g.clone())))
            .map(|(i, g)| (0..rank).map(|k| if k == i { g.clone() } else { Polynomial::zero(&r) }).collect())
            .collect();
        let fin = PresentedModule::new(Matrix::from_columns(&r, rank, &rel));
        prop_assert!(ext(3, &fin, None).unwrap().is_zero().unwrap());
        prop_assert!(free_resolution(&fin, 3).unwrap().verify().unwrap());
        // finite length modules are dual to their second Ext
        let e2 = ext(2, &fin, None).unwrap();
        prop_assert_eq!(e2.dim_k().unwrap(), fin.dim_k().unwrap());
        prop_assert!(ext(0, &fin, None).unwrap().is_zero().unwrap());
        prop_assert!(ext(1, &fin, None).unwrap().is_zero().unwrap());
        prop_assert!(ext(2, &m, None).unwrap().is_zero().unwrap());
    }

    #[test]
    fn twisted_ext_has_the_same_size(pts in points(), units in prop::collection::vec(1u32..7, 2)) {
        let r = ring(7, 2);
        let m = PresentedModule::new(row(&r, &point_power_ideal(&r, &pts)));
        let sigma = RingAutomorphism::twist(&r, &units).unwrap();
        let twisted = ext(2, &m, Some(&sigma)).unwrap();
        prop_assert_eq!(twisted.dim_k().unwrap(), m.dim_k().unwrap());
    }

    #[test]
    fn top_exterior_power_and_determinant(raw in prop::collection::vec(terms(2, 2, 2), 4)) {
        let r = ring(5, 2);
        let a = matrix(&r, 2, 2, &raw);
        let m = PresentedModule::new(a.clone());
        // ∧^n of an n-generated module is R modulo the entries of its relations
        let top = exterior_power(2, &m).unwrap();
        let entries = Ideal::from_gens(&r, a.entries().iter().filter(|e| !e.is_zero()).cloned().collect());
        prop_assert!(fitting_ideal(0, &top).equals(&entries).unwrap());
        let det = a.det();
        let expected = if det.is_zero() { Ideal::zero(&r) } else { Ideal::principal(&det) };
        prop_assert!(fitting_ideal(0, &m).equals(&expected).unwrap());
        prop_assert_eq!(a.compound(2).get(0, 0).clone(), det);
    }
}

#[test]
fn koszul_resolution_and_self_duality() {
    let r = ring(5, 2);
    let m = PresentedModule::new(row(&r, &[poly(&r, "x1"), poly(&r, "x2")]));
    let res = free_resolution(&m, 3).unwrap();
    assert_eq!((res.rank(0), res.rank(1), res.rank(2)), (1, 2, 1));
    let e2 = prune(&ext(2, &m, None).unwrap()).module;
    assert_eq!(e2.rank(), 1);
    assert!(fitting_ideal(0, &e2).equals(&Ideal::parse(&r, &["x1", "x2"]).unwrap()).unwrap());
}

#[test]
fn irredundant_generators_span_the_same_module() {
    let r = ring(7, 2);
    let a = Matrix::parse(&r, 1, 4, &["x1", "x2", "x1 + x2", "x1*x2"]).unwrap();
    let b = chernlab_core::module::irredundant(&a).unwrap();
    assert_eq!(b.cols(), 2);
    assert!(PresentedModule::new(b.clone()).kills_columns(&a).unwrap());
    assert!(PresentedModule::new(a).kills_columns(&b).unwrap());
}

#[test]
fn long_presentations_have_fitting_ideals() {
    let r = ring(5, 2);
    let mut cols = Vec::new();
    for i in 0..70u32 {
        for j in 0..2usize {
            let mut c = vec![Polynomial::zero(&r); 2];
            c[j] = &poly(&r, "x1^2 + x2").pow(1 + i % 3) * &Polynomial::var(&r, i as usize % 2);
            cols.push(c);
        }
    }
    cols.push(vec![poly(&r, "x1^2 + x2"), Polynomial::zero(&r)]);
    cols.push(vec![Polynomial::zero(&r), poly(&r, "x1^2 + x2")]);
    let m = PresentedModule::new(Matrix::from_columns(&r, 2, &cols));
    let f = poly(&r, "x1^2 + x2");
    assert!(fitting_ideal(0, &m).equals(&Ideal::principal(&(&f * &f))).unwrap());
    assert!(fitting_ideal(1, &m).equals(&Ideal::principal(&f)).unwrap());
}
