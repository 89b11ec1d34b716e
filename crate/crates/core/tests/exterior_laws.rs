mod common;

use chernlab_core::exterior::{
    canonical_theorem_c_rhs, run_corollary, vanishing_equivalence, verify_theorem_a, verify_theorem_c,
    ExteriorScenario, SubmodulePair,
};
use chernlab_core::invariants::PrimeCertificate;
use chernlab_core::matrix::Matrix;
use chernlab_core::module::PresentedModule;
use chernlab_core::poly::Polynomial;
use chernlab_core::ring::RingRef;
use common::*;
use proptest::prelude::*;

fn grid(r: &RingRef) -> Vec<PrimeCertificate> {
    let p = r.characteristic();
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            out.push(PrimeCertificate::parse(r, &[&format!("x1 - {a}"), &format!("x2 - {b}")]).unwrap());
        }
    }
    out
}

/// Product of lines x1 = a and x2 = b, so every intersection is a rational point.
fn lines(r: &RingRef, xs: &[u32], ys: &[u32]) -> Polynomial {
    let mut f = Polynomial::one(r);
    for &a in xs {
        f = &f * &(&Polynomial::var(r, 0) - &Polynomial::constant(r, a as i64));
    }
    for &b in ys {
        f = &f * &(&Polynomial::var(r, 1) - &Polynomial::constant(r, b as i64));
    }
    f
}

/// The submodule α · J · R^ℓ of R^ℓ, inside the free module α · R^ℓ.
fn scaled_pair(r: &RingRef, l: usize, alpha: &Polynomial, j: &[Polynomial]) -> SubmodulePair {
    let mut cols = Vec::new();
    for g in j {
        let g = alpha * g;
        for k in 0..l {
            let mut c = vec![Polynomial::zero(r); l];
            c[k] = g.clone();
            cols.push(c);
        }
    }
    SubmodulePair { i_gens: Matrix::from_columns(r, l, &cols), j_basis: Some(Matrix::identity(r, l).scale(alpha)) }
}

type Spec = (Vec<u32>, Vec<u32>, Vec<(u32, u32, u32)>);

fn half() -> impl Strategy<Value = Spec> {
    (
        prop::collection::vec(0u32..5, 0..=1),
        prop::collection::vec(0u32..5, 0..=1),
        prop::collection::vec((0u32..5, 0u32..5, 1u32..=2), 0..=1),
    )
}

fn scenario(r: &RingRef, l: usize, specs: &[Spec]) -> ExteriorScenario {
    let pairs = specs
        .iter()
        .map(|(xs, ys, pts)| scaled_pair(r, l, &lines(r, xs, ys), &point_power_ideal(r, pts)))
        .collect();
    ExteriorScenario::new(PresentedModule::free(r, l), Matrix::identity(r, l), pairs, grid(r)).unwrap()
}

proptest! {
    #![proptest_config(cases(24))]

    #[test]
    fn scalar_pairs_satisfy_the_identity(a in half(), b in half(), l in 1usize..=2) {
        let r = ring(5, 2);
        let s = scenario(&r, l, &[a.clone(), b.clone()]);
        let rep = run_corollary(&s).unwrap();
        prop_assert!(rep.all_passed(), "{:?}", rep.checks);
        for (i, sp) in [a, b].iter().enumerate() {
            let alpha = lines(&r, &sp.0, &sp.1);
            let mut pow = Polynomial::one(&r);
            for _ in 0..l {
                pow = &pow * &alpha;
            }
            prop_assert!(rep.l[i].is_associate(&pow));
        }
        let cert = verify_theorem_a(&s).unwrap();
        prop_assert!(cert.identity_holds);
        prop_assert!(vanishing_equivalence(&cert).unwrap().consistent());
    }

    #[test]
    fn a_unit_pair_kills_every_term(a in half(), l in 1usize..=2) {
        let r = ring(5, 2);
        let s = scenario(&r, l, &[a, (vec![], vec![], vec![])]);
        let rep = run_corollary(&s).unwrap();
        prop_assert!(rep.theta.is_one());
        prop_assert!(rep.n_module.is_zero().unwrap());
        prop_assert!(rep.t2_n.is_zero().unwrap());
        let cert = verify_theorem_a(&s).unwrap();
        prop_assert!(cert.identity_holds && cert.lhs.is_zero());
    }
}

#[test]
fn common_line_declines_theorem_c() {
    let r = ring(5, 2);
    let x = (vec![0], vec![], vec![]);
    let s = scenario(&r, 1, &[x.clone(), (vec![0], vec![0], vec![])]);
    let c = verify_theorem_c(&s, &canonical_theorem_c_rhs(&s).unwrap()).unwrap();
    assert!(!c.coprime);
}

#[test]
fn two_points_split_the_class() {
    let r = ring(7, 2);
    let s = ExteriorScenario::new(
        PresentedModule::free(&r, 1),
        Matrix::identity(&r, 1),
        vec![
            SubmodulePair { i_gens: row(&r, &[poly(&r, "x1")]), j_basis: None },
            SubmodulePair { i_gens: row(&r, &[poly(&r, "x2^2 - x2")]), j_basis: None },
        ],
        grid(&r),
    )
    .unwrap();
    let cert = verify_theorem_a(&s).unwrap();
    assert!(cert.identity_holds);
    let hits: Vec<_> = cert.per_prime.iter().filter(|p| p.left != 0).map(|p| (p.prime.key(), p.left)).collect();
    assert_eq!(hits.len(), 2);
    assert!(hits.iter().all(|h| h.1 == 1));
}
