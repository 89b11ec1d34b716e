#![allow(dead_code)]

use chernlab_core::matrix::Matrix;
use chernlab_core::monomial::Monomial;
use chernlab_core::poly::Polynomial;
use chernlab_core::ring::{Ring, RingRef, RingSpec};
use proptest::prelude::*;

pub fn ring(p: u64, n: usize) -> RingRef {
    Ring::new(RingSpec::grevlex(p, n)).unwrap()
}

pub fn poly(r: &RingRef, s: &str) -> Polynomial {
    Polynomial::parse(r, s).unwrap()
}

/// Raw terms: (coefficient, exponent vector).
pub type Terms = Vec<(u32, Vec<u16>)>;

pub fn terms(nvars: usize, max_deg: u16, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec(
        (1u32..1000, prop::collection::vec(0..=max_deg, nvars)).prop_filter("degree", move |(_, e)| {
            e.iter().sum::<u16>() <= max_deg
        }),
        1..=max_terms,
    )
}

pub fn build(r: &RingRef, t: &Terms) -> Polynomial {
    Polynomial::from_terms(r, t.iter().map(|(c, e)| (Monomial::from_exponents(e), *c)).collect())
}

pub fn nonzero(r: &RingRef, t: &Terms) -> Polynomial {
    let f = build(r, t);
    if f.is_zero() {
        Polynomial::one(r)
    } else {
        f
    }
}

/// The product of the maximal ideals of the given rational points, each
/// raised to the given power, as generators.
pub fn point_power_ideal(r: &RingRef, points: &[(u32, u32, u32)]) -> Vec<Polynomial> {
    let mut acc = vec![Polynomial::one(r)];
    for &(a, b, e) in points {
        let x = &Polynomial::var(r, 0) - &Polynomial::constant(r, a as i64);
        let y = &Polynomial::var(r, 1) - &Polynomial::constant(r, b as i64);
        for _ in 0..e {
            let mut next = Vec::new();
            for g in &acc {
                for l in [&x, &y] {
                    let h = g * l;
                    if !next.contains(&h) {
                        next.push(h);
                    }
                }
            }
            acc = next;
        }
    }
    acc
}

pub fn row(r: &RingRef, gens: &[Polynomial]) -> Matrix {
    Matrix::from_columns(r, 1, &gens.iter().map(|g| vec![g.clone()]).collect::<Vec<_>>())
}

pub fn cases(n: u32) -> ProptestConfig {
    ProptestConfig { cases: n, failure_persistence: None, ..ProptestConfig::default() }
}
