//! Hilbert series of monomial quotients, used for dimensions and multiplicities.

use crate::monomial::Monomial;

/// Numerator K(t) of the Hilbert series K(t)/(1-t)^n of k[x1..xn]/(gens).
pub fn hilbert_numerator(gens: &[Monomial], nvars: usize) -> Vec<i64> {
    let _ = nvars;
    numerator(minimalize(gens.to_vec()))
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_shifted(a: &mut Vec<i64>, b: &[i64], shift: usize, sign: i64) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, y) in b.iter().enumerate() {
        a[i + shift] += sign * y;
    }
}

fn numerator(gens: Vec<Monomial>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    let pairwise_coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        return gens.iter().fold(vec![1], |acc, g| {
            let mut f = vec![0; g.degree() as usize + 1];
            f[0] = 1;
            f[g.degree() as usize] -= 1;
            poly_mul(&acc, &f)
        });
    }
    // pivot on a power of the variable occurring in the most generators
    let nv = crate::monomial::MAX_VARS;
    let var = (0..nv).max_by_key(|&v| (gens.iter().filter(|g| g.exponent(v) > 0).count(), std::cmp::Reverse(v))).unwrap();
    let mut exps: Vec<u16> = gens.iter().map(|g| g.exponent(var)).filter(|&e| e > 0).collect();
    exps.sort_unstable();
    let e = exps[(exps.len() - 1) / 2];
    let mut pivot = Monomial::ONE;
    pivot.set_exponent(var, e);
    // K(I) = K(I + (p)) + t^deg(p) K(I : p)
    let mut with_pivot = gens.clone();
    with_pivot.push(pivot);
    let quotient: Vec<Monomial> = gens.iter().map(|g| g.div(&g.gcd(&pivot)).unwrap()).collect();
    let mut k = numerator(minimalize(with_pivot));
    poly_add_shifted(&mut k, &numerator(minimalize(quotient)), e as usize, 1);
    while k.len() > 1 && *k.last().unwrap() == 0 {
        k.pop();
    }
    k
}

/// Krull dimension and multiplicity read off a Hilbert numerator over n
/// variables. The zero module has dimension -1 and multiplicity 0.
pub fn dimension_and_degree(numer: &[i64], nvars: usize) -> (i32, i64) {
    let mut k: Vec<i64> = numer.to_vec();
    while k.last() == Some(&0) {
        k.pop();
    }
    if k.is_empty() {
        return (-1, 0);
    }
    let mut order = 0usize;
    // divide by (1 - t) while K(1) = 0
    while k.iter().sum::<i64>() == 0 {
        let mut q = vec![0i64; k.len() - 1];
        let mut acc = 0;
        for i in 0..k.len() - 1 {
            acc += k[i];
            q[i] = acc;
        }
        k = q;
        order += 1;
    }
    (nvars as i32 - order as i32, k.iter().sum())
}

/// Sum of numerators over module components.
pub fn add_numerators(parts: &[Vec<i64>]) -> Vec<i64> {
    let mut acc = vec![0];
    for p in parts {
        poly_add_shifted(&mut acc, p, 0, 1);
    }
    acc
}

/// Number of standard monomials, or `None` if infinitely many.
pub fn standard_monomial_count(gens: &[Monomial], nvars: usize) -> Option<u64> {
    let k = hilbert_numerator(gens, nvars);
    let (dim, deg) = dimension_and_degree(&k, nvars);
    match dim {
        -1 => Some(0),
        0 => Some(deg as u64),
        _ => None,
    }
}
