//! Brute-force cross-checks that avoid the Gröbner machinery where possible.

use std::collections::HashMap;

use chernlab_core::error::{AlgebraError, Result};
use chernlab_core::ideal::Ideal;
use chernlab_core::invariants::PrimeCertificate;
use chernlab_core::matrix::Matrix;
use chernlab_core::linalg::DenseMatrix;
use chernlab_core::module::PresentedModule;
use chernlab_core::monomial::Monomial;
use chernlab_core::poly::Polynomial;
use chernlab_core::ring::RingRef;

/// All monomials in `nvars` variables of total degree ≤ `d`, by degree.
pub fn monomials_up_to(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::ONE];
    let mut band = vec![Monomial::ONE];
    for _ in 0..d {
        let mut next = Vec::new();
        for m in &band {
            // extend only by variables ≥ the last one used, so each monomial appears once
            let last = (0..nvars).rev().find(|&v| m.exponent(v) > 0).unwrap_or(0);
            for v in last..nvars {
                next.push(m.mul(&Monomial::var(v)));
            }
        }
        out.extend(next.iter().copied());
        band = next;
    }
    out
}

/// Row space of the Macaulay matrix {m·g : deg(m·g) ≤ D} in reduced echelon form.
pub struct MacaulayOracle {
    ring: RingRef,
    degree: u32,
    index: HashMap<Monomial, usize>,
    echelon: DenseMatrix,
    pivots: Vec<usize>,
}

impl MacaulayOracle {
    pub fn new(ring: &RingRef, gens: &[Polynomial], degree: u32) -> MacaulayOracle {
        let monos = monomials_up_to(ring.nvars(), degree);
        let index: HashMap<Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut rows = Vec::new();
        for g in gens.iter().filter(|g| !g.is_zero()) {
            let dg = g.total_degree().unwrap_or(0);
            if dg > degree {
                continue;
            }
            for m in monomials_up_to(ring.nvars(), degree - dg) {
                let mut row = vec![0u32; monos.len()];
                for (t, c) in g.mul_term(&m, 1).terms() {
                    row[index[t]] = *c;
                }
                rows.push(row);
            }
        }
        let mut echelon = if rows.is_empty() {
            DenseMatrix::zeros(*ring.field(), 0, monos.len())
        } else {
            DenseMatrix::from_rows(*ring.field(), &rows)
        };
        let pivots = echelon.row_reduce();
        MacaulayOracle { ring: ring.clone(), degree, index, echelon, pivots }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Whether f lies in the truncated span; `None` when deg f exceeds the bound.
    pub fn contains(&self, f: &Polynomial) -> Option<bool> {
        if f.total_degree().unwrap_or(0) > self.degree {
            return None;
        }
        let field = self.ring.field();
        let mut v = vec![0u32; self.index.len()];
        for (t, c) in f.terms() {
            v[self.index[t]] = *c;
        }
        for (r, &pc) in self.pivots.iter().enumerate() {
            let factor = v[pc];
            if factor == 0 {
                continue;
            }
            for (j, slot) in v.iter_mut().enumerate().skip(pc) {
                let e = self.echelon.get(r, j);
                if e != 0 {
                    *slot = field.sub(*slot, field.mul(factor, e));
                }
            }
        }
        Some(v.iter().all(|&c| c == 0))
    }
}

/// Membership of f in (gens) certified by linear algebra up to `degree`.
pub fn macaulay_membership(ring: &RingRef, gens: &[Polynomial], f: &Polynomial, degree: u32) -> Option<bool> {
    MacaulayOracle::new(ring, gens, degree).contains(f)
}

/// dim_k R/I by enumerating monomials that are their own normal form, degree
/// by degree, until a whole degree band is empty.
pub fn ideal_dimension(ideal: &Ideal) -> Result<u64> {
    let ring = ideal.ring().clone();
    let gb = ideal.groebner_basis()?;
    let cap = cap_degree(&gb, ring.nvars());
    let mut count = 0u64;
    for d in 0..=cap + 1 {
        let mut band = 0u64;
        for m in monomials_of_degree(ring.nvars(), d) {
            let mono = Polynomial::monomial(&ring, m, 1);
            if ideal.normal_form(&mono)? == mono {
                band += 1;
            }
        }
        if band == 0 {
            return Ok(count);
        }
        if d == cap + 1 {
            break;
        }
        count += band;
    }
    Err(AlgebraError::Unbounded(format!("standard monomials persist past degree {cap}")))
}

/// dim_k M for a presented module, enumerating monomial multiples of the basis vectors.
pub fn module_dimension(m: &PresentedModule) -> Result<u64> {
    let ring = m.ring().clone();
    let k = m.rank();
    let maxdeg = m.relations().entries().iter().filter_map(|p| p.total_degree()).max().unwrap_or(0) as usize;
    let cap = (ring.nvars() * maxdeg.max(1) * k.max(1)) as u32;
    let mut count = 0u64;
    for d in 0..=cap + 1 {
        let mut band = 0u64;
        for mono in monomials_of_degree(ring.nvars(), d) {
            for j in 0..k {
                let mut v = vec![Polynomial::zero(&ring); k];
                v[j] = Polynomial::monomial(&ring, mono, 1);
                if m.normal_form(&v)? == v {
                    band += 1;
                }
            }
        }
        if band == 0 {
            return Ok(count);
        }
        if d == cap + 1 {
            break;
        }
        count += band;
    }
    Err(AlgebraError::Unbounded(format!("module has standard monomials past degree {cap}")))
}

/// Length of the P-primary part of a finite-length module: dim_k (0 :_M P^∞) / dim_k R/P.
pub fn primary_length(m: &PresentedModule, p: &PrimeCertificate) -> Result<u64> {
    // for finite length M, P^k M stabilises at the sum of the other primary
    // parts, so dim M/P^k M stabilises at dim of the P-part
    let ring = m.ring();
    let kp = ideal_dimension(p.ideal())?;
    if kp == 0 {
        return Err(AlgebraError::Exactness("prime has no finite residue field".into()));
    }
    let total = module_dimension(m)?;
    let mut last = None;
    let mut power = p.ideal().clone();
    for _ in 0..=total + 1 {
        let mut cols = Vec::new();
        for i in 0..m.rank() {
            for g in power.generators() {
                let mut c = vec![Polynomial::zero(ring); m.rank()];
                c[i] = g.clone();
                cols.push(c);
            }
        }
        let extra = Matrix::from_columns(ring, m.rank(), &cols);
        let d = module_dimension(&PresentedModule::new(m.relations().hcat(&extra)))?;
        if last == Some(d) {
            if d % kp != 0 {
                return Err(AlgebraError::Exactness(format!("P-part dimension {d} is not a multiple of {kp}")));
            }
            return Ok(d / kp);
        }
        last = Some(d);
        power = power.product(p.ideal());
    }
    Err(AlgebraError::Exactness("P-adic filtration did not stabilise".into()))
}

fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    monomials_up_to(nvars, d).into_iter().filter(|m| m.degree() == d).collect()
}

fn cap_degree(gb: &[Polynomial], nvars: usize) -> u32 {
    let maxdeg = gb.iter().filter_map(|g| g.total_degree()).max().unwrap_or(0);
    nvars as u32 * maxdeg.max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use chernlab_core::ring::{Ring, RingSpec};

    #[test]
    fn membership_and_dimension() {
        let r = Ring::new(RingSpec::grevlex(5, 2)).unwrap();
        let x2 = Polynomial::parse(&r, "x1^2").unwrap();
        let x3 = Polynomial::parse(&r, "x1^3").unwrap();
        assert_eq!(macaulay_membership(&r, std::slice::from_ref(&x2), &x3, 4), Some(true));
        assert_eq!(macaulay_membership(&r, &[x3], &x2, 4), Some(false));
        let i = Ideal::parse(&r, &["x1^2", "x1*x2", "x2^3"]).unwrap();
        assert_eq!(ideal_dimension(&i).unwrap(), 4);
        let line = Ideal::parse(&r, &["x1"]).unwrap();
        assert!(matches!(ideal_dimension(&line), Err(AlgebraError::Unbounded(_))));
        assert_eq!(monomials_up_to(3, 2).len(), 10);
    }
}
