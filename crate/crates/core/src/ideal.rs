use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{AlgebraError, Result};
use crate::groebner::{GroebnerBasis, ModVec, ModuleOrderKind, ModuleSpace};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::RingRef;

/// Ideal of R given by generators, with a lazily computed reduced Gröbner basis.
#[derive(Clone)]
pub struct Ideal {
    ring: RingRef,
    gens: Vec<Polynomial>,
    gb: OnceLock<Arc<GroebnerBasis>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealOp {
    Sum,
    Product,
    Intersection,
    Quotient,
    Saturation,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

fn rank_one(ring: &RingRef) -> ModuleSpace {
    ModuleSpace::new(ring, 1, ModuleOrderKind::PositionOverTerm)
}

impl Ideal {
    /// The generator list must be nonempty; use `Ideal::zero` for the zero ideal.
    pub fn new(ring: &RingRef, gens: Vec<Polynomial>) -> Result<Ideal> {
        if gens.is_empty() {
            return Err(AlgebraError::precondition("ideal needs at least one generator"));
        }
        if gens.iter().any(|g| **g.ring() != **ring) {
            return Err(AlgebraError::precondition("ideal generators live in different rings"));
        }
        let mut gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        if gens.is_empty() {
            gens.push(Polynomial::zero(ring));
        }
        Ok(Ideal { ring: ring.clone(), gens, gb: OnceLock::new() })
    }

    pub fn from_gens(ring: &RingRef, gens: Vec<Polynomial>) -> Ideal {
        Ideal::new(ring, if gens.is_empty() { vec![Polynomial::zero(ring)] } else { gens }).expect("same ring")
    }

    pub fn zero(ring: &RingRef) -> Ideal {
        Ideal::from_gens(ring, vec![])
    }

    pub fn unit(ring: &RingRef) -> Ideal {
        Ideal::principal(&Polynomial::one(ring))
    }

    pub fn principal(f: &Polynomial) -> Ideal {
        Ideal::from_gens(f.ring(), vec![f.clone()])
    }

    pub fn parse(ring: &RingRef, gens: &[&str]) -> Result<Ideal> {
        let gens = gens.iter().map(|g| Polynomial::parse(ring, g)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(Polynomial::is_zero)
    }

    fn basis(&self) -> Result<&GroebnerBasis> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let sp = rank_one(&self.ring);
        let vs: Vec<ModVec> = self.gens.iter().map(|g| sp.vector(std::slice::from_ref(g))).collect();
        let gb = Arc::new(GroebnerBasis::compute(&sp, &vs)?);
        // a concurrent initializer computes the same basis, so losing the race is harmless
        let _ = self.gb.set(gb);
        Ok(self.gb.get().expect("just set"))
    }

    /// This ideal with its reduced Gröbner basis cached.
    pub fn groebner(&self) -> Result<Ideal> {
        self.basis()?;
        Ok(self.clone())
    }

    /// The reduced Gröbner basis, ascending by leading monomial.
    pub fn groebner_basis(&self) -> Result<Vec<Polynomial>> {
        let gb = self.basis()?;
        Ok(gb.elements().iter().map(|e| gb.space().components(e).remove(0)).collect())
    }

    pub fn has_cached_basis(&self) -> bool {
        self.gb.get().is_some()
    }

    /// The ideal generated by its own reduced Gröbner basis.
    pub fn from_groebner_basis(&self) -> Result<Ideal> {
        let g = self.groebner_basis()?;
        Ok(Ideal::from_gens(&self.ring, g))
    }

    pub fn leading_monomials(&self) -> Result<Vec<Monomial>> {
        Ok(self.basis()?.leading_terms().into_iter().map(|(m, _)| m).collect())
    }

    /// Monomials outside the leading-term ideal, or `None` if there are more
    /// than `limit` of them.
    pub fn standard_monomials(&self, limit: usize) -> Result<Option<Vec<Monomial>>> {
        let leads = self.leading_monomials()?;
        let n = self.ring.nvars();
        let mut out: Vec<Monomial> = Vec::new();
        let mut frontier = vec![Monomial::ONE];
        let mut seen = std::collections::HashSet::new();
        while let Some(m) = frontier.pop() {
            if !seen.insert(m) || leads.iter().any(|l| l.divides(&m)) {
                continue;
            }
            out.push(m);
            if out.len() > limit {
                return Ok(None);
            }
            frontier.extend((0..n).map(|v| m.mul(&Monomial::var(v))));
        }
        let order = self.ring.order().clone();
        out.sort_by(|a, b| order.cmp(a, b));
        Ok(Some(out))
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        let gb = self.basis()?;
        let sp = gb.space();
        Ok(sp.components(&gb.reduce(&sp.vector(std::slice::from_ref(f)))).remove(0))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.basis()?.is_whole_space())
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::from_gens(&self.ring, g)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let g = self.gens.iter().flat_map(|a| other.gens.iter().map(move |b| a * b)).collect();
        Ideal::from_gens(&self.ring, g)
    }

    pub fn power(&self, e: u32) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..e {
            acc = acc.product(self);
        }
        acc
    }

    /// `I ∩ J`, by eliminating t from `t·I + (1 - t)·J`.
    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        let ext = self.ring.elimination_extension(1);
        let t = Polynomial::var(&ext, self.ring.nvars());
        let one_minus_t = &Polynomial::one(&ext) - &t;
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| &t * &g.change_ring(&ext)).collect();
        gens.extend(other.gens.iter().map(|g| &one_minus_t * &g.change_ring(&ext)));
        let big = Ideal::from_gens(&ext, gens);
        let elim = big
            .groebner_basis()?
            .into_iter()
            .filter(|g| !g.uses_var(self.ring.nvars()))
            .map(|g| g.change_ring(&self.ring))
            .collect();
        Ok(Ideal::from_gens(&self.ring, elim))
    }

    /// `(I : f)`, the first coordinates of the syzygies of `(f, g_1, …, g_k)`.
    pub fn quotient_by(&self, f: &Polynomial) -> Result<Ideal> {
        if f.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        let mut row = vec![f.clone()];
        row.extend(self.gens.iter().filter(|g| !g.is_zero()).cloned());
        let syz = crate::module::syzygies(&crate::matrix::Matrix::from_columns(
            &self.ring,
            1,
            &row.into_iter().map(|g| vec![g]).collect::<Vec<_>>(),
        ))?;
        let gens: Vec<Polynomial> = (0..syz.cols()).map(|j| syz.get(0, j).clone()).filter(|g| !g.is_zero()).collect();
        Ok(Ideal::from_gens(&self.ring, gens))
    }

    /// `(I : J) = ∩_j (I : g_j)`.
    pub fn quotient(&self, other: &Ideal) -> Result<Ideal> {
        let mut acc: Option<Ideal> = None;
        for g in other.gens.iter().filter(|g| !g.is_zero()) {
            let q = self.quotient_by(g)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersection(&q)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.ring)))
    }

    /// `(I : J^∞)`, iterating quotients until the chain stabilizes.
    pub fn saturation(&self, other: &Ideal) -> Result<Ideal> {
        let mut cur = self.from_groebner_basis()?;
        loop {
            self.ring.check_deadline()?;
            let next = cur.quotient(other)?.from_groebner_basis()?;
            if cur.contains_ideal(&next)? {
                return Ok(cur);
            }
            cur = next;
        }
    }

    pub fn apply(&self, other: &Ideal, op: IdealOp) -> Result<Ideal> {
        if *self.ring != *other.ring {
            return Err(AlgebraError::precondition("ideals live in different rings"));
        }
        match op {
            IdealOp::Sum => Ok(self.sum(other)),
            IdealOp::Product => Ok(self.product(other)),
            IdealOp::Intersection => self.intersection(other),
            IdealOp::Quotient => self.quotient(other),
            IdealOp::Saturation => self.saturation(other),
        }
    }

    /// A gcd of the generators, monic; zero for the zero ideal.
    pub fn generator_gcd(&self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(&self.ring);
        for g in &self.gens {
            if acc.is_one() {
                break;
            }
            acc = if acc.is_zero() { g.monic() } else { poly_gcd(&acc, g)? };
        }
        Ok(acc)
    }
}

pub fn ideal_ops(i: &Ideal, j: &Ideal, op: IdealOp) -> Result<Ideal> {
    i.apply(j, op)
}

/// Monic gcd, computed as `f·g / h` where `(h) = (f) ∩ (g)`.
pub fn poly_gcd(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if f.is_zero() && g.is_zero() {
        return Err(AlgebraError::precondition("gcd(0, 0) is undefined"));
    }
    if f.is_zero() {
        return Ok(g.monic());
    }
    if g.is_zero() {
        return Ok(f.monic());
    }
    if f.is_constant() || g.is_constant() {
        return Ok(Polynomial::one(f.ring()));
    }
    if f.num_terms() == 1 && g.num_terms() == 1 {
        let m = f.leading_monomial().unwrap().gcd(&g.leading_monomial().unwrap());
        return Ok(Polynomial::monomial(f.ring(), m, 1));
    }
    let h = poly_lcm(f, g)?;
    let prod = f * g;
    prod.exact_div(&h)
        .map(|q| q.monic())
        .ok_or_else(|| AlgebraError::DivisionFailed(format!("lcm {h} does not divide {prod}")))
}

/// Monic generator of `(f) ∩ (g)`.
pub fn poly_lcm(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if f.is_zero() || g.is_zero() {
        return Ok(Polynomial::zero(f.ring()));
    }
    let meet = Ideal::principal(f).intersection(&Ideal::principal(g))?;
    let gb = meet.groebner_basis()?;
    if gb.len() != 1 {
        return Err(AlgebraError::Exactness(format!("intersection of principal ideals has {} generators", gb.len())));
    }
    Ok(gb[0].monic())
}
