//! Buchberger's algorithm for submodules of a free module R^rank.
//!
//! Ideals are the rank-1 case. Pairs are managed with the Gebauer–Möller
//! update and selected by sugar degree.

use std::cmp::Ordering;

use crate::error::{AlgebraError, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::RingRef;

/// How module terms `m·e_c` are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModuleOrderKind {
    /// Component first (lower index is larger), then monomial. Eliminates
    /// leading components, which is what syzygy and lift computations need.
    PositionOverTerm,
    /// Monomial first, then component. Degree-compatible when the ring order is.
    TermOverPosition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Term {
    pub mon: Monomial,
    pub comp: u32,
    pub coef: u32,
}

/// Free module R^rank together with a module order.
#[derive(Debug, Clone)]
pub struct ModuleSpace {
    pub ring: RingRef,
    pub rank: usize,
    pub kind: ModuleOrderKind,
}

impl ModuleSpace {
    pub fn new(ring: &RingRef, rank: usize, kind: ModuleOrderKind) -> Self {
        ModuleSpace { ring: ring.clone(), rank, kind }
    }

    #[inline]
    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        let order = self.ring.order();
        match self.kind {
            ModuleOrderKind::PositionOverTerm => b.comp.cmp(&a.comp).then_with(|| order.cmp(&a.mon, &b.mon)),
            ModuleOrderKind::TermOverPosition => order.cmp(&a.mon, &b.mon).then_with(|| b.comp.cmp(&a.comp)),
        }
    }

    /// Vector from its component polynomials (length `rank`).
    pub fn vector(&self, comps: &[Polynomial]) -> ModVec {
        assert_eq!(comps.len(), self.rank, "vector length mismatch");
        let mut terms: Vec<Term> = comps
            .iter()
            .enumerate()
            .flat_map(|(c, p)| p.terms().iter().map(move |&(mon, coef)| Term { mon, comp: c as u32, coef }))
            .collect();
        terms.sort_by(|a, b| self.cmp(b, a));
        ModVec { terms }
    }

    pub fn unit_vector(&self, c: usize) -> ModVec {
        ModVec { terms: vec![Term { mon: Monomial::ONE, comp: c as u32, coef: 1 }] }
    }

    pub fn components(&self, v: &ModVec) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); self.rank];
        for t in &v.terms {
            buckets[t.comp as usize].push((t.mon, t.coef));
        }
        buckets.into_iter().map(|b| Polynomial::from_terms(&self.ring, b)).collect()
    }

    /// `a - c·m·b`
    pub fn sub_mul(&self, a: &[Term], b: &[Term], m: &Monomial, c: u32) -> Vec<Term> {
        let f = self.ring.field();
        let nc = f.neg(c);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let scaled = |t: &Term| Term { mon: t.mon.mul(m), comp: t.comp, coef: f.mul(t.coef, nc) };
        let mut pending: Option<Term> = b.first().map(scaled);
        while i < a.len() {
            let Some(bt) = pending else { break };
            match self.cmp(&a[i], &bt) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(bt);
                    j += 1;
                    pending = b.get(j).map(scaled);
                }
                Ordering::Equal => {
                    let s = f.add(a[i].coef, bt.coef);
                    if s != 0 {
                        out.push(Term { coef: s, ..a[i] });
                    }
                    i += 1;
                    j += 1;
                    pending = b.get(j).map(scaled);
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        if let Some(bt) = pending {
            out.push(bt);
            out.extend(b[j + 1..].iter().map(scaled));
        }
        out
    }

    pub fn add(&self, a: &ModVec, b: &ModVec) -> ModVec {
        let f = self.ring.field();
        ModVec { terms: self.sub_mul(&a.terms, &b.terms, &Monomial::ONE, f.neg(1)) }
    }

    pub fn sub(&self, a: &ModVec, b: &ModVec) -> ModVec {
        ModVec { terms: self.sub_mul(&a.terms, &b.terms, &Monomial::ONE, 1) }
    }

    pub fn scale_term(&self, v: &ModVec, m: &Monomial, c: u32) -> ModVec {
        let f = self.ring.field();
        if c == 0 {
            return ModVec::default();
        }
        ModVec { terms: v.terms.iter().map(|t| Term { mon: t.mon.mul(m), comp: t.comp, coef: f.mul(t.coef, c) }).collect() }
    }

    pub fn monic(&self, v: &ModVec) -> ModVec {
        match v.terms.first() {
            None => v.clone(),
            Some(t) if t.coef == 1 => v.clone(),
            Some(t) => self.scale_term(v, &Monomial::ONE, self.ring.field().inv(t.coef)),
        }
    }
}

/// Element of R^rank with terms in descending module order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ModVec {
    pub(crate) terms: Vec<Term>,
}

impl ModVec {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.mon.degree()).max().unwrap_or(0)
    }

    /// Components of index at least `from` only, shifted down by `from`.
    pub fn tail_block(&self, from: u32) -> ModVec {
        ModVec {
            terms: self
                .terms
                .iter()
                .filter(|t| t.comp >= from)
                .map(|t| Term { comp: t.comp - from, ..*t })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Builder<'a> {
    space: &'a ModuleSpace,
    elems: Vec<ModVec>,
    leads: Vec<(Monomial, u32)>,
    masks: Vec<u32>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<'a> Builder<'a> {
    fn new(space: &'a ModuleSpace) -> Self {
        Builder {
            space,
            elems: Vec::new(),
            leads: Vec::new(),
            masks: Vec::new(),
            sugar: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
        }
    }

    fn find_reducer(&self, t: &Term) -> Option<usize> {
        let mask = t.mon.support_mask();
        (0..self.elems.len()).find(|&k| {
            self.active[k]
                && self.leads[k].1 == t.comp
                && Monomial::may_divide(self.masks[k], mask)
                && self.leads[k].0.divides(&t.mon)
        })
    }

    fn reduce(&self, v: ModVec) -> Result<ModVec> {
        let mut rem: Vec<Term> = Vec::new();
        let mut cur = v.terms;
        let mut start = 0;
        let mut steps = 0usize;
        while start < cur.len() {
            let t = cur[start];
            match self.find_reducer(&t) {
                Some(k) => {
                    let q = t.mon.div(&self.leads[k].0).expect("reducer divides");
                    cur = self.space.sub_mul(&cur[start + 1..], &self.elems[k].terms[1..], &q, t.coef);
                    start = 0;
                    steps += 1;
                    if steps.is_multiple_of(256) {
                        self.space.ring.check_deadline()?;
                    }
                }
                None => {
                    rem.push(t);
                    start += 1;
                }
            }
        }
        Ok(ModVec { terms: rem })
    }

    fn insert(&mut self, v: ModVec, sugar: u32) -> Result<()> {
        let limits = self.space.ring.limits();
        let deg = v.max_degree();
        if deg > limits.max_degree {
            return Err(AlgebraError::ResourceLimit(format!(
                "basis element of degree {deg} exceeds degree ceiling {}",
                limits.max_degree
            )));
        }
        let v = self.space.monic(&v);
        let lead = *v.lead().expect("nonzero");
        let h = self.elems.len();
        self.elems.push(v);
        self.leads.push((lead.mon, lead.comp));
        self.masks.push(lead.mon.support_mask());
        self.sugar.push(sugar);
        self.active.push(false);
        self.update(h);
        let active = self.active.iter().filter(|&&a| a).count();
        if active > limits.max_basis || self.elems.len() > 8 * limits.max_basis {
            return Err(AlgebraError::ResourceLimit(format!(
                "Groebner basis size exceeds ceiling {}",
                limits.max_basis
            )));
        }
        Ok(())
    }

    /// Gebauer–Möller pair update for the new element `h`.
    fn update(&mut self, h: usize) {
        let (lh, ch) = self.leads[h];
        let ideal_case = self.space.rank == 1;
        let cands: Vec<(usize, Monomial)> = (0..h)
            .filter(|&g| self.active[g] && self.leads[g].1 == ch)
            .map(|g| (g, self.leads[g].0.lcm(&lh)))
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for (idx, &(g, l)) in cands.iter().enumerate() {
            let coprime = ideal_case && self.leads[g].0.is_coprime(&lh);
            let dominated = cands[idx + 1..].iter().any(|(_, l2)| l2.divides(&l))
                || kept.iter().any(|(_, l2, _)| l2.divides(&l));
            if coprime || !dominated {
                kept.push((g, l, coprime));
            }
        }
        let leads = &self.leads;
        self.pairs.retain(|p| {
            let c = leads[p.i].1;
            !(c == ch
                && lh.divides(&p.lcm)
                && leads[p.i].0.lcm(&lh) != p.lcm
                && leads[p.j].0.lcm(&lh) != p.lcm)
        });
        for (g, l, coprime) in kept {
            if coprime {
                continue;
            }
            let sg = self.sugar[g] + l.degree() - self.leads[g].0.degree();
            let sh = self.sugar[h] + l.degree() - lh.degree();
            self.pairs.push(Pair { i: g, j: h, lcm: l, sugar: sg.max(sh) });
        }
        for g in 0..h {
            if self.active[g] && self.leads[g].1 == ch && lh.divides(&self.leads[g].0) {
                self.active[g] = false;
            }
        }
        self.active[h] = true;
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            pa.sugar
                .cmp(&pb.sugar)
                .then_with(|| self.space.ring.order().cmp(&pa.lcm, &pb.lcm))
                .then_with(|| (pa.j, pa.i).cmp(&(pb.j, pb.i)))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn s_vector(&self, p: &Pair) -> ModVec {
        let qi = p.lcm.div(&self.leads[p.i].0).unwrap();
        let qj = p.lcm.div(&self.leads[p.j].0).unwrap();
        let a = self.space.scale_term(&self.elems[p.i], &qi, 1);
        ModVec { terms: self.space.sub_mul(&a.terms[1..], &self.elems[p.j].terms[1..], &qj, 1) }
    }
}

/// Reduced Gröbner basis of a submodule of R^rank.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    space: ModuleSpace,
    elems: Vec<ModVec>,
}

impl GroebnerBasis {
    pub fn compute(space: &ModuleSpace, gens: &[ModVec]) -> Result<GroebnerBasis> {
        let mut b = Builder::new(space);
        let mut input: Vec<ModVec> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        input.sort_by(|a, b| space.cmp(&a.terms[0], &b.terms[0]));
        for g in input {
            let sugar = g.max_degree();
            let r = b.reduce(g)?;
            if !r.is_zero() {
                b.insert(r, sugar)?;
            }
        }
        let mut steps = 0usize;
        while let Some(p) = b.next_pair() {
            steps += 1;
            if steps.is_multiple_of(16) {
                space.ring.check_deadline()?;
            }
            let s = b.s_vector(&p);
            let r = b.reduce(s)?;
            if !r.is_zero() {
                b.insert(r, p.sugar)?;
            }
        }
        let keep: Vec<usize> = (0..b.elems.len()).filter(|&k| b.active[k]).collect();
        let mut out = Vec::with_capacity(keep.len());
        for &k in &keep {
            b.active[k] = false;
            let r = b.reduce(b.elems[k].clone())?;
            b.active[k] = true;
            debug_assert!(r.lead() == b.elems[k].lead());
            out.push(space.monic(&r));
        }
        out.sort_by(|a, b| space.cmp(&a.terms[0], &b.terms[0]));
        Ok(GroebnerBasis { space: space.clone(), elems: out })
    }

    pub fn space(&self) -> &ModuleSpace {
        &self.space
    }

    pub fn elements(&self) -> &[ModVec] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Leading terms (monomial, component) of the basis.
    pub fn leading_terms(&self) -> Vec<(Monomial, u32)> {
        self.elems.iter().map(|e| (e.terms[0].mon, e.terms[0].comp)).collect()
    }

    /// Normal form: the unique remainder of `v` modulo the basis.
    pub fn reduce(&self, v: &ModVec) -> ModVec {
        let mut rem: Vec<Term> = Vec::new();
        let mut cur = v.terms.clone();
        let mut start = 0;
        let lead: Vec<(Monomial, u32, u32)> =
            self.elems.iter().map(|e| (e.terms[0].mon, e.terms[0].comp, e.terms[0].mon.support_mask())).collect();
        while start < cur.len() {
            let t = cur[start];
            let mask = t.mon.support_mask();
            let found = lead
                .iter()
                .position(|(m, c, mk)| *c == t.comp && Monomial::may_divide(*mk, mask) && m.divides(&t.mon));
            match found {
                Some(k) => {
                    let q = t.mon.div(&lead[k].0).unwrap();
                    cur = self.space.sub_mul(&cur[start + 1..], &self.elems[k].terms[1..], &q, t.coef);
                    start = 0;
                }
                None => {
                    rem.push(t);
                    start += 1;
                }
            }
        }
        ModVec { terms: rem }
    }

    pub fn contains(&self, v: &ModVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// True when the basis contains every unit vector, i.e. spans R^rank.
    pub fn is_whole_space(&self) -> bool {
        (0..self.space.rank).all(|c| self.elems.iter().any(|e| e.terms[0].comp == c as u32 && e.terms[0].mon.is_one()))
    }

    /// Independent Buchberger-criterion check: every S-vector of the basis
    /// reduces to zero, the basis is monic, and no term of an element is
    /// divisible by the leading term of a different element.
    pub fn verify(&self) -> bool {
        let sp = &self.space;
        for (a, ea) in self.elems.iter().enumerate() {
            if ea.terms[0].coef != 1 {
                return false;
            }
            for (b, eb) in self.elems.iter().enumerate() {
                if a == b {
                    continue;
                }
                let (lb, cb) = (eb.terms[0].mon, eb.terms[0].comp);
                if ea.terms.iter().any(|t| t.comp == cb && lb.divides(&t.mon)) {
                    return false;
                }
                if b > a && ea.terms[0].comp == cb {
                    let l = ea.terms[0].mon.lcm(&lb);
                    let qa = l.div(&ea.terms[0].mon).unwrap();
                    let qb = l.div(&lb).unwrap();
                    let s = sp.sub(&sp.scale_term(ea, &qa, 1), &sp.scale_term(eb, &qb, 1));
                    if !self.contains(&s) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Ring, RingSpec};

    fn ideal_gb(ring: &RingRef, gens: &[&str]) -> Vec<String> {
        let sp = ModuleSpace::new(ring, 1, ModuleOrderKind::PositionOverTerm);
        let vs: Vec<ModVec> = gens.iter().map(|g| sp.vector(&[Polynomial::parse(ring, g).unwrap()])).collect();
        let gb = GroebnerBasis::compute(&sp, &vs).unwrap();
        assert!(gb.verify());
        gb.elements().iter().map(|e| sp.components(e)[0].to_string()).collect()
    }

    #[test]
    fn small_ideals() {
        let r5 = Ring::new(RingSpec::grevlex(5, 2)).unwrap();
        assert_eq!(ideal_gb(&r5, &["x1", "x2"]), vec!["x2", "x1"]);
        assert_eq!(ideal_gb(&r5, &["x1^2*x2"]), vec!["x1^2*x2"]);
        let r2 = Ring::new(RingSpec::grevlex(2, 2)).unwrap();
        let mut gb = ideal_gb(&r2, &["x1^2 + x2", "x2^2"]);
        gb.sort();
        assert_eq!(gb, vec!["x1^2 + x2", "x2^2"]);
    }

    #[test]
    fn cyclic_three_like() {
        let r = Ring::new(RingSpec::grevlex(101, 3)).unwrap();
        let gb = ideal_gb(&r, &["x1 + x2 + x3", "x1*x2 + x2*x3 + x3*x1", "x1*x2*x3 - 1"]);
        // the quotient has dimension 6 (= 3!)
        assert_eq!(gb.len(), 3);
    }

    #[test]
    fn unit_ideal() {
        let r = Ring::new(RingSpec::grevlex(5, 2)).unwrap();
        assert_eq!(ideal_gb(&r, &["x1 + 1", "x1"]), vec!["1"]);
    }

    #[test]
    fn module_basis() {
        let r = Ring::new(RingSpec::grevlex(5, 2)).unwrap();
        let sp = ModuleSpace::new(&r, 2, ModuleOrderKind::TermOverPosition);
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        let gens = vec![sp.vector(&[p("x1"), p("x2")]), sp.vector(&[p("x2"), p("0")])];
        let gb = GroebnerBasis::compute(&sp, &gens).unwrap();
        assert!(gb.verify());
        assert!(gb.contains(&sp.vector(&[p("x1*x2"), p("x2^2")])));
        assert!(gb.contains(&sp.vector(&[p("0"), p("x2^2")])));
        assert!(!gb.contains(&sp.vector(&[p("0"), p("x2")])));
    }

    #[test]
    fn resource_limit() {
        let spec = RingSpec::grevlex(5, 2);
        let limits = crate::ring::Limits { max_basis: 500, max_degree: 3, timeout: None };
        let r = Ring::with_limits(spec, limits).unwrap();
        let sp = ModuleSpace::new(&r, 1, ModuleOrderKind::PositionOverTerm);
        let g = sp.vector(&[Polynomial::parse(&r, "x1^5").unwrap()]);
        assert!(matches!(GroebnerBasis::compute(&sp, &[g]), Err(AlgebraError::ResourceLimit(_))));
    }
}
