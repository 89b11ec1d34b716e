//! Support-theoretic invariants: torsion, reflexive hulls, pseudo-null parts,
//! characteristic classes and localization lengths.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::ideal::{poly_gcd, Ideal};
use crate::linalg::DenseMatrix;
use crate::matrix::Matrix;
use crate::module::{ext, fitting_ideal, lift, prune, subquotient, syzygies, ModuleMap, PresentedModule, Subobject};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::RingRef;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    UserDeclared,
    LinearFormGenerated,
    MaximalInTwoVars,
}

impl Provenance {
    pub fn name(&self) -> &'static str {
        match self {
            Provenance::UserDeclared => "user-declared",
            Provenance::LinearFormGenerated => "linear-form-generated",
            Provenance::MaximalInTwoVars => "maximal-in-2-vars",
        }
    }

    pub fn is_verified(&self) -> bool {
        !matches!(self, Provenance::UserDeclared)
    }
}

/// A prime ideal with its codimension, multiplicity of R/P, and how primality
/// was established.
#[derive(Debug, Clone)]
pub struct PrimeCertificate {
    ideal: Ideal,
    basis: Vec<Polynomial>,
    codim: usize,
    degree: i64,
    provenance: Provenance,
}

impl PrimeCertificate {
    /// Certifies primality when the ideal is generated by affine-linear forms
    /// or is a maximal ideal in two variables; otherwise records the ideal
    /// as user-declared.
    pub fn declare(ideal: &Ideal) -> Result<PrimeCertificate> {
        if ideal.is_unit()? {
            return Err(AlgebraError::precondition("the unit ideal is not prime"));
        }
        let ring = ideal.ring().clone();
        let basis = ideal.groebner_basis()?;
        let (dim, degree) = PresentedModule::cyclic(ideal).dimension_and_degree()?;
        let codim = ring.nvars() - dim as usize;
        let provenance = if basis.iter().all(|g| g.total_degree().unwrap_or(0) <= 1) {
            Provenance::LinearFormGenerated
        } else if ring.nvars() == 2 && dim == 0 && is_field_quotient(ideal)? {
            Provenance::MaximalInTwoVars
        } else {
            Provenance::UserDeclared
        };
        Ok(PrimeCertificate { ideal: Ideal::from_gens(&ring, basis.clone()), basis, codim, degree, provenance })
    }

    pub fn parse(ring: &RingRef, gens: &[&str]) -> Result<PrimeCertificate> {
        PrimeCertificate::declare(&Ideal::parse(ring, gens)?)
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    /// Multiplicity of R/P.
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Canonical key: the reduced Gröbner basis printed.
    pub fn key(&self) -> String {
        self.basis.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.ideal.contains(f)
    }

    /// Whether `j ⊆ P`.
    pub fn contains_ideal(&self, j: &Ideal) -> Result<bool> {
        self.ideal.contains_ideal(j)
    }
}

impl fmt::Display for PrimeCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.key())
    }
}

/// R/P is a field: Frobenius is injective on the finite F_p-algebra R/P
/// (so it is reduced) and its fixed space is one-dimensional (so it has a
/// single factor).
fn is_field_quotient(p: &Ideal) -> Result<bool> {
    let Some(basis) = p.standard_monomials(4096)? else { return Ok(false) };
    let ring = p.ring().clone();
    let field = ring.field();
    let n = basis.len();
    let index: std::collections::HashMap<Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let q = field.characteristic() as u64;
    let mut frob = DenseMatrix::zeros(*field, n, n);
    for (j, m) in basis.iter().enumerate() {
        let img = power_mod(&Polynomial::monomial(&ring, *m, 1), q, p)?;
        for &(mon, c) in img.terms() {
            frob.set(index[&mon], j, c);
        }
    }
    if frob.rank() != n {
        return Ok(false);
    }
    let mut shifted = frob.clone();
    for i in 0..n {
        let v = field.sub(shifted.get(i, i), 1);
        shifted.set(i, i, v);
    }
    Ok(n - shifted.rank() == 1)
}

fn power_mod(base: &Polynomial, mut e: u64, ideal: &Ideal) -> Result<Polynomial> {
    let mut acc = Polynomial::one(base.ring());
    let mut b = ideal.normal_form(base)?;
    while e > 0 {
        if e & 1 == 1 {
            acc = ideal.normal_form(&(&acc * &b))?;
        }
        e >>= 1;
        if e > 0 {
            b = ideal.normal_form(&(&b * &b))?;
        }
    }
    Ok(acc)
}

/// n-th Chern class: a formal sum of codim-n primes with integer
/// multiplicities. In codimension 1 the class is carried by a principal
/// representative instead, since nothing is factored.
#[derive(Debug, Clone)]
pub struct ChernClass {
    codim: usize,
    terms: BTreeMap<String, (PrimeCertificate, i64)>,
    principal_rep: Option<Polynomial>,
}

impl ChernClass {
    pub fn zero(codim: usize) -> ChernClass {
        ChernClass { codim, terms: BTreeMap::new(), principal_rep: None }
    }

    pub fn principal(rep: &Polynomial) -> ChernClass {
        ChernClass { codim: 1, terms: BTreeMap::new(), principal_rep: Some(rep.monic()) }
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn principal_rep(&self) -> Option<&Polynomial> {
        self.principal_rep.as_ref()
    }

    pub fn add_term(&mut self, p: &PrimeCertificate, mult: i64) {
        if mult == 0 {
            return;
        }
        let e = self.terms.entry(p.key()).or_insert_with(|| (p.clone(), 0));
        e.1 += mult;
        if e.1 == 0 {
            self.terms.remove(&p.key());
        }
    }

    /// Terms in key order, zero multiplicities omitted.
    pub fn terms(&self) -> impl Iterator<Item = (&PrimeCertificate, i64)> {
        self.terms.values().map(|(p, m)| (p, *m))
    }

    pub fn multiplicity(&self, p: &PrimeCertificate) -> i64 {
        self.terms.get(&p.key()).map_or(0, |t| t.1)
    }

    pub fn is_zero(&self) -> bool {
        match &self.principal_rep {
            Some(r) => r.is_unit(),
            None => self.terms.is_empty(),
        }
    }

    pub fn plus(&self, other: &ChernClass) -> ChernClass {
        let mut out = self.clone();
        for (p, m) in other.terms() {
            out.add_term(p, m);
        }
        out.principal_rep = match (&self.principal_rep, &other.principal_rep) {
            (Some(a), Some(b)) => Some((a * b).monic()),
            (a, b) => a.clone().or_else(|| b.clone()),
        };
        out
    }

    pub fn minus(&self, other: &ChernClass) -> ChernClass {
        assert!(other.principal_rep.is_none(), "cannot subtract principal classes");
        let mut out = self.clone();
        for (p, m) in other.terms() {
            out.add_term(p, -m);
        }
        out
    }

    /// Exact equality: associate representatives in codimension 1, equal
    /// prime-to-multiplicity maps otherwise.
    pub fn same_as(&self, other: &ChernClass) -> bool {
        if self.codim != other.codim {
            return false;
        }
        match (&self.principal_rep, &other.principal_rep) {
            (Some(a), Some(b)) => a.is_associate(b),
            (None, None) => {
                self.terms.len() == other.terms.len()
                    && self.terms.iter().all(|(k, (_, m))| other.terms.get(k).is_some_and(|t| t.1 == *m))
            }
            _ => false,
        }
    }
}

impl fmt::Display for ChernClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = &self.principal_rep {
            return write!(f, "[{r}]");
        }
        write!(f, "{{")?;
        for (i, (p, m)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}: {m}")?;
        }
        write!(f, "}}")
    }
}

/// Generators of ker(A^T): the dual module M* inside R^m.
fn dual_generators(m: &PresentedModule) -> Result<Matrix> {
    let a = m.relations().compact();
    if a.cols() == 0 {
        return Ok(Matrix::identity(m.ring(), m.rank()));
    }
    // torsion modules have no nonzero functionals
    if m.support_codim()? != Some(0) {
        return Ok(Matrix::zeros(m.ring(), m.rank(), 0));
    }
    Ok(syzygies(&a.transpose())?.compact())
}

/// T₁(M), the kernel of M → M**, with its inclusion into M.
pub fn torsion_submodule(m: &PresentedModule) -> Result<Subobject> {
    if m.support_codim()? != Some(0) {
        let id = Matrix::identity(m.ring(), m.rank());
        return Ok(Subobject { module: m.clone(), inclusion: ModuleMap::new(m.clone(), m.clone(), id)? });
    }
    let d = dual_generators(m)?;
    let free = PresentedModule::free(m.ring(), d.cols());
    ModuleMap::new(m.clone(), free, d.transpose())?.kernel()
}

/// M/T₁(M).
pub fn torsion_free_quotient(m: &PresentedModule) -> Result<PresentedModule> {
    let t = torsion_submodule(m)?;
    Ok(PresentedModule::new(m.relations().hcat(&t.inclusion.matrix).compact()))
}

/// M** with the canonical map M → M**. The hull is presented as a
/// submodule of R^k, k the number of generators of M*.
pub fn reflexive_hull(m: &PresentedModule) -> Result<(PresentedModule, ModuleMap)> {
    let ring = m.ring();
    let d = dual_generators(m)?;
    let k = d.cols();
    let s = syzygies(&d)?.compact();
    let w = if s.cols() == 0 { Matrix::identity(ring, k) } else { syzygies(&s.transpose())?.compact() };
    let hull = subquotient(&w, &Matrix::zeros(ring, k, 0))?;
    let coords = lift(&w, &d.transpose())?
        .ok_or_else(|| AlgebraError::Exactness("evaluation map does not land in the double dual".into()))?;
    let map = ModuleMap::new(m.clone(), hull.clone(), coords)?;
    Ok((hull, map))
}

/// Codimension of the support, r+1 for the zero module.
pub fn support_codim(m: &PresentedModule) -> Result<usize> {
    Ok(m.support_codim()?.unwrap_or(m.ring().nvars() + 1))
}

pub fn is_pseudo_null(m: &PresentedModule) -> Result<bool> {
    Ok(support_codim(m)? >= 2)
}

/// Generators of `{v : J^k v ⊆ im U for some k}` in the ambient of U.
pub fn module_saturation(u: &Matrix, j: &Ideal) -> Result<Matrix> {
    let gens: Vec<&Polynomial> = j.generators().iter().filter(|g| !g.is_zero()).collect();
    let ring = u.ring().clone();
    let m = u.rows();
    if gens.is_empty() {
        return Ok(Matrix::identity(&ring, m));
    }
    let mut cur = PresentedModule::with_rank(&ring, m, u.compact())?.reduced_relations()?;
    loop {
        ring.check_deadline()?;
        // v with g_t·v ∈ im(cur) for every generator g_t
        let t = gens.len();
        let s = cur.cols();
        let mut big = Matrix::zeros(&ring, m * t, m + t * s);
        for (b, g) in gens.iter().enumerate() {
            for i in 0..m {
                big.set(b * m + i, i, (*g).clone());
                for c in 0..s {
                    big.set(b * m + i, m + b * s + c, cur.get(i, c).clone());
                }
            }
        }
        let next = syzygies(&big)?.row_range(0, m).compact();
        let cur_mod = PresentedModule::new(cur.clone());
        if cur_mod.kills_columns(&next)? {
            return Ok(cur);
        }
        cur = PresentedModule::new(next.hcat(&cur)).reduced_relations()?;
    }
}

/// `(0 :_M J^∞)` with its inclusion into M.
pub fn saturation_submodule(m: &PresentedModule, j: &Ideal) -> Result<Subobject> {
    let u = module_saturation(m.relations(), j)?;
    let mut keep = Vec::new();
    for c in u.columns() {
        let c = m.normal_form(&c)?;
        if c.iter().any(|e| !e.is_zero()) && !keep.contains(&c) {
            keep.push(c);
        }
    }
    let g = Matrix::from_columns(m.ring(), m.rank(), &keep);
    let module = subquotient(&g, m.relations())?;
    Ok(Subobject { inclusion: ModuleMap::new(module.clone(), m.clone(), g)?, module })
}

/// T₂(M), the largest submodule supported in codimension at least 2.
///
/// A prime P of codimension h is associated to M only if Ext^h(M, R)_P ≠ 0,
/// so the elements supported in codimension ≥ 2 are exactly those killed by a
/// power of K = ann Ext²(M,R) ∩ … ∩ ann Ext^r(M,R).
pub fn pseudo_null_part(m: &PresentedModule) -> Result<Subobject> {
    let ring = m.ring().clone();
    if support_codim(m)? >= 2 {
        return Ok(Subobject { module: m.clone(), inclusion: ModuleMap::identity(m) });
    }
    let mut k = Ideal::unit(&ring);
    for i in 2..=ring.nvars() {
        let e = ext(i, m, None)?;
        if e.is_zero()? {
            continue;
        }
        k = k.intersection(&e.annihilator()?)?;
    }
    saturation_submodule(m, &k)
}

/// Generator of the characteristic ideal of T₁(M): gcd of Fitt₀(T₁(M)).
pub fn char_class_c1(m: &PresentedModule) -> Result<ChernClass> {
    let t = prune(&torsion_submodule(m)?.module).module;
    let rep = fitting_ideal(0, &t).generator_gcd()?;
    if rep.is_zero() {
        return Err(AlgebraError::Exactness("torsion submodule has zero Fitting ideal".into()));
    }
    Ok(ChernClass::principal(&rep))
}

/// length of N_P over R_P, or `None` if N_P does not have finite length.
pub fn local_length(n: &PresentedModule, p: &PrimeCertificate) -> Result<Option<u64>> {
    let ring = n.ring();
    // a generator of Fitt₀ outside P makes N_P = 0
    let fitt = fitting_ideal(0, n);
    for g in fitt.generators() {
        if !g.is_zero() && !p.contains(g)? {
            return Ok(Some(0));
        }
    }
    // h vanishing on every primary component of Fitt₀ not lying over P has
    // (hN)_P = N_P and hN supported on V(P), so e(hN) = length·e(R/P)
    let away = fitt.saturation(p.ideal())?;
    let mut h = None;
    for g in away.groebner_basis()? {
        if !p.contains(&g)? && h.as_ref().is_none_or(|b: &Polynomial| g.total_degree() < b.total_degree()) {
            h = Some(g);
        }
    }
    let Some(h) = h else { return Ok(None) };
    let gens = Matrix::identity(ring, n.rank()).scale(&h);
    let (dim, e) = match n.dim_k()? {
        // finite length: dim hN = dim N - dim N/hN, avoiding a syzygy computation
        Some(total) => {
            let rest = PresentedModule::new(n.relations().hcat(&gens)).dim_k()?.unwrap_or(0);
            let d = total - rest;
            if d == 0 { (-1, 0) } else { (0, d as i64) }
        }
        None => subquotient(&gens, n.relations())?.dimension_and_degree()?,
    };
    let top = ring.nvars() as i32 - p.codim() as i32;
    if dim < top {
        return Ok(Some(0));
    }
    if dim > top || e % p.degree() != 0 {
        return Err(AlgebraError::Exactness(format!(
            "P-torsion part has dimension {dim} and multiplicity {e}, inconsistent with {p}"
        )));
    }
    Ok(Some((e / p.degree()) as u64))
}

/// length of T₂(M)_P for a codimension-2 prime P.
pub fn localization_length(m: &PresentedModule, p: &PrimeCertificate) -> Result<u64> {
    if p.codim() != 2 {
        return Err(AlgebraError::precondition(format!("{p} has codimension {}, expected 2", p.codim())));
    }
    let t = pseudo_null_part(m)?.module;
    local_length(&t, p)?.ok_or_else(|| AlgebraError::Exactness("pseudo-null module has infinite local length".into()))
}

/// t₂ of a module already known to be supported in codimension ≥ 2, over the
/// given candidate primes, with a multiplicity check that they cover the
/// whole support.
pub fn c2_of_pseudo_null(t: &PresentedModule, candidates: &[PrimeCertificate]) -> Result<ChernClass> {
    let r = t.ring().nvars() as i32;
    let mut class = ChernClass::zero(2);
    let (dim, e) = t.dimension_and_degree()?;
    if dim < 0 {
        return Ok(class);
    }
    if dim > r - 2 {
        return Err(AlgebraError::precondition(format!("module has support of codimension {}", r - dim)));
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut covered = 0i64;
    for p in candidates {
        if p.codim() != 2 || !seen.insert(p.key()) {
            continue;
        }
        let len = local_length(t, p)?
            .ok_or_else(|| AlgebraError::Exactness("pseudo-null module has infinite local length".into()))?;
        class.add_term(p, len as i64);
        covered += len as i64 * p.degree();
    }
    let expected = if dim == r - 2 { e } else { 0 };
    if covered != expected {
        return Err(AlgebraError::Coverage(format!(
            "declared primes account for multiplicity {covered} of {expected}"
        )));
    }
    Ok(class)
}

/// t₂(M) = c₂(T₂(M)) over the candidate primes.
pub fn chern_t2(m: &PresentedModule, candidates: &[PrimeCertificate]) -> Result<ChernClass> {
    let t = pseudo_null_part(m)?.module;
    c2_of_pseudo_null(&t, candidates)
}

/// M_P free of rank ℓ: Fitt_{ℓ-1}(M) vanishes (R is a domain) and Fitt_ℓ(M) ⊄ P.
pub fn is_free_at(m: &PresentedModule, p: &PrimeCertificate, l: usize) -> Result<bool> {
    if l > 0 && !fitting_ideal(l - 1, m).is_zero() {
        return Ok(false);
    }
    let upper = fitting_ideal(l, m);
    Ok(!p.contains_ideal(&upper)?)
}

/// gcd of a list of polynomials, monic; zero when all are zero.
pub fn gcd_all(polys: &[Polynomial], ring: &RingRef) -> Result<Polynomial> {
    let mut acc = Polynomial::zero(ring);
    for f in polys {
        if acc.is_one() {
            break;
        }
        acc = if acc.is_zero() { f.monic() } else { poly_gcd(&acc, f)? };
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Ring, RingSpec};

    fn ring(p: u64, n: usize) -> RingRef {
        Ring::new(RingSpec::grevlex(p, n)).unwrap()
    }

    fn cyc(r: &RingRef, g: &[&str]) -> PresentedModule {
        PresentedModule::cyclic(&Ideal::parse(r, g).unwrap())
    }

    fn mat(r: &RingRef, rows: usize, cols: usize, cells: &[&str]) -> PresentedModule {
        PresentedModule::new(Matrix::parse(r, rows, cols, cells).unwrap())
    }

    #[test]
    fn prime_certificates() {
        let r = ring(5, 2);
        let p = PrimeCertificate::parse(&r, &["x1", "x2 - 1"]).unwrap();
        assert_eq!((p.codim(), p.provenance(), p.degree()), (2, Provenance::LinearFormGenerated, 1));
        // x^2 - 2 is irreducible mod 5
        let q = PrimeCertificate::parse(&r, &["x1^2 - 2", "x2"]).unwrap();
        assert_eq!((q.codim(), q.provenance(), q.degree()), (2, Provenance::MaximalInTwoVars, 2));
        let not_prime = PrimeCertificate::parse(&r, &["x1^2 - 1", "x2"]).unwrap();
        assert_eq!(not_prime.provenance(), Provenance::UserDeclared);
        let nonreduced = PrimeCertificate::parse(&r, &["x1^2", "x2"]).unwrap();
        assert_eq!(nonreduced.provenance(), Provenance::UserDeclared);
        assert!(PrimeCertificate::parse(&r, &["1"]).is_err());
    }

    #[test]
    fn torsion_examples() {
        let r = ring(5, 2);
        let m = cyc(&r, &["x1"]).direct_sum(&PresentedModule::free(&r, 1));
        let t = torsion_submodule(&m).unwrap();
        assert!(fitting_ideal(0, &t.module).equals(&Ideal::parse(&r, &["x1"]).unwrap()).unwrap());
        assert!(torsion_submodule(&PresentedModule::free(&r, 2)).unwrap().module.is_zero().unwrap());
        let koszul = mat(&r, 2, 1, &["x1", "x2"]);
        assert!(torsion_submodule(&koszul).unwrap().module.is_zero().unwrap());
    }

    #[test]
    fn reflexive_hulls() {
        let r = ring(5, 2);
        // the ideal (x, y) presented by its Koszul relation
        let ideal = mat(&r, 2, 1, &["-x2", "x1"]);
        let (hull, map) = reflexive_hull(&ideal).unwrap();
        assert_eq!(prune(&hull).module.rank(), 1);
        assert!(prune(&hull).module.relations().is_zero());
        assert!(map.is_injective().unwrap());
        assert_eq!(support_codim(&map.cokernel().module).unwrap(), 2);
        let tors = cyc(&r, &["x1"]);
        assert!(reflexive_hull(&tors).unwrap().0.is_zero().unwrap());
    }

    #[test]
    fn support_codims() {
        let r = ring(5, 2);
        assert_eq!(support_codim(&cyc(&r, &["x1"])).unwrap(), 1);
        assert_eq!(support_codim(&cyc(&r, &["x1", "x2"])).unwrap(), 2);
        assert_eq!(support_codim(&cyc(&r, &["x1^2", "x1*x2"])).unwrap(), 1);
        assert_eq!(support_codim(&PresentedModule::zero(&r)).unwrap(), 3);
    }

    #[test]
    fn pseudo_null_parts() {
        let r = ring(5, 2);
        let m = cyc(&r, &["x1", "x2"]);
        let t = pseudo_null_part(&m).unwrap();
        assert_eq!(t.module.dim_k().unwrap(), Some(1));
        assert!(pseudo_null_part(&cyc(&r, &["x1"])).unwrap().module.is_zero().unwrap());
        let m = cyc(&r, &["x1^2", "x1*x2"]);
        let t = pseudo_null_part(&m).unwrap();
        assert_eq!(t.module.dim_k().unwrap(), Some(1));
        assert!(t.inclusion.matrix.get(0, 0).is_associate(&Polynomial::parse(&r, "x1").unwrap()));
    }

    #[test]
    fn first_chern_classes() {
        let r = ring(5, 2);
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        assert!(char_class_c1(&cyc(&r, &["x1^2*x2"])).unwrap().principal_rep().unwrap().is_associate(&p("x1^2*x2")));
        let s = cyc(&r, &["x1"]).direct_sum(&cyc(&r, &["x2"]));
        assert!(char_class_c1(&s).unwrap().principal_rep().unwrap().is_associate(&p("x1*x2")));
        let d = mat(&r, 2, 2, &["x1", "0", "0", "x1 + x2"]);
        assert!(char_class_c1(&d).unwrap().same_as(&ChernClass::principal(&p("x1^2 + x1*x2"))));
        assert!(char_class_c1(&PresentedModule::free(&r, 1)).unwrap().is_zero());
    }

    #[test]
    fn localization_lengths() {
        let r = ring(5, 2);
        let origin = PrimeCertificate::parse(&r, &["x1", "x2"]).unwrap();
        assert_eq!(localization_length(&cyc(&r, &["x1", "x2"]), &origin).unwrap(), 1);
        assert_eq!(localization_length(&cyc(&r, &["x1^2", "x2"]), &origin).unwrap(), 2);
        let two = cyc(&r, &["x1", "x2"]).direct_sum(&cyc(&r, &["x1 - 1", "x2"]));
        assert_eq!(localization_length(&two, &origin).unwrap(), 1);
        let irr = PrimeCertificate::parse(&r, &["x1^2 - 2", "x2"]).unwrap();
        assert_eq!(localization_length(&cyc(&r, &["x1^2 - 2", "x2^2"]), &irr).unwrap(), 2);
    }

    #[test]
    fn second_chern_classes() {
        let r = ring(5, 2);
        let origin = PrimeCertificate::parse(&r, &["x1", "x2"]).unwrap();
        let c = chern_t2(&cyc(&r, &["x1^2", "x1*x2"]), std::slice::from_ref(&origin)).unwrap();
        assert_eq!(c.multiplicity(&origin), 1);
        assert!(chern_t2(&PresentedModule::free(&r, 2), std::slice::from_ref(&origin)).unwrap().is_zero());
        let c = chern_t2(&cyc(&r, &["x1", "x2^2"]), std::slice::from_ref(&origin)).unwrap();
        assert_eq!(c.multiplicity(&origin), 2);
        let other = PrimeCertificate::parse(&r, &["x1 - 1", "x2"]).unwrap();
        let two = cyc(&r, &["x1", "x2"]).direct_sum(&cyc(&r, &["x1 - 1", "x2"]));
        assert!(matches!(chern_t2(&two, std::slice::from_ref(&origin)), Err(AlgebraError::Coverage(_))));
        let c = chern_t2(&two, &[origin.clone(), other.clone()]).unwrap();
        assert_eq!((c.multiplicity(&origin), c.multiplicity(&other)), (1, 1));
    }

    #[test]
    fn three_variable_lengths() {
        let r = ring(7, 3);
        let line = PrimeCertificate::parse(&r, &["x1", "x2"]).unwrap();
        let m = cyc(&r, &["x1^2", "x2"]).direct_sum(&cyc(&r, &["x1", "x2", "x3"]));
        assert_eq!(local_length(&m, &line).unwrap(), Some(2));
        let c = chern_t2(&m, std::slice::from_ref(&line)).unwrap();
        assert_eq!(c.multiplicity(&line), 2);
        let plane = cyc(&r, &["x1"]);
        assert_eq!(local_length(&plane, &line).unwrap(), None);
    }

    #[test]
    fn freeness() {
        let r = ring(5, 2);
        let m = cyc(&r, &["x1"]).direct_sum(&PresentedModule::free(&r, 1));
        assert!(is_free_at(&m, &PrimeCertificate::parse(&r, &["x1 - 1", "x2"]).unwrap(), 1).unwrap());
        assert!(!is_free_at(&m, &PrimeCertificate::parse(&r, &["x1", "x2"]).unwrap(), 1).unwrap());
        let d = mat(&r, 2, 2, &["x1", "0", "0", "x2"]);
        assert!(!is_free_at(&d, &PrimeCertificate::parse(&r, &["x1", "x2 - 1"]).unwrap(), 1).unwrap());
        assert!(is_free_at(&PresentedModule::free(&r, 2), &PrimeCertificate::parse(&r, &["x1", "x2"]).unwrap(), 2).unwrap());
    }
}
