//! Finitely presented modules coker(A: R^s → R^m) and the homological
//! operations on them.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::automorphism::RingAutomorphism;
use crate::error::{AlgebraError, Result};
use crate::groebner::{GroebnerBasis, ModVec, ModuleOrderKind, ModuleSpace};
use crate::hilbert;
use crate::ideal::Ideal;
use crate::matrix::{subsets, Matrix};
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::RingRef;

/// coker of the relation matrix: `rank` generators, one relation per column.
#[derive(Clone)]
pub struct PresentedModule {
    ring: RingRef,
    rank: usize,
    relations: Matrix,
    gb: OnceLock<Arc<GroebnerBasis>>,
}

impl fmt::Debug for PresentedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coker {:?}", self.relations)
    }
}

fn pot(ring: &RingRef, rank: usize) -> ModuleSpace {
    ModuleSpace::new(ring, rank, ModuleOrderKind::PositionOverTerm)
}

impl PresentedModule {
    pub fn new(relations: Matrix) -> PresentedModule {
        PresentedModule {
            ring: relations.ring().clone(),
            rank: relations.rows(),
            relations,
            gb: OnceLock::new(),
        }
    }

    pub fn with_rank(ring: &RingRef, rank: usize, relations: Matrix) -> Result<PresentedModule> {
        if relations.rows() != rank {
            return Err(AlgebraError::precondition(format!(
                "relation matrix has {} rows but ambient rank is {rank}",
                relations.rows()
            )));
        }
        if **relations.ring() != **ring {
            return Err(AlgebraError::precondition("relation matrix lives in another ring"));
        }
        Ok(PresentedModule::new(relations))
    }

    pub fn free(ring: &RingRef, rank: usize) -> PresentedModule {
        PresentedModule::new(Matrix::zeros(ring, rank, 0))
    }

    pub fn zero(ring: &RingRef) -> PresentedModule {
        PresentedModule::free(ring, 0)
    }

    /// R/I
    pub fn cyclic(ideal: &Ideal) -> PresentedModule {
        let gens = ideal.generators();
        let m = Matrix::from_rows(ideal.ring(), vec![gens.to_vec()]).expect("one row");
        PresentedModule::new(m.compact())
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    fn basis(&self) -> Result<&GroebnerBasis> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let sp = pot(&self.ring, self.rank);
        let gb = Arc::new(GroebnerBasis::compute(&sp, &self.relations.to_vectors(&sp))?);
        let _ = self.gb.set(gb);
        Ok(self.gb.get().expect("just set"))
    }

    /// The reduced Gröbner basis of the relation span, as columns.
    pub fn reduced_relations(&self) -> Result<Matrix> {
        let gb = self.basis()?;
        Ok(Matrix::from_vectors(gb.space(), gb.elements()))
    }

    /// Reduced normal form of an ambient vector modulo the relations.
    pub fn normal_form(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        let gb = self.basis()?;
        Ok(gb.space().components(&gb.reduce(&gb.space().vector(v))))
    }

    /// Whether the ambient vector `v` is zero in the module.
    pub fn is_zero_element(&self, v: &[Polynomial]) -> Result<bool> {
        if self.rank == 0 {
            return Ok(true);
        }
        let gb = self.basis()?;
        Ok(gb.contains(&gb.space().vector(v)))
    }

    /// Whether every column of `m` is zero in the module.
    pub fn kills_columns(&self, m: &Matrix) -> Result<bool> {
        for c in m.columns() {
            if !self.is_zero_element(&c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_zero(&self) -> Result<bool> {
        if self.rank == 0 {
            return Ok(true);
        }
        Ok(self.basis()?.is_whole_space())
    }

    /// Same ambient rank and equal relation spans.
    pub fn same_presentation(&self, other: &PresentedModule) -> Result<bool> {
        Ok(self.rank == other.rank
            && self.kills_columns(&other.relations)?
            && other.kills_columns(&self.relations)?)
    }

    pub fn direct_sum(&self, other: &PresentedModule) -> PresentedModule {
        PresentedModule::new(self.relations.block_diag(&other.relations))
    }

    /// The module with the relation matrix transported entrywise through σ.
    pub fn transport(&self, sigma: &RingAutomorphism) -> PresentedModule {
        PresentedModule::new(self.relations.map(|e| sigma.apply(e)))
    }

    /// Hilbert numerator of the leading-term module under a degree-compatible
    /// term-over-position order, i.e. of the affine Hilbert function.
    pub fn hilbert_numerator(&self) -> Result<Vec<i64>> {
        let n = self.ring.nvars();
        let ring = if self.ring.order().is_degree_compatible() {
            self.ring.clone()
        } else {
            self.ring.with_order(MonomialOrder::grevlex(n))
        };
        let sp = ModuleSpace::new(&ring, self.rank, ModuleOrderKind::TermOverPosition);
        let vs: Vec<ModVec> = self
            .relations
            .columns()
            .iter()
            .map(|c| sp.vector(&c.iter().map(|e| e.change_ring(&ring)).collect::<Vec<_>>()))
            .collect();
        let gb = GroebnerBasis::compute(&sp, &vs)?;
        let leads = gb.leading_terms();
        let parts: Vec<Vec<i64>> = (0..self.rank)
            .map(|c| {
                let mons: Vec<_> = leads.iter().filter(|(_, k)| *k as usize == c).map(|(m, _)| *m).collect();
                hilbert::hilbert_numerator(&mons, n)
            })
            .collect();
        Ok(hilbert::add_numerators(&parts))
    }

    /// Krull dimension (-1 for the zero module) and multiplicity.
    pub fn dimension_and_degree(&self) -> Result<(i32, i64)> {
        Ok(hilbert::dimension_and_degree(&self.hilbert_numerator()?, self.ring.nvars()))
    }

    /// dim_k of the module, `None` when it is not finite-dimensional.
    pub fn dim_k(&self) -> Result<Option<u64>> {
        let (d, e) = self.dimension_and_degree()?;
        Ok(match d {
            -1 => Some(0),
            0 => Some(e as u64),
            _ => None,
        })
    }

    /// Codimension of the support; `None` for the zero module.
    pub fn support_codim(&self) -> Result<Option<usize>> {
        let (d, _) = self.dimension_and_degree()?;
        Ok((d >= 0).then(|| self.ring.nvars() - d as usize))
    }

    pub fn annihilator(&self) -> Result<Ideal> {
        let mut acc = Ideal::unit(&self.ring);
        for i in 0..self.rank {
            let mut e = Matrix::zeros(&self.ring, self.rank, 1);
            e.set(i, 0, Polynomial::one(&self.ring));
            let s = syzygies(&e.hcat(&self.relations))?;
            let ann = Ideal::from_gens(&self.ring, s.row(0));
            acc = if i == 0 { ann } else { acc.intersection(&ann)? };
        }
        Ok(acc)
    }
}

/// Generators of the kernel of `a` as a map of free modules R^s → R^m.
///
/// Columns are homogenized and the homogeneous syzygies dehomogenized, which
/// keeps the cofactor degrees from running away through degree falls.
pub fn syzygies(a: &Matrix) -> Result<Matrix> {
    let ring = a.ring();
    let Some(ext) = ring.homogenizing_extension() else {
        return affine_syzygies(a);
    };
    let (m, s) = (a.rows(), a.cols());
    let mut cols = Vec::with_capacity(s);
    for j in 0..s {
        let c = a.column(j);
        let d = c.iter().filter_map(|e| e.total_degree()).max().unwrap_or(0);
        cols.push(c.iter().map(|e| e.homogenize(&ext, d)).collect::<Vec<_>>());
    }
    let hs = affine_syzygies(&Matrix::from_columns(&ext, m, &cols))?;
    let mut out: Vec<Vec<Polynomial>> = Vec::new();
    for c in hs.columns() {
        let c: Vec<Polynomial> = c.iter().map(|e| e.dehomogenize(ring)).collect();
        if c.iter().any(|e| !e.is_zero()) && !out.contains(&c) {
            out.push(c);
        }
    }
    Ok(Matrix::from_columns(ring, s, &out))
}

fn affine_syzygies(a: &Matrix) -> Result<Matrix> {
    let (m, s) = (a.rows(), a.cols());
    let ring = a.ring();
    if s == 0 {
        return Ok(Matrix::zeros(ring, 0, 0));
    }
    let sp = pot(ring, m + s);
    let vs: Vec<ModVec> = (0..s)
        .map(|j| {
            let mut c = a.column(j);
            c.extend((0..s).map(|k| if k == j { Polynomial::one(ring) } else { Polynomial::zero(ring) }));
            sp.vector(&c)
        })
        .collect();
    let gb = GroebnerBasis::compute(&sp, &vs)?;
    let tail = pot(ring, s);
    let syz: Vec<ModVec> = gb
        .elements()
        .iter()
        .filter(|e| e.lead().is_some_and(|t| t.comp as usize >= m))
        .map(|e| e.tail_block(m as u32))
        .collect();
    Ok(Matrix::from_vectors(&tail, &syz))
}

/// Solves `A·c = b` for vectors `b` in the column span of `A`.
pub struct SpanSolver {
    rows: usize,
    cols: usize,
    ring: RingRef,
    span: GroebnerBasis,
    tagged: GroebnerBasis,
    homogenized: bool,
}

fn tagged_basis(a: &Matrix) -> Result<GroebnerBasis> {
    let (m, s) = (a.rows(), a.cols());
    let ring = a.ring();
    let sp = pot(ring, m + s);
    let vs: Vec<ModVec> = (0..s)
        .map(|j| {
            let mut c = a.column(j);
            c.extend((0..s).map(|k| if k == j { Polynomial::one(ring) } else { Polynomial::zero(ring) }));
            sp.vector(&c)
        })
        .collect();
    GroebnerBasis::compute(&sp, &vs)
}

/// Each column homogenized to its own top degree.
fn homogenize_columns(a: &Matrix, ext: &RingRef) -> Matrix {
    let cols: Vec<Vec<Polynomial>> = a
        .columns()
        .into_iter()
        .map(|c| {
            let d = c.iter().filter_map(|e| e.total_degree()).max().unwrap_or(0);
            c.iter().map(|e| e.homogenize(ext, d)).collect()
        })
        .collect();
    Matrix::from_columns(ext, a.rows(), &cols)
}

impl SpanSolver {
    /// Membership is decided over R; the coefficients come from the
    /// homogenized system, solving A^h c = h^k b^h for the least working k.
    pub fn new(a: &Matrix) -> Result<SpanSolver> {
        let ring = a.ring().clone();
        let span = GroebnerBasis::compute(&pot(&ring, a.rows()), &a.columns().iter().map(|c| pot(&ring, a.rows()).vector(c)).collect::<Vec<_>>())?;
        let (tagged, homogenized) = match ring.homogenizing_extension() {
            Some(ext) => (tagged_basis(&homogenize_columns(a, &ext))?, true),
            None => (tagged_basis(a)?, false),
        };
        Ok(SpanSolver { rows: a.rows(), cols: a.cols(), ring, span, tagged, homogenized })
    }

    pub fn solve(&self, b: &[Polynomial]) -> Option<Vec<Polynomial>> {
        assert_eq!(b.len(), self.rows);
        if !self.span.contains(&pot(&self.ring, self.rows).vector(b)) {
            return None;
        }
        let sp = self.tagged.space();
        let ext = &sp.ring;
        let d = b.iter().filter_map(|e| e.total_degree()).max().unwrap_or(0);
        let bh: Vec<Polynomial> =
            if self.homogenized { b.iter().map(|e| e.homogenize(ext, d)).collect() } else { b.to_vec() };
        let h = if self.homogenized { Polynomial::var(ext, ext.nvars() - 1) } else { Polynomial::one(ext) };
        let mut shift = Polynomial::one(ext);
        loop {
            let mut v: Vec<Polynomial> = bh.iter().map(|e| &shift * e).collect();
            v.extend((0..self.cols).map(|_| Polynomial::zero(ext)));
            let r = self.tagged.reduce(&sp.vector(&v));
            if r.terms().iter().all(|t| (t.comp as usize) >= self.rows) {
                let c = pot(ext, self.cols).components(&r.tail_block(self.rows as u32));
                return Some(
                    c.iter()
                        .map(|e| if self.homogenized { (-e).dehomogenize(&self.ring) } else { -e })
                        .collect(),
                );
            }
            // a member of the span over R lifts after finitely many powers of h
            assert!(self.homogenized, "span membership disagrees with the tagged basis");
            shift = &shift * &h;
        }
    }
}

/// `C` with `A·C = B`, or `None` if some column of `B` is not in the span of `A`.
pub fn lift(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    assert_eq!(a.rows(), b.rows());
    let solver = SpanSolver::new(a)?;
    let mut cols = Vec::with_capacity(b.cols());
    for col in b.columns() {
        match solver.solve(&col) {
            Some(c) => cols.push(c),
            None => return Ok(None),
        }
    }
    Ok(Some(Matrix::from_columns(a.ring(), a.cols(), &cols)))
}

/// (im G + im U)/im U, presented on the columns of G.
pub fn subquotient(g: &Matrix, u: &Matrix) -> Result<PresentedModule> {
    let k = g.cols();
    let s = syzygies(&g.hcat(u))?;
    Ok(PresentedModule::new(s.row_range(0, k).compact()))
}

/// `{v : f·v ∈ im U}` as a matrix of generators.
pub fn colon_by(u: &Matrix, f: &Polynomial) -> Result<Matrix> {
    let m = u.rows();
    let fi = Matrix::identity(u.ring(), m).scale(f);
    Ok(syzygies(&fi.hcat(u))?.row_range(0, m).compact())
}

/// Whether `im G ⊆ im H + im U` in a common ambient free module.
pub fn span_contains(h: &Matrix, u: &Matrix, g: &Matrix) -> Result<bool> {
    PresentedModule::new(h.hcat(u)).kills_columns(g)
}

/// A homomorphism between presented modules, given on ambient free modules.
#[derive(Debug, Clone)]
pub struct ModuleMap {
    pub source: PresentedModule,
    pub target: PresentedModule,
    pub matrix: Matrix,
}

impl ModuleMap {
    /// Checks that every source relation maps to zero in the target.
    pub fn new(source: PresentedModule, target: PresentedModule, matrix: Matrix) -> Result<ModuleMap> {
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(AlgebraError::precondition(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.rank(),
                source.rank()
            )));
        }
        if !target.kills_columns(&matrix.mul(source.relations()))? {
            return Err(AlgebraError::precondition("map does not respect the source relations"));
        }
        Ok(ModuleMap { source, target, matrix })
    }

    pub(crate) fn unchecked(source: PresentedModule, target: PresentedModule, matrix: Matrix) -> ModuleMap {
        debug_assert_eq!((matrix.rows(), matrix.cols()), (target.rank(), source.rank()));
        ModuleMap { source, target, matrix }
    }

    pub fn identity(m: &PresentedModule) -> ModuleMap {
        ModuleMap::unchecked(m.clone(), m.clone(), Matrix::identity(m.ring(), m.rank()))
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &ModuleMap) -> ModuleMap {
        ModuleMap::unchecked(first.source.clone(), self.target.clone(), self.matrix.mul(&first.matrix))
    }

    pub fn is_zero(&self) -> Result<bool> {
        self.target.kills_columns(&self.matrix)
    }

    pub fn kernel(&self) -> Result<Subobject> {
        let s = syzygies(&self.matrix.hcat(self.target.relations()))?;
        let k = s.row_range(0, self.source.rank());
        let mut keep = Vec::new();
        for c in k.columns() {
            let c = self.source.normal_form(&c)?;
            if c.iter().any(|e| !e.is_zero()) {
                keep.push(c);
            }
        }
        let gens = Matrix::from_columns(&self.source.ring, self.source.rank(), &keep);
        let module = subquotient(&gens, self.source.relations())?;
        let inclusion = ModuleMap::unchecked(module.clone(), self.source.clone(), gens);
        Ok(Subobject { module, inclusion })
    }

    pub fn cokernel(&self) -> Quotient {
        let module = PresentedModule::new(self.target.relations().hcat(&self.matrix).compact());
        let projection = ModuleMap::unchecked(
            self.target.clone(),
            module.clone(),
            Matrix::identity(&self.target.ring, self.target.rank()),
        );
        Quotient { module, projection }
    }

    /// The image on the columns of the map matrix, with the inclusion into the
    /// target and the surjection from the source.
    pub fn image(&self) -> Result<(Subobject, ModuleMap)> {
        let module = subquotient(&self.matrix, self.target.relations())?;
        let inclusion = ModuleMap::unchecked(module.clone(), self.target.clone(), self.matrix.clone());
        let onto = ModuleMap::unchecked(
            self.source.clone(),
            module.clone(),
            Matrix::identity(&self.source.ring, self.source.rank()),
        );
        Ok((Subobject { module, inclusion }, onto))
    }

    pub fn is_injective(&self) -> Result<bool> {
        self.kernel()?.module.is_zero()
    }

    pub fn is_surjective(&self) -> Result<bool> {
        self.cokernel().module.is_zero()
    }
}

/// A module together with its map into an ambient module.
#[derive(Debug, Clone)]
pub struct Subobject {
    pub module: PresentedModule,
    pub inclusion: ModuleMap,
}

#[derive(Debug, Clone)]
pub struct Quotient {
    pub module: PresentedModule,
    pub projection: ModuleMap,
}

/// ker g / im f for composable maps with `g ∘ f = 0`.
pub fn homology(f: &ModuleMap, g: &ModuleMap) -> Result<PresentedModule> {
    if !g.compose(f).is_zero()? {
        return Err(AlgebraError::precondition("composite of the two maps is not zero"));
    }
    let k = g.kernel()?;
    subquotient(&k.inclusion.matrix, &f.matrix.hcat(f.target.relations()))
}

/// Exactness of `M --f--> N --g--> P` at N.
pub fn is_exact_at(f: &ModuleMap, g: &ModuleMap) -> Result<bool> {
    if !g.compose(f).is_zero()? {
        return Ok(false);
    }
    let k = g.kernel()?;
    span_contains(&f.matrix, f.target.relations(), &k.inclusion.matrix)
}

/// A pruned presentation with the isomorphisms to and from the original.
#[derive(Debug, Clone)]
pub struct Pruned {
    pub module: PresentedModule,
    /// original generators expressed in the pruned ones
    pub to_pruned: Matrix,
    /// pruned generators expressed in the original ones
    pub from_pruned: Matrix,
}

/// Removes generators that a relation with a unit entry expresses in terms of
/// the others, and drops zero relations.
pub fn prune(m: &PresentedModule) -> Pruned {
    let ring = m.ring().clone();
    let f = ring.field();
    let mut rel = m.relations().compact();
    let mut to = Matrix::identity(&ring, m.rank());
    let mut from = Matrix::identity(&ring, m.rank());
    loop {
        let mut pivot = None;
        'search: for j in 0..rel.cols() {
            for i in 0..rel.rows() {
                let e = rel.get(i, j);
                if e.is_constant() && !e.is_zero() {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((i, j)) = pivot else { break };
        let n = rel.rows();
        let uinv = f.inv(rel.get(i, j).constant_coeff());
        let col = rel.column(j);
        let keep_rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
        let mut next_cols = Vec::new();
        for c in 0..rel.cols() {
            if c == j {
                continue;
            }
            let ci = rel.get(i, c);
            let factor = ci.scale(uinv);
            let v: Vec<Polynomial> = keep_rows
                .iter()
                .map(|&r| if factor.is_zero() { rel.get(r, c).clone() } else { rel.get(r, c) - &(&factor * &col[r]) })
                .collect();
            next_cols.push(v);
        }
        let mut pi = Matrix::zeros(&ring, n - 1, n);
        for (a, &r) in keep_rows.iter().enumerate() {
            pi.set(a, r, Polynomial::one(&ring));
            pi.set(a, i, -&col[r].scale(uinv));
        }
        let inc = Matrix::identity(&ring, n).select_columns(&keep_rows);
        to = pi.mul(&to);
        from = from.mul(&inc);
        rel = Matrix::from_columns(&ring, n - 1, &next_cols).compact();
    }
    Pruned { module: PresentedModule::new(rel), to_pruned: to, from_pruned: from }
}

/// F_0 ← F_1 ← … with `differentials[k]` the map F_{k+1} → F_k.
#[derive(Debug, Clone)]
pub struct FreeResolution {
    pub ranks: Vec<usize>,
    pub differentials: Vec<Matrix>,
    /// false when the computation stopped at the requested length with a
    /// nonzero next syzygy module
    pub complete: bool,
}

impl FreeResolution {
    pub fn length(&self) -> usize {
        self.differentials.len()
    }

    pub fn rank(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    /// The differential F_k → F_{k-1}, for k ≥ 1.
    pub fn differential(&self, k: usize) -> Option<&Matrix> {
        self.differentials.get(k.checked_sub(1)?)
    }

    /// Composites vanish and each image equals the kernel of the previous map.
    pub fn verify(&self) -> Result<bool> {
        for w in self.differentials.windows(2) {
            if !w[0].mul(&w[1]).is_zero() {
                return Ok(false);
            }
            let syz = syzygies(&w[0])?;
            if !PresentedModule::new(w[1].clone()).kills_columns(&syz)? {
                return Ok(false);
            }
        }
        if self.complete {
            if let Some(last) = self.differentials.last() {
                if syzygies(last)?.cols() != 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Free resolution by iterated syzygies, at most `length` differentials.
pub fn free_resolution(m: &PresentedModule, length: usize) -> Result<FreeResolution> {
    let mut ranks = vec![m.rank()];
    let mut differentials = Vec::new();
    let mut cur = m.relations().compact();
    while cur.cols() > 0 {
        if differentials.len() == length {
            return Ok(FreeResolution { ranks, differentials, complete: false });
        }
        m.ring().check_deadline()?;
        ranks.push(cur.cols());
        let next = irredundant(&syzygies(&cur)?)?;
        differentials.push(cur);
        cur = next;
    }
    Ok(FreeResolution { ranks, differentials, complete: true })
}

/// Drops columns lying in the span of the remaining ones, highest degree first.
pub fn irredundant(a: &Matrix) -> Result<Matrix> {
    let cols = a.compact().columns();
    let ring = a.ring();
    let degree = |c: &Vec<Polynomial>| c.iter().filter_map(|e| e.total_degree()).max().unwrap_or(0);
    let mut order: Vec<usize> = (0..cols.len()).collect();
    order.sort_by_key(|&j| std::cmp::Reverse((degree(&cols[j]), j)));
    let mut kept = vec![true; cols.len()];
    for j in order {
        kept[j] = false;
        let others: Vec<Vec<Polynomial>> = (0..cols.len()).filter(|&k| kept[k]).map(|k| cols[k].clone()).collect();
        let span = PresentedModule::new(Matrix::from_columns(ring, a.rows(), &others));
        kept[j] = !span.is_zero_element(&cols[j])?;
    }
    let out: Vec<Vec<Polynomial>> = (0..cols.len()).filter(|&k| kept[k]).map(|k| cols[k].clone()).collect();
    Ok(Matrix::from_columns(ring, a.rows(), &out))
}

/// Ext^i(M^σ, R) from a free resolution of the transported module, pruned.
pub fn ext(i: usize, m: &PresentedModule, twist: Option<&RingAutomorphism>) -> Result<PresentedModule> {
    let mt = match twist {
        Some(s) => m.transport(s),
        None => m.clone(),
    };
    let ring = m.ring().clone();
    let mt = PresentedModule::new(irredundant(mt.relations())?);
    let res = free_resolution(&mt, i + 1)?;
    let fi = res.rank(i);
    if fi == 0 {
        return Ok(PresentedModule::zero(&ring));
    }
    let kernel = match res.differential(i + 1) {
        Some(d) => syzygies(&d.transpose())?.compact(),
        None => Matrix::identity(&ring, fi),
    };
    let image = match i.checked_sub(1).and_then(|_| res.differential(i)) {
        Some(d) => d.transpose(),
        None => Matrix::zeros(&ring, fi, 0),
    };
    if kernel.cols() == 0 {
        return Ok(PresentedModule::zero(&ring));
    }
    Ok(prune(&subquotient(&kernel, &image)?).module)
}

fn subset_index(m: usize, l: usize) -> std::collections::HashMap<Vec<usize>, usize> {
    subsets(m, l).into_iter().enumerate().map(|(k, s)| (s, k)).collect()
}

/// ∧^ℓ M presented on the basis e_J, |J| = ℓ, with relations a ∧ e_S.
pub fn exterior_power(l: usize, m: &PresentedModule) -> Result<PresentedModule> {
    let n = m.rank();
    if l == 0 || l > n {
        return Err(AlgebraError::precondition(format!("exterior power {l} of a module with {n} generators")));
    }
    let ring = m.ring();
    let idx = subset_index(n, l);
    let big = idx.len();
    let rel = m.relations().compact();
    let mut cols: Vec<Vec<Polynomial>> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for a in rel.columns() {
        for s in subsets(n, l - 1) {
            let mut v = vec![Polynomial::zero(ring); big];
            for (r, ar) in a.iter().enumerate() {
                if ar.is_zero() || s.contains(&r) {
                    continue;
                }
                let below = s.iter().filter(|&&x| x < r).count();
                let mut t = s.clone();
                t.insert(below, r);
                let k = idx[&t];
                v[k] = if below % 2 == 0 { &v[k] + ar } else { &v[k] - ar };
            }
            if v.iter().any(|e| !e.is_zero()) && seen.insert(v.clone()) {
                cols.push(v);
            }
        }
    }
    Ok(PresentedModule::new(Matrix::from_columns(ring, big, &cols)))
}

/// ∧^ℓ φ, given by the compound matrix of ℓ-minors.
pub fn exterior_power_map(l: usize, phi: &ModuleMap) -> Result<ModuleMap> {
    let source = exterior_power(l, &phi.source)?;
    let target = exterior_power(l, &phi.target)?;
    Ok(ModuleMap::unchecked(source, target, phi.matrix.compound(l)))
}

/// Ideal of (m-k)-minors of the presentation matrix.
pub fn fitting_ideal(k: usize, m: &PresentedModule) -> Ideal {
    let m = &prune(m).module;
    let ring = m.ring();
    if k >= m.rank() {
        return Ideal::unit(ring);
    }
    let t = m.rank() - k;
    let mut rel = m.relations().compact();
    if rel.cols() >= 64 {
        // minors are indexed by column masks; thin out long presentations first
        if let Ok(thin) = irredundant(&rel) {
            rel = thin;
        }
    }
    if t > rel.cols() {
        return Ideal::zero(ring);
    }
    Ideal::from_gens(ring, rel.minors(t))
}

/// M/IM.
pub fn tensor_quotient(m: &PresentedModule, ideal: &Ideal) -> PresentedModule {
    let ring = m.ring();
    let n = m.rank();
    let mut extra = Vec::new();
    for g in ideal.generators().iter().filter(|g| !g.is_zero()) {
        for i in 0..n {
            let mut v = vec![Polynomial::zero(ring); n];
            v[i] = g.clone();
            extra.push(v);
        }
    }
    PresentedModule::new(m.relations().hcat(&Matrix::from_columns(ring, n, &extra)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Ring, RingSpec};

    fn ring(p: u64, n: usize) -> RingRef {
        Ring::new(RingSpec::grevlex(p, n)).unwrap()
    }

    fn mat(r: &RingRef, rows: usize, cols: usize, cells: &[&str]) -> Matrix {
        Matrix::parse(r, rows, cols, cells).unwrap()
    }

    #[test]
    fn syzygy_examples() {
        let r = ring(5, 2);
        let s = syzygies(&mat(&r, 1, 2, &["x1", "x2"])).unwrap();
        assert_eq!(s.cols(), 1);
        assert!(mat(&r, 1, 2, &["x1", "x2"]).mul(&s).is_zero());
        assert_eq!(s.get(0, 0).monic().to_string(), "x2");
        assert_eq!(syzygies(&Matrix::identity(&r, 2)).unwrap().cols(), 0);
        let a = mat(&r, 1, 2, &["x1^2", "x1*x2"]);
        let s = syzygies(&a).unwrap();
        assert_eq!(s.cols(), 1);
        assert!(a.mul(&s).is_zero());
        assert_eq!(s.get(1, 0).total_degree(), Some(1));
    }

    #[test]
    fn lifting() {
        let r = ring(7, 2);
        let a = mat(&r, 1, 2, &["x1", "x2"]);
        let b = mat(&r, 1, 1, &["x1^2 + 3*x2"]);
        let c = lift(&a, &b).unwrap().unwrap();
        assert_eq!(a.mul(&c), b);
        assert!(lift(&a, &mat(&r, 1, 1, &["1"])).unwrap().is_none());
    }

    #[test]
    fn kernels_and_cokernels() {
        let r = ring(5, 2);
        let rr = PresentedModule::free(&r, 1);
        let mx = ModuleMap::new(rr.clone(), rr.clone(), mat(&r, 1, 1, &["x1"])).unwrap();
        assert!(mx.kernel().unwrap().module.is_zero().unwrap());
        let q = mx.cokernel().module;
        assert!(q.same_presentation(&PresentedModule::cyclic(&Ideal::parse(&r, &["x1"]).unwrap())).unwrap());
        let rx = PresentedModule::cyclic(&Ideal::parse(&r, &["x1"]).unwrap());
        let proj = ModuleMap::new(rr.clone(), rx, Matrix::identity(&r, 1)).unwrap();
        let k = proj.kernel().unwrap();
        assert_eq!(k.inclusion.matrix.get(0, 0).to_string(), "x1");
        assert!(k.module.is_zero().is_ok());
        let d = mat(&r, 2, 2, &["x1", "0", "0", "x2"]);
        let f2 = PresentedModule::free(&r, 2);
        let phi = ModuleMap::new(f2.clone(), f2, d).unwrap();
        let c = phi.cokernel().module;
        assert_eq!(c.dimension_and_degree().unwrap(), (1, 2));
        let (im, _) = phi.image().unwrap();
        assert!(im.module.relations().is_zero());
        assert!(ModuleMap::new(rr.clone(), PresentedModule::cyclic(&Ideal::parse(&r, &["x1"]).unwrap()), mat(&r, 1, 1, &["1"])).is_ok());
        assert!(ModuleMap::new(PresentedModule::cyclic(&Ideal::parse(&r, &["x1"]).unwrap()), rr, mat(&r, 1, 1, &["1"])).is_err());
    }

    #[test]
    fn resolutions() {
        let r = ring(5, 2);
        let m = PresentedModule::cyclic(&Ideal::parse(&r, &["x1", "x2"]).unwrap());
        let res = free_resolution(&m, 2).unwrap();
        assert_eq!(res.ranks, vec![1, 2, 1]);
        assert!(res.complete && res.verify().unwrap());
        let f = free_resolution(&PresentedModule::free(&r, 3), 2).unwrap();
        assert_eq!(f.length(), 0);
        let m = PresentedModule::cyclic(&Ideal::parse(&r, &["x1^2", "x1*x2"]).unwrap());
        let res = free_resolution(&m, 2).unwrap();
        assert_eq!(res.ranks, vec![1, 2, 1]);
        assert!(res.verify().unwrap());
    }

    #[test]
    fn ext_examples() {
        let r = ring(5, 2);
        let m = PresentedModule::cyclic(&Ideal::parse(&r, &["x1", "x2"]).unwrap());
        let e2 = ext(2, &m, None).unwrap();
        assert_eq!(e2.dim_k().unwrap(), Some(1));
        assert!(e2.same_presentation(&m).unwrap());
        let rx = PresentedModule::cyclic(&Ideal::parse(&r, &["x1"]).unwrap());
        assert!(ext(0, &rx, None).unwrap().is_zero().unwrap());
        let rx2 = PresentedModule::cyclic(&Ideal::parse(&r, &["x1^2"]).unwrap());
        let e1 = ext(1, &rx2, None).unwrap();
        assert!(e1.same_presentation(&rx2).unwrap());
        assert!(ext(3, &m, None).unwrap().is_zero().unwrap());
        let free = PresentedModule::free(&r, 2);
        assert_eq!(ext(0, &free, None).unwrap().rank(), 2);
    }

    #[test]
    fn exterior_and_fitting() {
        let r = ring(5, 2);
        let f2 = PresentedModule::free(&r, 2);
        let w = exterior_power(2, &f2).unwrap();
        assert_eq!((w.rank(), w.relations().cols()), (1, 0));
        let d = PresentedModule::new(mat(&r, 2, 2, &["x1", "0", "0", "x2"]));
        let w = exterior_power(2, &d).unwrap();
        assert!(w.same_presentation(&PresentedModule::cyclic(&Ideal::parse(&r, &["x1", "x2"]).unwrap())).unwrap());
        assert!(fitting_ideal(0, &d).equals(&Ideal::parse(&r, &["x1*x2"]).unwrap()).unwrap());
        assert!(fitting_ideal(1, &d).equals(&Ideal::parse(&r, &["x1", "x2"]).unwrap()).unwrap());
        assert!(fitting_ideal(2, &d).is_unit().unwrap());
        let c = PresentedModule::cyclic(&Ideal::parse(&r, &["x1^2", "x1*x2"]).unwrap());
        assert!(fitting_ideal(0, &c).equals(&Ideal::parse(&r, &["x1^2", "x1*x2"]).unwrap()).unwrap());
        assert!(exterior_power(3, &d).is_err());
    }

    #[test]
    fn tensor_quotients() {
        let r = ring(5, 2);
        let rx = PresentedModule::cyclic(&Ideal::parse(&r, &["x1"]).unwrap());
        let t = tensor_quotient(&rx, &Ideal::parse(&r, &["x2"]).unwrap());
        assert!(t.same_presentation(&PresentedModule::cyclic(&Ideal::parse(&r, &["x1", "x2"]).unwrap())).unwrap());
        assert!(tensor_quotient(&rx, &Ideal::unit(&r)).is_zero().unwrap());
        let t = tensor_quotient(&PresentedModule::free(&r, 2), &Ideal::parse(&r, &["x1"]).unwrap());
        assert!(t.same_presentation(&PresentedModule::new(mat(&r, 2, 2, &["x1", "0", "0", "x1"]))).unwrap());
    }

    #[test]
    fn pruning() {
        let r = ring(5, 2);
        // e1 = -x1 e2 in the first relation leaves R/(x2^2 ... )
        let m = PresentedModule::new(mat(&r, 2, 2, &["1", "x2", "x1", "x2^2"]));
        let p = prune(&m);
        assert_eq!(p.module.rank(), 1);
        assert!(fitting_ideal(0, &p.module).equals(&fitting_ideal(0, &m)).unwrap());
        let iso = ModuleMap::new(m.clone(), p.module.clone(), p.to_pruned.clone()).unwrap();
        assert!(iso.is_injective().unwrap() && iso.is_surjective().unwrap());
        assert!(ModuleMap::new(p.module.clone(), m, p.from_pruned.clone()).is_ok());
    }

    #[test]
    fn annihilators_and_homology() {
        let r = ring(5, 2);
        let d = PresentedModule::new(mat(&r, 2, 2, &["x1", "0", "0", "x2"]));
        assert!(d.annihilator().unwrap().equals(&Ideal::parse(&r, &["x1*x2"]).unwrap()).unwrap());
        let rr = PresentedModule::free(&r, 1);
        let r2 = PresentedModule::free(&r, 2);
        let f = ModuleMap::new(rr.clone(), r2.clone(), mat(&r, 2, 1, &["-x2", "x1"])).unwrap();
        let g = ModuleMap::new(r2, rr, mat(&r, 1, 2, &["x1", "x2"])).unwrap();
        assert!(homology(&f, &g).unwrap().is_zero().unwrap());
        assert!(is_exact_at(&f, &g).unwrap());
    }
}
