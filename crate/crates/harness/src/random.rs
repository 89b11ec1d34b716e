//! Seeded random scenarios. Polynomials are drawn from pools of lines so that
//! every codimension-two support point is rational and discoverable.

use chernlab_core::exterior::{ExteriorScenario, SubmodulePair};
use chernlab_core::ideal::Ideal;
use chernlab_core::matrix::Matrix;
use chernlab_core::module::PresentedModule;
use chernlab_core::monomial::Monomial;
use chernlab_core::poly::Polynomial;
use chernlab_core::ring::{Ring, RingRef, RingSpec};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scenario::{
    rows_of, ExteriorSpec, GroebnerSpec, InvariantSpec, Kind, ModuleSpec, PairSpec, Rows, Scenario,
};

const ATTEMPTS: usize = 64;

/// Per-instance seed derived from a suite seed (splitmix64), kept below 2^63
/// so it fits a TOML integer.
pub fn instance_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    (z ^ (z >> 31)) >> 1
}

struct Gen {
    rng: ChaCha8Rng,
    ring: RingRef,
}

impl Gen {
    fn new(seed: u64, primes: &[u64], nvars: usize) -> Gen {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = *primes.choose(&mut rng).expect("nonempty");
        let ring = Ring::new(RingSpec::grevlex(p, nvars)).expect("valid ring");
        Gen { rng, ring }
    }

    fn p(&self) -> u64 {
        self.ring.characteristic() as u64
    }

    fn scalar(&mut self) -> i64 {
        self.rng.gen_range(0..self.p()) as i64
    }

    fn nonzero(&mut self) -> i64 {
        self.rng.gen_range(1..self.p()) as i64
    }

    fn c(&self, v: i64) -> Polynomial {
        Polynomial::constant(&self.ring, v)
    }

    fn random_constant(&mut self) -> Polynomial {
        let v = self.scalar();
        self.c(v)
    }

    fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(&self.ring, i)
    }

    /// x − a, y − b or x + cy + d
    fn line(&mut self) -> Polynomial {
        let (x, y) = (self.var(0), self.var(1));
        match self.rng.gen_range(0..3) {
            0 => &x - &self.random_constant(),
            1 => &y - &self.random_constant(),
            _ => {
                let c = self.nonzero();
                &(&x + &(&self.c(c) * &y)) + &self.random_constant()
            }
        }
    }

    fn lines(&mut self, lo: usize, hi: usize) -> Polynomial {
        let k = self.rng.gen_range(lo..=hi);
        let mut f = self.c(1);
        for _ in 0..k {
            f = &f * &self.line();
        }
        f
    }

    fn point(&mut self) -> (i64, i64) {
        (self.scalar(), self.scalar())
    }

    fn point_ideal(&self, (a, b): (i64, i64)) -> Vec<Polynomial> {
        vec![&self.var(0) - &self.c(a), &self.var(1) - &self.c(b)]
    }

    /// Sparse polynomial with up to `terms` terms of degree ≤ `deg`.
    fn sparse(&mut self, deg: u32, terms: usize) -> Polynomial {
        let n = self.ring.nvars();
        let mut out = Vec::new();
        for _ in 0..self.rng.gen_range(1..=terms) {
            let d = self.rng.gen_range(0..=deg);
            let mut e = vec![0u16; n];
            for _ in 0..d {
                e[self.rng.gen_range(0..n)] += 1;
            }
            out.push((Monomial::from_exponents(&e), self.nonzero() as u32));
        }
        Polynomial::from_terms(&self.ring, out)
    }

    fn maybe_zero(&mut self, deg: u32, terms: usize, zero_prob: f64) -> Polynomial {
        if self.rng.gen_bool(zero_prob) {
            Polynomial::zero(&self.ring)
        } else {
            self.sparse(deg, terms)
        }
    }

    fn mat(&self, rows: usize, cols: usize, cells: Vec<Polynomial>) -> Matrix {
        let rows_v: Vec<Vec<Polynomial>> = cells.chunks(cols.max(1)).map(|c| c.to_vec()).collect();
        if cols == 0 || rows == 0 {
            return Matrix::zeros(&self.ring, rows, cols);
        }
        Matrix::from_rows(&self.ring, rows_v).expect("rectangular")
    }
}

fn spec_of(ring: &RingRef, kind: Kind, seed: u64) -> Scenario {
    let mut s = Scenario::new(kind, ring.spec());
    s.seed = Some(seed);
    s
}

/// Up to three sparse generators of degree ≤ 4 in two or three variables.
pub fn groebner_instance(seed: u64) -> Scenario {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nvars = rng.gen_range(2..=3);
    let mut g = Gen::new(rng.gen(), &[2, 5, 101], nvars);
    let k = g.rng.gen_range(1..=3);
    let gens: Vec<String> = (0..k).map(|_| g.sparse(4, 4).to_string()).collect();
    let mut s = spec_of(&g.ring, Kind::Groebner, seed);
    s.groebner = Some(GroebnerSpec { generators: gens, membership_degree: Some(6), module: None });
    s
}

/// A random presentation together with a perturbed presentation of the same module.
pub fn fitting_instance(seed: u64) -> Scenario {
    let mut g = Gen::new(seed, &[5, 7, 101], 2);
    let m = g.rng.gen_range(1..=3);
    let c = g.rng.gen_range(1..=3);
    let cells: Vec<Polynomial> = (0..m * c).map(|_| g.maybe_zero(2, 2, 0.3)).collect();
    let a = g.mat(m, c, cells);
    let mut b = a.clone();
    for _ in 0..g.rng.gen_range(1..=3) {
        b = perturb(&mut g, &b);
    }
    let mut s = spec_of(&g.ring, Kind::Invariant, seed);
    s.invariant = Some(InvariantSpec {
        alternative: Some(ModuleSpec::of(&PresentedModule::new(b))),
        duality: false,
        free_rank: None,
        module: ModuleSpec::of(&PresentedModule::new(a)),
        primes: None,
    });
    s
}

fn perturb(g: &mut Gen, a: &Matrix) -> Matrix {
    let (m, c) = (a.rows(), a.cols());
    match g.rng.gen_range(0..4) {
        // new relation: a combination of existing ones
        0 if c > 0 => {
            let coeffs: Vec<Polynomial> = (0..c).map(|_| g.maybe_zero(1, 2, 0.3)).collect();
            let col = a.apply(&coeffs);
            a.hcat(&Matrix::from_columns(&g.ring, m, &[col]))
        }
        // new generator expressed through the old ones
        1 => {
            let ext = a.vcat(&Matrix::zeros(&g.ring, 1, c));
            let mut col: Vec<Polynomial> = (0..m).map(|_| -&g.maybe_zero(1, 2, 0.3)).collect();
            col.push(g.c(1));
            ext.hcat(&Matrix::from_columns(&g.ring, m + 1, &[col]))
        }
        // change of basis of the ambient free module
        2 if m > 1 => {
            let (i, j) = distinct(g, m);
            let q = g.sparse(1, 2);
            let mut u = Matrix::identity(&g.ring, m);
            u.set(i, j, q);
            u.mul(a)
        }
        // column operation
        _ if c > 1 => {
            let (i, j) = distinct(g, c);
            let q = g.sparse(1, 2);
            let mut v = Matrix::identity(&g.ring, c);
            v.set(j, i, q);
            a.mul(&v)
        }
        _ => {
            let mut cols = a.columns();
            cols.reverse();
            Matrix::from_columns(&g.ring, m, &cols)
        }
    }
}

fn distinct(g: &mut Gen, n: usize) -> (usize, usize) {
    let i = g.rng.gen_range(0..n);
    let j = (i + g.rng.gen_range(1..n)) % n;
    (i, j)
}

/// A finite-length module supported at a few declared primes, some of
/// residue degree two.
pub fn finite_length_instance(seed: u64, duality: bool) -> Scenario {
    let mut g = Gen::new(seed, &[5, 7, 101], 2);
    let mut primes: Vec<Vec<Polynomial>> = Vec::new();
    let mut points = Vec::new();
    for _ in 0..g.rng.gen_range(1..=3) {
        let pt = g.point();
        if !points.contains(&pt) {
            points.push(pt);
            primes.push(g.point_ideal(pt));
        }
    }
    if g.rng.gen_bool(0.3) {
        let c = non_square(g.p());
        let b = g.scalar();
        primes.push(vec![&g.var(0).pow(2) - &g.c(c), &g.var(1) - &g.c(b)]);
    }
    let mut j = Ideal::unit(&g.ring);
    for p in &primes {
        let e = g.rng.gen_range(1..=2);
        j = j.product(&Ideal::from_gens(&g.ring, p.clone()).power(e)).from_groebner_basis().expect("small ideal");
    }
    let k = g.rng.gen_range(1..=2);
    let mut rel = Matrix::zeros(&g.ring, k, 0);
    for i in 0..k {
        for f in j.generators() {
            let mut col = vec![Polynomial::zero(&g.ring); k];
            col[i] = f.clone();
            rel = rel.hcat(&Matrix::from_columns(&g.ring, k, &[col]));
        }
    }
    for _ in 0..g.rng.gen_range(0..=2) {
        let col: Vec<Polynomial> = (0..k).map(|_| g.maybe_zero(2, 2, 0.2)).collect();
        rel = rel.hcat(&Matrix::from_columns(&g.ring, k, &[col]));
    }
    let m = PresentedModule::new(rel.compact());
    let mut s = spec_of(&g.ring, Kind::Invariant, seed);
    s.invariant = Some(InvariantSpec {
        alternative: None,
        duality,
        free_rank: None,
        module: ModuleSpec::of(&m),
        primes: Some(primes.iter().map(|p| p.iter().map(|f| f.to_string()).collect()).collect()),
    });
    s
}

fn non_square(p: u64) -> i64 {
    (2..p).find(|&c| (1..p).all(|x| x * x % p != c)).expect("p is odd") as i64
}

/// Base of X: module, λ on it, and a recipe for submodule pairs.
enum Shape {
    /// R^ℓ with λ = Λ square
    Free,
    /// the maximal ideal (x − a, y − b) with λ its inclusion, scaled by u
    Ideal { u: Polynomial },
    /// R ⊕ (x − a, y − b) with the upper-right entry s
    Mixed { u1: Polynomial, s: Polynomial },
}

/// A random exterior scenario with ℓ ∈ {1, 2} and n ∈ {1, 2, 3}.
pub fn exterior_instance(seed: u64) -> Scenario {
    let mut g = Gen::new(seed, &[5, 7, 101], 2);
    for _ in 0..ATTEMPTS {
        if let Some(spec) = try_exterior(&mut g) {
            let mut s = spec_of(&g.ring, Kind::TheoremA, seed);
            s.exterior = Some(spec);
            return s;
        }
    }
    panic!("no valid exterior scenario for seed {seed}");
}

fn try_exterior(g: &mut Gen) -> Option<ExteriorSpec> {
    let l = g.rng.gen_range(1..=2);
    let n = g.rng.gen_range(1..=3);
    let (x, y) = (g.var(0), g.var(1));
    let ring = g.ring.clone();
    let zero = || Polynomial::zero(&ring);
    let (a, b) = g.point();
    let (xa, yb) = (&x - &g.c(a), &y - &g.c(b));
    let shape = match (l, g.rng.gen_range(0..3)) {
        (1, 0) => Shape::Ideal { u: g.lines(0, 1) },
        (2, 0) => Shape::Mixed { u1: g.lines(0, 1), s: g.maybe_zero(0, 1, 0.5) },
        _ => Shape::Free,
    };
    let (base_rel, base_lambda) = match &shape {
        Shape::Free if l == 1 => {
            let u = g.lines(0, 1);
            (g.mat(1, 0, vec![]), g.mat(1, 1, vec![u]))
        }
        Shape::Free => {
            let w = g.maybe_zero(1, 2, 0.5);
            let cells = vec![g.lines(0, 1), w, zero(), g.lines(0, 1)];
            (g.mat(2, 0, vec![]), g.mat(2, 2, cells))
        }
        Shape::Ideal { u } => (g.mat(2, 1, vec![-&yb, xa.clone()]), g.mat(1, 2, vec![u * &xa, u * &yb])),
        Shape::Mixed { u1, s } => (
            g.mat(3, 1, vec![zero(), -&yb, xa.clone()]),
            g.mat(2, 3, vec![u1.clone(), s * &xa, s * &yb, zero(), xa.clone(), yb.clone()]),
        ),
    };
    let base_rank = base_rel.rows();
    let torsion = if g.rng.gen_bool(0.3) { Some(g.lines(1, 2)) } else { None };
    let (rel, lambda) = match &torsion {
        Some(f) => (
            base_rel.block_diag(&g.mat(1, 1, vec![f.clone()])),
            base_lambda.hcat(&Matrix::zeros(&g.ring, l, 1)),
        ),
        None => (base_rel, base_lambda.clone()),
    };
    let rank = rel.rows();
    let mut pairs = Vec::new();
    // α_i through the base point make νQ(E)/(L̃)Q(E) nonzero once n ≥ 2
    let through_point = !matches!(shape, Shape::Free) && g.rng.gen_bool(0.4);
    for _ in 0..n {
        let alpha = if through_point {
            let t = g.random_constant();
            let line = match g.rng.gen_range(0..3) {
                0 => xa.clone(),
                1 => yb.clone(),
                _ => &xa + &(&t * &yb),
            };
            &line * &g.lines(0, 1)
        } else {
            g.lines(0, 2)
        };
        let (gens, h) = match &shape {
            Shape::Free => {
                let k = if l == 1 {
                    g.mat(1, 1, vec![alpha.clone()])
                } else {
                    let kappa = g.maybe_zero(1, 2, 0.5);
                    let beta = g.lines(0, 1);
                    g.mat(2, 2, vec![alpha.clone(), kappa, zero(), beta])
                };
                let c = if g.rng.gen_bool(0.7) {
                    Matrix::identity(&g.ring, l)
                } else {
                    let (p, q) = g.point();
                    let (xp, yq) = (&x - &g.c(p), &y - &g.c(q));
                    if l == 1 {
                        g.mat(1, 2, vec![xp, yq])
                    } else {
                        g.mat(2, 3, vec![g.c(1), zero(), zero(), zero(), xp, yq])
                    }
                };
                (k.mul(&c), base_lambda.mul(&k))
            }
            Shape::Ideal { u } => (Matrix::identity(&g.ring, 2).scale(&alpha), g.mat(1, 1, vec![u * &alpha])),
            Shape::Mixed { u1, s } => (
                Matrix::identity(&g.ring, 3).scale(&alpha),
                g.mat(2, 2, vec![u1.clone(), s.clone(), zero(), g.c(1)]).scale(&alpha),
            ),
        };
        let gens = if rank > base_rank { gens.vcat(&Matrix::zeros(&g.ring, rank - base_rank, gens.cols())) } else { gens };
        let j_basis = if l == 1 && g.rng.gen_bool(0.5) { None } else { Some(h) };
        pairs.push(SubmodulePair { i_gens: gens, j_basis });
    }
    let x_mod = PresentedModule::with_rank(&g.ring, rank, rel).ok()?;
    let spec = ExteriorSpec {
        lambda: rows_of(&lambda),
        pairs: pairs
            .iter()
            .map(|p| PairSpec { i_gens: rows_of(&p.i_gens), j_basis: p.j_basis.as_ref().map(rows_of) })
            .collect(),
        primes: None,
        x: ModuleSpec::of(&x_mod),
    };
    ExteriorScenario::new(x_mod, lambda, pairs, vec![]).ok()?;
    Some(spec)
}

/// ℓ = 1, X = F = R, I_i = (L_i) for a random pair sharing a random factor.
pub fn vanishing_instance(seed: u64) -> Scenario {
    let mut g = Gen::new(seed, &[5, 7, 101], 2);
    let common = g.lines(0, 1);
    let pair = |g: &mut Gen| -> Rows { vec![vec![(&common * &g.lines(0, 2)).to_string()]] };
    let first = pair(&mut g);
    let second = if g.rng.gen_bool(0.25) {
        vec![vec![(&Polynomial::parse(&g.ring, &first[0][0]).expect("own output") * &g.lines(0, 1)).to_string()]]
    } else {
        pair(&mut g)
    };
    let spec = ExteriorSpec {
        lambda: vec![vec!["1".into()]],
        pairs: vec![PairSpec { i_gens: first, j_basis: None }, PairSpec { i_gens: second, j_basis: None }],
        primes: None,
        x: ModuleSpec { rank: 1, relations: vec![] },
    };
    let mut s = spec_of(&g.ring, Kind::TheoremA, seed);
    s.exterior = Some(spec);
    s
}
