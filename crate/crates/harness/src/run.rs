//! Dispatch of a scenario to the engine and certificate assembly.

use chernlab_core::error::AlgebraError;
use chernlab_core::exterior::{
    canonical_theorem_c_rhs, certify_theorem_a, run_corollary, vanishing_equivalence, verify_theorem_b,
    verify_theorem_c, ExteriorScenario, PrimeVerdict, SubmodulePair,
};
use chernlab_core::groebner::{GroebnerBasis, ModuleOrderKind, ModuleSpace};
use chernlab_core::ideal::Ideal;
use chernlab_core::invariants::{
    c2_of_pseudo_null, char_class_c1, is_free_at, local_length, pseudo_null_part, support_codim,
    torsion_submodule,
};
use chernlab_core::module::{ext, fitting_ideal, prune, PresentedModule};
use chernlab_core::poly::Polynomial;
use chernlab_core::ring::RingRef;
use serde_json::{json, Map, Value};

use crate::certificate::{self as cert, Builder, Certificate, Status, ENGINE_VERSION};
use crate::oracle::{ideal_dimension, module_dimension, monomials_up_to, primary_length, MacaulayOracle};
use crate::primes::discover_primes;
use crate::scenario::{
    build_primes, matrix_from_rows, parse_poly, ExteriorSpec, InputError, Kind, LimitsSpec, Scenario,
};

/// Classifies an error into the exit-code contract.
pub fn classify(e: &anyhow::Error) -> Status {
    if e.downcast_ref::<InputError>().is_some() {
        return Status::InputError;
    }
    match e.downcast_ref::<AlgebraError>() {
        Some(AlgebraError::Parse { .. } | AlgebraError::Precondition(_) | AlgebraError::Coverage(_)) => {
            Status::InputError
        }
        Some(AlgebraError::Unbounded(_)) => Status::InputError,
        Some(AlgebraError::Hypothesis(_)) => Status::Hypothesis,
        Some(AlgebraError::ResourceLimit(_)) => Status::ResourceLimit,
        Some(AlgebraError::Exactness(_) | AlgebraError::DivisionFailed(_)) | None => Status::Fail,
    }
}

fn header(s: &Scenario) -> Map<String, Value> {
    let mut h = Map::new();
    h.insert("engine_version".into(), json!(ENGINE_VERSION));
    h.insert("kind".into(), json!(s.kind.name()));
    h.insert("ring".into(), json!(s.ring));
    h.insert("scenario_digest".into(), json!(s.digest_or_raw()));
    if let Some(seed) = s.seed {
        h.insert("seed".into(), json!(seed));
    }
    h
}

/// Runs one scenario. Errors become certificates with the matching status.
pub fn run_scenario(s: &Scenario, overrides: &LimitsSpec) -> Certificate {
    let mut b = Builder::default();
    let result = dispatch(s, overrides, &mut b);
    let head = header(s);
    match result {
        Ok(()) => {
            let status = if b.all_passed() { Status::Pass } else { Status::Fail };
            b.finish(head, status, None)
        }
        Err(e) => {
            let status = classify(&e);
            b.finish(head, status, Some(format!("{e:#}")))
        }
    }
}

fn dispatch(s: &Scenario, overrides: &LimitsSpec, b: &mut Builder) -> anyhow::Result<()> {
    let ring = s.build_ring(overrides)?;
    let missing = |what: &str| anyhow::anyhow!(InputError(format!("scenario kind `{}` needs a [{what}] table", s.kind.name())));
    match s.kind {
        Kind::Groebner => run_groebner(&ring, s.groebner.as_ref().ok_or_else(|| missing("groebner"))?, b),
        Kind::Invariant => run_invariant(&ring, s.invariant.as_ref().ok_or_else(|| missing("invariant"))?, b),
        Kind::ExteriorLemma | Kind::ExteriorCorollary | Kind::TheoremA => {
            run_exterior(&ring, s.kind, s.exterior.as_ref().ok_or_else(|| missing("exterior"))?, b)
        }
        Kind::TheoremB => run_theorem_b(&ring, s.theorem_b.as_ref().ok_or_else(|| missing("theorem_b"))?, b),
        Kind::TheoremC => {
            let e = s.exterior.as_ref().ok_or_else(|| missing("exterior"))?;
            run_theorem_c(&ring, e, s.theorem_c.as_ref().and_then(|c| c.rhs.as_ref()), b)
        }
        Kind::RandomSuite => {
            let spec = s.suite.as_ref().ok_or_else(|| missing("suite"))?;
            let summary = crate::suite::run_random_suite(&spec.kind, spec.count, s.seed.unwrap_or(0), overrides)?;
            b.check(format!("{} random {} instances pass", spec.count, spec.kind), summary.failures() == 0);
            b.put("summary", summary.to_json());
            Ok(())
        }
    }
}

fn run_groebner(ring: &RingRef, g: &crate::scenario::GroebnerSpec, b: &mut Builder) -> anyhow::Result<()> {
    if let Some(m) = &g.module {
        let rel = matrix_from_rows(ring, &m.relations, Some(m.rank))?;
        let space = ModuleSpace::new(ring, m.rank, ModuleOrderKind::PositionOverTerm);
        let gb = GroebnerBasis::compute(&space, &rel.to_vectors(&space))?;
        b.check("every S-vector reduces to zero", gb.verify());
        let basis: Vec<Value> = gb.elements().iter().map(|e| json!(space.components(e).iter().map(|p| p.to_string()).collect::<Vec<_>>())).collect();
        b.put("basis", Value::Array(basis));
        return Ok(());
    }
    let gens = g.generators.iter().map(|p| parse_poly(ring, p)).collect::<anyhow::Result<Vec<_>>>()?;
    let ideal = Ideal::new(ring, gens.clone())?;
    let space = ModuleSpace::new(ring, 1, ModuleOrderKind::PositionOverTerm);
    let vs: Vec<_> = gens.iter().map(|p| space.vector(std::slice::from_ref(p))).collect();
    let gb = GroebnerBasis::compute(&space, &vs)?;
    b.check("every S-polynomial reduces to zero", gb.verify());
    let basis = ideal.groebner_basis()?;
    b.put("basis", cert::polys(&basis));
    let leads = ideal.leading_monomials()?;
    let engine_dim = chernlab_core::hilbert::standard_monomial_count(&leads, ring.nvars());
    b.put("dim_k", json!(engine_dim));
    if let Some(d) = engine_dim {
        b.check("dimension agrees with enumeration", ideal_dimension(&ideal)? == d);
    }
    if let Some(bound) = g.membership_degree {
        let (ok, degree) = membership_agreement(ring, &ideal, &gens, bound)?;
        b.check(format!("membership of monomials up to degree {bound} matches the Macaulay oracle"), ok);
        b.put("macaulay_degree", json!(degree));
    }
    Ok(())
}

/// Compares engine membership with truncated Macaulay spans for all
/// monomials of degree ≤ bound. The truncation degree grows until every
/// engine-certified member is confirmed; spans never overshoot the ideal,
/// so a non-member reported by the engine must stay a non-member.
fn membership_agreement(ring: &RingRef, ideal: &Ideal, gens: &[Polynomial], bound: u32) -> anyhow::Result<(bool, u32)> {
    let monos = monomials_up_to(ring.nvars(), bound);
    let mut pending = Vec::new();
    let mut non_members = Vec::new();
    for m in monos {
        let f = Polynomial::monomial(ring, m, 1);
        if ideal.contains(&f)? {
            pending.push(f);
        } else {
            non_members.push(f);
        }
    }
    let maxgen = gens.iter().filter_map(|g| g.total_degree()).max().unwrap_or(0);
    let cap = macaulay_cap(ring.nvars(), bound, maxgen);
    let mut degree = bound.max(maxgen);
    loop {
        let oracle = MacaulayOracle::new(ring, gens, degree);
        if non_members.iter().any(|f| oracle.contains(f) == Some(true)) {
            return Ok((false, degree));
        }
        pending.retain(|f| oracle.contains(f) != Some(true));
        if pending.is_empty() {
            return Ok((true, degree));
        }
        if degree >= cap {
            return Ok((false, degree));
        }
        degree = (degree + 2).min(cap);
    }
}

fn macaulay_cap(nvars: usize, bound: u32, maxgen: u32) -> u32 {
    let extra = if nvars <= 2 { 6 * maxgen.max(1) } else { 3 * maxgen.max(1) };
    (bound + extra).max(bound + 4)
}

fn run_invariant(ring: &RingRef, inv: &crate::scenario::InvariantSpec, b: &mut Builder) -> anyhow::Result<()> {
    let m = inv.module.build(ring)?;
    let fitt: Vec<Ideal> = (0..=2).map(|k| fitting_ideal(k, &m)).collect();
    let fitt_gb = fitt.iter().map(|f| f.groebner_basis()).collect::<Result<Vec<_>, _>>()?;
    b.put("fitting", Value::Array(fitt_gb.iter().map(|g| cert::polys(g)).collect()));
    if let Some(alt) = &inv.alternative {
        let a = alt.build(ring)?;
        for (k, g) in fitt_gb.iter().enumerate() {
            b.check(format!("Fitt_{k} is presentation independent"), fitting_ideal(k, &a).groebner_basis()? == *g);
        }
    }
    let t1 = torsion_submodule(&m)?;
    b.put("t1", cert::module(&t1.module));
    b.put("c1", cert::chern(&char_class_c1(&m)?));
    b.put("support_codim", json!(support_codim(&m)?));
    let t2 = pseudo_null_part(&m)?.module;
    b.put("t2", cert::module(&t2));
    let finite = m.dim_k()?;
    let primes = match (&inv.primes, finite) {
        (Some(list), _) => Some(build_primes(ring, list)?),
        (None, _) if ring.nvars() == 2 => Some(discover_primes(ring, &[&t2])?),
        _ => None,
    };
    if let Some(primes) = &primes {
        b.put("primes", Value::Array(primes.iter().map(cert::prime).collect()));
        match c2_of_pseudo_null(&t2, primes) {
            Ok(c) => b.put("t2_class", cert::chern(&c)),
            // discovery only sees rational points; a declared list must cover
            Err(AlgebraError::Coverage(msg)) if inv.primes.is_none() => {
                b.put("t2_class", json!({"uncertified": msg}))
            }
            Err(e) => return Err(e.into()),
        }
    }
    if let Some(dim) = finite {
        let oracle_dim = module_dimension(&m)?;
        b.check("dimension agrees with enumeration", oracle_dim == dim);
        if let Some(primes) = &primes {
            let mut total = 0i64;
            let mut lengths = Vec::new();
            for p in primes.iter().filter(|p| p.codim() == 2) {
                let len = local_length(&m, p)?.unwrap_or(0);
                let brute = primary_length(&m, p)?;
                b.check(format!("local length at {p} matches the primary part"), brute == len);
                total += len as i64 * p.degree();
                lengths.push(json!({"prime": cert::prime(p), "length": len}));
            }
            b.put("local_lengths", Value::Array(lengths));
            if inv.primes.is_some() || total == oracle_dim as i64 {
                b.check("local lengths times residue degrees sum to the dimension", total == oracle_dim as i64);
            } else {
                // discovered primes miss the points without rational coordinates
                b.put("dimension_outside_rational_points", json!(oracle_dim as i64 - total));
            }
            if inv.duality {
                let e2 = ext(2, &m, None)?;
                let e2p = prune(&e2).module;
                b.put("ext2", cert::module(&e2p));
                b.check("dim Ext^2(M) = dim M", e2p.dim_k()? == Some(dim));
                b.check(
                    "t2(Ext^2(M)) = t2(M)",
                    c2_of_pseudo_null(&e2p, primes)?.same_as(&c2_of_pseudo_null(&m, primes)?),
                );
            }
        }
    } else if inv.duality {
        return Err(anyhow::anyhow!(InputError("the duality check needs a finite-length module".into())));
    }
    if let (Some(l), Some(primes)) = (inv.free_rank, &primes) {
        let mut v = Vec::new();
        for p in primes {
            v.push(json!({"prime": cert::prime(p), "free": is_free_at(&m, p, l)?}));
        }
        b.put("free_at", Value::Array(v));
    }
    Ok(())
}

pub fn build_exterior(ring: &RingRef, e: &ExteriorSpec) -> anyhow::Result<ExteriorScenario> {
    let x = e.x.build(ring)?;
    let lambda = matrix_from_rows(ring, &e.lambda, None)?;
    let mut pairs = Vec::new();
    for p in &e.pairs {
        let i_gens = matrix_from_rows(ring, &p.i_gens, Some(x.rank()))?;
        let j_basis = p.j_basis.as_ref().map(|j| matrix_from_rows(ring, j, Some(lambda.rows()))).transpose()?;
        pairs.push(SubmodulePair { i_gens, j_basis });
    }
    let primes = match &e.primes {
        Some(list) => build_primes(ring, list)?,
        None => vec![],
    };
    Ok(ExteriorScenario::new(x, lambda, pairs, primes)?)
}

fn run_exterior(ring: &RingRef, kind: Kind, e: &ExteriorSpec, b: &mut Builder) -> anyhow::Result<()> {
    let s = build_exterior(ring, e)?;
    let report = run_corollary(&s)?;
    let lemma_stage = |name: &str| {
        name.starts_with("lemma") || name.starts_with("theta0") || name.starts_with("L_tilde") || name.starts_with("N is")
    };
    for c in &report.checks {
        if kind != Kind::ExteriorLemma || lemma_stage(&c.name) {
            b.check(c.name.clone(), c.passed);
        }
    }
    b.put("theta0", cert::poly(&report.theta0));
    b.put("theta1", cert::poly(&report.theta1));
    b.put("L", cert::polys(&report.l));
    b.put("L_tilde", cert::polys(&report.l_tilde));
    b.put("theta", cert::poly(&report.theta));
    b.put("nu", cert::poly(&report.nu));
    b.put("N", cert::module(&report.n_module));
    b.put("exterior_quotient", cert::module(&report.exterior_quotient));
    b.put("lemma_kernel", cert::module(&report.lemma_kernel));
    if kind == Kind::ExteriorLemma {
        return Ok(());
    }
    b.put("T2_N", cert::module(&report.t2_n));
    b.put("T2_exterior", cert::module(&report.t2_exterior));
    b.put("error_C", cert::module(&report.error_c));
    b.put("tail", cert::module(&report.tail));
    if kind != Kind::TheoremA {
        return Ok(());
    }
    let reduced = report.reduced_l_module()?;
    let primes = match &e.primes {
        Some(_) => s.primes().to_vec(),
        None => discover_primes(ring, &[&reduced, &report.t2_exterior, &report.error_c, &report.tail])?,
    };
    let c = certify_theorem_a(report, &primes)?;
    b.put("primes", Value::Array(primes.iter().map(cert::prime).collect()));
    b.put("c2_left", cert::chern(&c.lhs));
    b.put(
        "c2_right_components",
        json!({"t2_exterior": cert::chern(&c.t2_exterior), "error_C": cert::chern(&c.c2_error), "tail": cert::chern(&c.c2_tail)}),
    );
    b.put("c2_right", cert::chern(&c.rhs));
    b.put("theorem_a_form", json!(c.theorem_a_form));
    let per: Vec<Value> = c
        .per_prime
        .iter()
        .map(|pc| json!({"prime": cert::prime(&pc.prime), "left": pc.left, "right": pc.right}))
        .collect();
    b.put("per_prime", Value::Array(per));
    b.check("second Chern classes agree prime by prime", c.identity_holds);
    if c.report.l.len() == 2 {
        let v = vanishing_equivalence(&c)?;
        b.check("c2 left side vanishes iff (L_1/theta, L_2/theta) is the unit ideal", v.lhs_trivial == v.reduced_unit);
        b.check("vanishing conditions are equivalent", v.consistent());
        b.put(
            "vanishing",
            json!({
                "lhs_trivial": v.lhs_trivial,
                "reduced_unit": v.reduced_unit,
                "one_divides_other": v.one_divides_other,
                "rhs_terms_trivial": v.rhs_terms_trivial,
            }),
        );
    }
    Ok(())
}

fn run_theorem_b(ring: &RingRef, t: &crate::scenario::TheoremBSpec, b: &mut Builder) -> anyhow::Result<()> {
    let m = t.module.build(ring)?;
    let gens = t
        .submodules
        .iter()
        .map(|rows| matrix_from_rows(ring, rows, Some(m.rank())))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let primes = build_primes(ring, &t.primes)?;
    let c = verify_theorem_b(&m, &gens, &primes, t.free_rank)?;
    b.put("L", cert::polys(&c.l));
    b.put("exterior_quotient", cert::module(&c.exterior_quotient));
    let verdicts: Vec<Value> = c
        .verdicts
        .iter()
        .map(|(p, v)| match v {
            PrimeVerdict::Excluded(why) => json!({"prime": cert::prime(p), "excluded": why}),
            PrimeVerdict::Compared { exterior, principal } => {
                json!({"prime": cert::prime(p), "exterior_length": exterior, "principal_length": principal})
            }
        })
        .collect();
    b.put("verdicts", Value::Array(verdicts));
    b.put("compared", json!(c.compared()));
    b.check("local lengths agree at every prime where M and the I_i are free", c.holds());
    Ok(())
}

fn run_theorem_c(
    ring: &RingRef,
    e: &ExteriorSpec,
    rhs: Option<&Vec<crate::scenario::ModuleSpec>>,
    b: &mut Builder,
) -> anyhow::Result<()> {
    let mut s = build_exterior(ring, e)?;
    let modules = match rhs {
        Some(list) => list.iter().map(|m| m.build(ring)).collect::<anyhow::Result<Vec<_>>>()?,
        None => match canonical_theorem_c_rhs(&s) {
            Ok(m) => m,
            Err(AlgebraError::Hypothesis(_)) if !coprime_l(&s)? => vec![],
            Err(err) => return Err(err.into()),
        },
    };
    if e.primes.is_none() {
        let mut pool: Vec<PresentedModule> = modules.clone();
        pool.push(l_quotient(&s)?);
        let refs: Vec<&PresentedModule> = pool.iter().collect();
        s = s.with_primes(discover_primes(ring, &refs)?);
    }
    let c = verify_theorem_c(&s, &modules)?;
    b.put("L", cert::polys(&c.l));
    b.put("coprime", json!(c.coprime));
    b.put("x_type_pseudo_null", json!(c.x_type_pseudo_null));
    b.put("rhs_modules", Value::Array(modules.iter().map(cert::module).collect()));
    b.put("primes", Value::Array(s.primes().iter().map(cert::prime).collect()));
    b.check("L_1, L_2 coprime iff the X-type modules are pseudo-null", c.equivalence_holds());
    match (&c.lhs, &c.rhs) {
        (Some(l), Some(r)) => {
            b.put("c2_left", cert::chern(l));
            b.put("c2_right", cert::chern(r));
            b.put("c2_right_components", Value::Array(c.rhs_terms.iter().map(cert::chern).collect()));
            b.check("second Chern classes agree prime by prime", c.identity_holds() == Some(true));
        }
        _ => b.put("declined", json!("L_1 and L_2 share a factor")),
    }
    Ok(())
}

fn l_values(s: &ExteriorScenario) -> anyhow::Result<Vec<Polynomial>> {
    s.i_generators()
        .iter()
        .map(|g| {
            let q = PresentedModule::new(s.x().relations().hcat(g));
            Ok(fitting_ideal(0, &prune(&q).module).generator_gcd()?)
        })
        .collect()
}

fn coprime_l(s: &ExteriorScenario) -> anyhow::Result<bool> {
    let l = l_values(s)?;
    Ok(l.len() == 2 && chernlab_core::ideal::poly_gcd(&l[0], &l[1])?.is_unit())
}

fn l_quotient(s: &ExteriorScenario) -> anyhow::Result<PresentedModule> {
    Ok(PresentedModule::cyclic(&Ideal::from_gens(s.ring(), l_values(s)?)))
}
