//! Scenario files: TOML with a fixed key order and canonical polynomial strings.

use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use chernlab_core::invariants::PrimeCertificate;
use chernlab_core::matrix::Matrix;
use chernlab_core::module::PresentedModule;
use chernlab_core::poly::Polynomial;
use chernlab_core::ring::{Limits, Ring, RingRef, RingSpec};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Groebner,
    Invariant,
    ExteriorLemma,
    ExteriorCorollary,
    #[serde(rename = "theorem-A")]
    TheoremA,
    #[serde(rename = "theorem-B")]
    TheoremB,
    #[serde(rename = "theorem-C")]
    TheoremC,
    RandomSuite,
}

impl Kind {
    pub fn name(&self) -> &'static str {
        match self {
            Kind::Groebner => "groebner",
            Kind::Invariant => "invariant",
            Kind::ExteriorLemma => "exterior-lemma",
            Kind::ExteriorCorollary => "exterior-corollary",
            Kind::TheoremA => "theorem-A",
            Kind::TheoremB => "theorem-B",
            Kind::TheoremC => "theorem-C",
            Kind::RandomSuite => "random-suite",
        }
    }
}

/// A matrix as its list of rows. With no rows given, `rank` of a module
/// supplies the row count.
pub type Rows = Vec<Vec<String>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub rank: usize,
    #[serde(default)]
    pub relations: Rows,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroebnerSpec {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<String>,
    /// monomials up to this degree are tested against the Macaulay oracle
    #[serde(skip_serializing_if = "Option::is_none")]
    pub membership_degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantSpec {
    /// another presentation of the same module, for Fitting invariance
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alternative: Option<ModuleSpec>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub duality: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub free_rank: Option<usize>,
    pub module: ModuleSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primes: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    pub i_gens: Rows,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j_basis: Option<Rows>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExteriorSpec {
    pub lambda: Rows,
    pub pairs: Vec<PairSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primes: Option<Vec<Vec<String>>>,
    pub x: ModuleSpec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoremBSpec {
    pub free_rank: usize,
    pub module: ModuleSpec,
    pub primes: Vec<Vec<String>>,
    pub submodules: Vec<Rows>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoremCSpec {
    /// right-hand modules; the snake-lemma cokernels when absent
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<Vec<ModuleSpec>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteSpec {
    pub count: usize,
    pub kind: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimitsSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_basis: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timeout_secs: Option<u64>,
}

impl LimitsSpec {
    pub fn to_limits(&self) -> Limits {
        let d = Limits::default();
        Limits {
            max_basis: self.max_basis.unwrap_or(d.max_basis),
            max_degree: self.max_degree.unwrap_or(d.max_degree),
            timeout: match self.timeout_secs {
                Some(0) => None,
                Some(s) => Some(Duration::from_secs(s)),
                None => d.timeout,
            },
        }
    }

    /// Values from `other` take precedence.
    pub fn overlay(&self, other: &LimitsSpec) -> LimitsSpec {
        LimitsSpec {
            max_basis: other.max_basis.or(self.max_basis),
            max_degree: other.max_degree.or(self.max_degree),
            timeout_secs: other.timeout_secs.or(self.timeout_secs),
        }
    }
}

fn is_false(b: &bool) -> bool {
    !*b
}

/// Keys are declared in sorted order so serialization is canonical.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub kind: Kind,
    pub ring: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exterior: Option<ExteriorSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub groebner: Option<GroebnerSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant: Option<InvariantSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limits: Option<LimitsSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<SuiteSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem_b: Option<TheoremBSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem_c: Option<TheoremCSpec>,
}

/// Input problems carry their own type so the CLI can map them to exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn input(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(InputError(msg.into()))
}

impl Scenario {
    pub fn new(kind: Kind, ring: &RingSpec) -> Scenario {
        Scenario {
            kind,
            ring: ring.short(),
            seed: None,
            exterior: None,
            groebner: None,
            invariant: None,
            limits: None,
            suite: None,
            theorem_b: None,
            theorem_c: None,
        }
    }

    pub fn parse(text: &str) -> Result<Scenario> {
        let s: Scenario = toml::from_str(text).map_err(|e| {
            let at = e
                .span()
                .map(|sp| {
                    let before = &text[..sp.start.min(text.len())];
                    let line = before.matches('\n').count() + 1;
                    let col = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
                    format!("line {line}, column {col}: ")
                })
                .unwrap_or_default();
            input(format!("{at}{}", e.message()))
        })?;
        Ok(s)
    }

    pub fn load(path: &std::path::Path) -> Result<Scenario> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| anyhow::anyhow!(InputError(format!("reading {}: {e}", path.display()))))?;
        Scenario::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn ring_spec(&self) -> Result<RingSpec> {
        RingSpec::parse_short(&self.ring).map_err(|e| input(e.to_string()))
    }

    pub fn build_ring(&self, overrides: &LimitsSpec) -> Result<RingRef> {
        let limits = self.limits.clone().unwrap_or_default().overlay(overrides).to_limits();
        Ring::with_limits(self.ring_spec()?, limits).map_err(|e| input(e.to_string()))
    }

    /// Reprints every polynomial in canonical form and serializes.
    pub fn canonicalize(&self) -> Result<Scenario> {
        let ring = self.build_ring(&LimitsSpec::default())?;
        let mut s = self.clone();
        s.ring = ring.spec().short();
        let canon_rows = |rows: &mut Rows| -> Result<()> {
            for row in rows.iter_mut() {
                for cell in row.iter_mut() {
                    *cell = canon_poly(&ring, cell)?;
                }
            }
            Ok(())
        };
        let canon_list = |list: &mut Vec<Vec<String>>| -> Result<()> {
            for gens in list.iter_mut() {
                for g in gens.iter_mut() {
                    *g = canon_poly(&ring, g)?;
                }
            }
            Ok(())
        };
        if let Some(g) = &mut s.groebner {
            for p in g.generators.iter_mut() {
                *p = canon_poly(&ring, p)?;
            }
            if let Some(m) = &mut g.module {
                canon_rows(&mut m.relations)?;
            }
        }
        if let Some(inv) = &mut s.invariant {
            canon_rows(&mut inv.module.relations)?;
            if let Some(a) = &mut inv.alternative {
                canon_rows(&mut a.relations)?;
            }
            if let Some(p) = &mut inv.primes {
                canon_list(p)?;
            }
        }
        if let Some(e) = &mut s.exterior {
            canon_rows(&mut e.lambda)?;
            canon_rows(&mut e.x.relations)?;
            for pair in e.pairs.iter_mut() {
                canon_rows(&mut pair.i_gens)?;
                if let Some(j) = &mut pair.j_basis {
                    canon_rows(j)?;
                }
            }
            if let Some(p) = &mut e.primes {
                canon_list(p)?;
            }
        }
        if let Some(b) = &mut s.theorem_b {
            canon_rows(&mut b.module.relations)?;
            canon_list(&mut b.primes)?;
            for g in b.submodules.iter_mut() {
                canon_rows(g)?;
            }
        }
        if let Some(c) = &mut s.theorem_c {
            if let Some(rhs) = &mut c.rhs {
                for m in rhs.iter_mut() {
                    canon_rows(&mut m.relations)?;
                }
            }
        }
        Ok(s)
    }

    pub fn to_text(&self) -> Result<String> {
        Ok(toml::to_string(self)?)
    }

    pub fn canonical_text(&self) -> Result<String> {
        self.canonicalize()?.to_text()
    }

    /// sha256 of the canonical text, hex encoded.
    pub fn digest(&self) -> Result<String> {
        Ok(hex::encode(Sha256::digest(self.canonical_text()?.as_bytes())))
    }

    /// The digest, or the digest of the uncanonicalized text when some entry
    /// does not parse.
    pub fn digest_or_raw(&self) -> String {
        self.digest()
            .or_else(|_| self.to_text().map(|t| hex::encode(Sha256::digest(t.as_bytes()))))
            .unwrap_or_default()
    }
}

fn canon_poly(ring: &RingRef, s: &str) -> Result<String> {
    Ok(parse_poly(ring, s)?.to_string())
}

pub fn parse_poly(ring: &RingRef, s: &str) -> Result<Polynomial> {
    Polynomial::parse(ring, s).map_err(|e| input(format!("polynomial `{s}`: {e}")))
}

pub fn matrix_from_rows(ring: &RingRef, rows: &Rows, nrows: Option<usize>) -> Result<Matrix> {
    if rows.is_empty() {
        return Ok(Matrix::zeros(ring, nrows.unwrap_or(0), 0));
    }
    if let Some(n) = nrows {
        if rows.len() != n {
            bail!(input(format!("matrix has {} rows, expected {n}", rows.len())));
        }
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        bail!(input("matrix rows have different lengths"));
    }
    let polys = rows
        .iter()
        .map(|r| r.iter().map(|c| parse_poly(ring, c)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(ring, polys)?)
}

pub fn rows_of(m: &Matrix) -> Rows {
    (0..m.rows()).map(|i| m.row(i).iter().map(|p| p.to_string()).collect()).collect()
}

impl ModuleSpec {
    pub fn build(&self, ring: &RingRef) -> Result<PresentedModule> {
        let rel = matrix_from_rows(ring, &self.relations, Some(self.rank))?;
        Ok(PresentedModule::with_rank(ring, self.rank, rel)?)
    }

    pub fn of(m: &PresentedModule) -> ModuleSpec {
        let relations = if m.relations().cols() == 0 { vec![] } else { rows_of(m.relations()) };
        ModuleSpec { rank: m.rank(), relations }
    }
}

pub fn build_primes(ring: &RingRef, list: &[Vec<String>]) -> Result<Vec<PrimeCertificate>> {
    list.iter()
        .map(|gens| {
            let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
            PrimeCertificate::parse(ring, &refs).map_err(|e| input(format!("prime {gens:?}: {e}")))
        })
        .collect()
}

pub fn prime_strings(p: &PrimeCertificate) -> Vec<String> {
    p.generators().iter().map(|g| g.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
kind = "theorem-A"
ring = "5:2:grevlex"

[exterior]
lambda = [["1"]]
primes = [["x2", "x1"]]

[exterior.x]
rank = 1

[[exterior.pairs]]
i_gens = [["x1"]]

[[exterior.pairs]]
i_gens = [["x2 + 0*x1"]]
"#;

    #[test]
    fn canonical_round_trip() {
        let s = Scenario::parse(SAMPLE).unwrap();
        let text = s.canonical_text().unwrap();
        let again = Scenario::parse(&text).unwrap().canonical_text().unwrap();
        assert_eq!(text, again);
        assert!(text.contains("i_gens = [[\"x2\"]]"));
        assert_eq!(s.digest().unwrap(), Scenario::parse(&text).unwrap().digest().unwrap());
    }

    #[test]
    fn parse_errors_locate_the_problem() {
        let err = Scenario::parse("kind = \"groebner\"\nring = 5\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2"), "{msg}");
        assert!(err.downcast_ref::<InputError>().is_some());
    }
}
