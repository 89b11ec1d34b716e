use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use chernlab::certificate::{Certificate, Status};
use chernlab::oracle::{ideal_dimension, macaulay_membership, primary_length};
use chernlab::run::classify;
use chernlab::scenario::{build_primes, parse_poly, GroebnerSpec, InputError, Kind, LimitsSpec, Scenario};
use chernlab::{run_scenario, suite};
use chernlab_core::ideal::Ideal;
use chernlab_core::invariants::local_length;
use chernlab_core::module::PresentedModule;
use chernlab_core::ring::{Ring, RingSpec};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "chernlab", version, about = "Certificates for Chern-class identities of modules over F_p[x1..xr]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// ring as p:r:order, overriding the scenario file
    #[arg(long, global = true)]
    ring: Option<String>,
    /// seed recorded in the certificate (and used by `suite`)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// certificate path, or directory for `suite`
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// limits as max_basis=N,max_degree=N,timeout=SECS
    #[arg(long, global = true)]
    limits: Option<String>,
    /// print the certificate as canonical JSON
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced Gröbner basis of inline generators or a groebner scenario
    Groebner {
        /// scenario file; omit to give generators inline with --ring
        #[arg(long)]
        file: Option<PathBuf>,
        generators: Vec<String>,
    },
    /// Torsion, reflexive and pseudo-null invariants of an invariant scenario
    Invariants { file: PathBuf },
    /// The exterior-quotient sequences of an exterior scenario
    Exterior {
        file: PathBuf,
        /// stop after the three-term sequence
        #[arg(long)]
        lemma: bool,
    },
    /// Check one of the Chern-class identities
    Verify {
        #[arg(ignore_case = true)]
        which: Which,
        file: PathBuf,
    },
    /// Run a seeded random suite
    Suite {
        kind: String,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
    /// Brute-force cross-checks
    Oracle {
        check: OracleCheck,
        /// ideal generators
        #[arg(long = "gen", required = true)]
        generators: Vec<String>,
        /// polynomial to test for membership
        #[arg(long)]
        poly: Option<String>,
        /// Macaulay degree bound for membership
        #[arg(long, default_value_t = 10)]
        degree: u32,
        /// prime generators for the length check
        #[arg(long = "prime")]
        prime: Vec<String>,
    },
    /// Run any scenario file, dispatching on its kind
    Run { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    A,
    B,
    C,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleCheck {
    Dimension,
    Length,
    Membership,
}

fn parse_limits(s: &str) -> Result<LimitsSpec> {
    let mut l = LimitsSpec::default();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| anyhow!(InputError(format!("bad limit `{part}`"))))?;
        let bad = || anyhow!(InputError(format!("bad value in `{part}`")));
        match k.trim() {
            "max_basis" => l.max_basis = Some(v.trim().parse().map_err(|_| bad())?),
            "max_degree" => l.max_degree = Some(v.trim().parse().map_err(|_| bad())?),
            "timeout" | "timeout_secs" => l.timeout_secs = Some(v.trim().parse().map_err(|_| bad())?),
            other => return Err(anyhow!(InputError(format!("unknown limit `{other}`")))),
        }
    }
    Ok(l)
}

fn env_limits() -> Result<LimitsSpec> {
    let read = |name: &str| -> Result<Option<u64>> {
        match std::env::var(name) {
            Ok(v) => Ok(Some(v.trim().parse().map_err(|_| anyhow!(InputError(format!("{name} is not a number"))))?)),
            Err(_) => Ok(None),
        }
    };
    Ok(LimitsSpec {
        max_basis: read("CHERNLAB_MAX_BASIS")?.map(|v| v as usize),
        max_degree: read("CHERNLAB_MAX_DEGREE")?.map(|v| v as u32),
        timeout_secs: read("CHERNLAB_TIMEOUT_SECS")?,
    })
}

fn load(path: &Path, common: &Common) -> Result<Scenario> {
    let mut s = Scenario::load(path)?;
    if let Some(r) = &common.ring {
        s.ring = r.clone();
    }
    if common.seed.is_some() {
        s.seed = common.seed;
    }
    Ok(s)
}

fn expect_kind(s: &Scenario, allowed: &[Kind]) -> Result<()> {
    if allowed.contains(&s.kind) {
        Ok(())
    } else {
        Err(anyhow!(InputError(format!("scenario kind `{}` does not fit this subcommand", s.kind.name()))))
    }
}

fn emit(cert: &Certificate, input: Option<&Path>, common: &Common) -> Result<()> {
    let target = match (&common.out, input) {
        (Some(o), _) => Some(o.clone()),
        (None, Some(p)) => Some(p.with_extension("cert.json")),
        (None, None) => None,
    };
    if let Some(t) = target {
        std::fs::write(&t, cert.to_json()).with_context(|| format!("writing {}", t.display()))?;
    }
    if common.json {
        print!("{}", cert.to_json());
    } else {
        print!("{}", cert.summary());
    }
    Ok(())
}

fn run_file(path: &Path, allowed: &[Kind], forced: Option<Kind>, common: &Common, limits: &LimitsSpec) -> Result<Status> {
    let mut s = load(path, common)?;
    if let Some(k) = forced {
        s.kind = k;
    }
    expect_kind(&s, allowed)?;
    let started = std::time::Instant::now();
    let cert = run_scenario(&s, limits);
    // wall time stays out of the certificate so reruns are byte-identical
    eprintln!("elapsed {:.3}s", started.elapsed().as_secs_f64());
    emit(&cert, Some(path), common)?;
    Ok(cert.status)
}

fn execute(cli: &Cli) -> Result<Status> {
    let common = &cli.common;
    let mut limits = env_limits()?;
    if let Some(l) = &common.limits {
        limits = limits.overlay(&parse_limits(l)?);
    }
    match &cli.command {
        Command::Groebner { file: Some(f), .. } => run_file(f, &[Kind::Groebner], None, common, &limits),
        Command::Groebner { file: None, generators } => {
            let ring = common.ring.as_deref().ok_or_else(|| anyhow!(InputError("--ring is required for inline generators".into())))?;
            let spec = RingSpec::parse_short(ring).map_err(|e| anyhow!(InputError(e.to_string())))?;
            let mut s = Scenario::new(Kind::Groebner, &spec);
            s.seed = common.seed;
            s.groebner = Some(GroebnerSpec { generators: generators.clone(), membership_degree: None, module: None });
            let cert = run_scenario(&s, &limits);
            emit(&cert, None, common)?;
            Ok(cert.status)
        }
        Command::Invariants { file } => run_file(file, &[Kind::Invariant], None, common, &limits),
        Command::Exterior { file, lemma } => {
            let forced = if *lemma { Kind::ExteriorLemma } else { Kind::ExteriorCorollary };
            let allowed = [Kind::ExteriorLemma, Kind::ExteriorCorollary, Kind::TheoremA];
            run_file(file, &allowed, Some(forced), common, &limits)
        }
        Command::Verify { which, file } => {
            let kind = match which {
                Which::A => Kind::TheoremA,
                Which::B => Kind::TheoremB,
                Which::C => Kind::TheoremC,
            };
            run_file(file, &[kind], None, common, &limits)
        }
        Command::Run { file } => {
            let all = [
                Kind::Groebner,
                Kind::Invariant,
                Kind::ExteriorLemma,
                Kind::ExteriorCorollary,
                Kind::TheoremA,
                Kind::TheoremB,
                Kind::TheoremC,
                Kind::RandomSuite,
            ];
            run_file(file, &all, None, common, &limits)
        }
        Command::Suite { kind, count } => {
            let seed = common.seed.unwrap_or(0);
            let summary = suite::run_random_suite(kind, *count, seed, &limits)?;
            if let Some(dir) = &common.out {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join("summary.json"), serde_json::to_string_pretty(&summary.to_json())? + "\n")?;
                for r in summary.failing() {
                    let digest = r.certificate.digest();
                    let stem = digest.get(..16).unwrap_or(digest);
                    std::fs::write(dir.join(format!("{stem}.toml")), r.scenario.canonical_text()?)?;
                    std::fs::write(dir.join(format!("{stem}.cert.json")), r.certificate.to_json())?;
                }
            }
            if common.json {
                println!("{}", serde_json::to_string_pretty(&summary.to_json())?);
            } else {
                for r in summary.failing() {
                    println!("FAIL {}", r.certificate.digest());
                }
                println!("{kind}: {} passed, {} failed (seed {seed})", summary.results.len() - summary.failures(), summary.failures());
            }
            Ok(if summary.failures() == 0 { Status::Pass } else { Status::Fail })
        }
        Command::Oracle { check, generators, poly, degree, prime } => {
            let ring_s = common.ring.as_deref().unwrap_or("5:2:grevlex");
            let spec = RingSpec::parse_short(ring_s).map_err(|e| anyhow!(InputError(e.to_string())))?;
            let ring = Ring::new(spec).map_err(|e| anyhow!(InputError(e.to_string())))?;
            let gens = generators.iter().map(|g| parse_poly(&ring, g)).collect::<Result<Vec<_>>>()?;
            let ideal = Ideal::new(&ring, gens.clone())?;
            match check {
                OracleCheck::Dimension => {
                    let d = ideal_dimension(&ideal)?;
                    let engine = ideal.standard_monomials(1 << 20)?.map(|m| m.len() as u64);
                    println!("dimension {d} (engine {})", engine.map_or("unbounded".into(), |e| e.to_string()));
                    Ok(if engine == Some(d) { Status::Pass } else { Status::Fail })
                }
                OracleCheck::Membership => {
                    let f = parse_poly(&ring, poly.as_deref().ok_or_else(|| anyhow!(InputError("--poly is required".into())))?)?;
                    let oracle = macaulay_membership(&ring, &gens, &f, *degree);
                    let engine = ideal.contains(&f)?;
                    match oracle {
                        Some(o) => {
                            println!("member {o} at degree {degree} (engine {engine})");
                            Ok(if o == engine || (!o && engine) { Status::Pass } else { Status::Fail })
                        }
                        None => Err(anyhow!(InputError(format!("degree bound {degree} is below deg f")))),
                    }
                }
                OracleCheck::Length => {
                    let primes = build_primes(&ring, std::slice::from_ref(prime))?;
                    let m = PresentedModule::cyclic(&ideal);
                    let brute = primary_length(&m, &primes[0])?;
                    let engine = local_length(&m, &primes[0])?;
                    println!("length {brute} (engine {})", engine.map_or("infinite".into(), |e| e.to_string()));
                    Ok(if engine == Some(brute) { Status::Pass } else { Status::Fail })
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(status) => ExitCode::from(status.exit_code() as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(classify(&e).exit_code() as u8)
        }
    }
}
