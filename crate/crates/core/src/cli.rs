//! Command-line front end. [`run`] parses arguments, dispatches, writes the
//! JSON report and maps outcomes to exit codes: 0 on success, 1 on a domain
//! error (diagnostic as JSON on stderr) or a failed self-test, 2 on a usage
//! error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bracket::{bracket_degree, poisson_bracket, su_bound};
use crate::config::{load_search_config, load_spec};
use crate::conjecture::{run_search, summary_json};
use crate::error::{Error, Result};
use crate::formulas::{
    build_g, build_g_components, check_conditions, lowest_buildable_threshold, CoefficientTable,
    FamilySpec, FormulaParams,
};
use crate::hreduce::{expand_in, express_in_h, h_reduce};
use crate::lattice::{brute_force_min, predicted_min_t, predicted_min_tie, LatticeProblem};
use crate::poly::{parse_poly, parse_rational, HomogeneousPoly, Poly, Rational};
use crate::random::{random_family, rng_for};
use crate::selftest::{run_selftest, SelftestSize};
use crate::structure::{
    check_dependence, check_divisibility, min_bracket_degree_over_g, DEFAULT_UNKNOWN_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "pbracket",
    version,
    about = "Exact Poisson-bracket computations on polynomials"
)]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, env = "PBRACKET_SEED")]
    pub seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the JSON report here (atomically) instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// Number of variables.
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub f: String,
    #[arg(long)]
    pub g: String,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SpecSource {
    /// Family specification file (TOML).
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Random family with the given `d,t,N`, drawn from --seed.
    #[arg(long, value_parser = parse_triple)]
    pub random: Option<(u32, u32, u32)>,
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    #[command(flatten)]
    pub source: SpecSource,
    /// Number of variables for --random.
    #[arg(long = "n", default_value_t = 2)]
    pub nvars: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LatticeMode {
    Brute,
    Closed,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The Poisson bracket [F, G].
    Bracket(PairArgs),
    /// The degree of [F, G].
    BracketDeg(PairArgs),
    /// Writes a homogeneous P commuting with H as a H^k.
    Hreduce {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        h: String,
        #[arg(long)]
        p: String,
    },
    /// Expands P in powers of H (any nonconstant H).
    Express {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        h: String,
        #[arg(long)]
        p: String,
    },
    /// Assembles G from the closed-form components down to degree i.
    BuildG {
        #[command(flatten)]
        spec: SpecArgs,
        /// Threshold (default: the lowest one that gives polynomials).
        #[arg(long)]
        i: Option<u32>,
    },
    /// Checks the coefficient identities on the closed-form table.
    VerifyFormula {
        #[arg(long, conflicts_with_all = ["d", "big_n", "t", "a"])]
        spec: Option<PathBuf>,
        #[arg(long, requires_all = ["big_n", "t"])]
        d: Option<u32>,
        #[arg(long = "N", id = "big_n")]
        big_n: Option<u32>,
        #[arg(long)]
        t: Option<u32>,
        /// Constants `j=value`; default `a_N = 1`.
        #[arg(long)]
        a: Vec<String>,
        #[arg(long)]
        i: u32,
        /// Include the full coefficient table.
        #[arg(long)]
        table: bool,
    },
    /// Minimizes alpha_0 + k alpha_s over the index set.
    LatticeMin {
        #[arg(long)]
        d: u32,
        #[arg(long = "N")]
        big_n: u32,
        #[arg(long)]
        j: u32,
        #[arg(long, default_value_t = 1)]
        t: u32,
        #[arg(long, default_value_t = 0, conflicts_with = "tie")]
        k: u32,
        /// Use the weight r~ = d/(2t) of the boundary case.
        #[arg(long)]
        tie: bool,
        #[arg(long, value_enum, default_value_t = LatticeMode::Both)]
        mode: LatticeMode,
    },
    /// Tests whether h^(k+1) divides F_s given the bracket degree.
    CheckDivisibility {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 0)]
        k: u32,
        /// G as text (default: built from the spec).
        #[arg(long, conflicts_with = "i")]
        g: Option<String>,
        #[arg(long)]
        i: Option<u32>,
    },
    /// Tests the relation between F_{s-1} and F_s.
    CheckDependence {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, conflicts_with = "i")]
        g: Option<String>,
        #[arg(long)]
        i: Option<u32>,
    },
    /// Smallest bracket degree over all G with the spec's top form.
    OracleMinBracket {
        #[command(flatten)]
        spec: SpecArgs,
        /// Replaces the spec's F (its top form must stay h^(d/t)).
        #[arg(long)]
        f: Option<String>,
        #[arg(long, default_value_t = 1)]
        floor: u32,
        #[arg(long, default_value_t = DEFAULT_UNKNOWN_CAP)]
        cap: usize,
    },
    /// Evaluates the degree estimate deg P(f, g) >= D(f, g) w(P).
    SuBound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        /// Bivariate P in x1, x2.
        #[arg(long)]
        p: String,
    },
    /// Randomized search over pairs with common-power top forms.
    SearchConjecture {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        samples: Option<usize>,
        /// Directory receiving one JSON file per flagged candidate.
        #[arg(long)]
        dump_dir: Option<PathBuf>,
    },
    /// Runs the invariant suite.
    Selftest {
        /// Reduced sample counts.
        #[arg(long)]
        quick: bool,
    },
}

fn parse_triple(s: &str) -> std::result::Result<(u32, u32, u32), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b, c] => {
            let p = |x: &str| x.parse::<u32>().map_err(|e| format!("{x:?}: {e}"));
            Ok((p(a)?, p(b)?, p(c)?))
        }
        _ => Err("expected d,t,N".into()),
    }
}

/// Result of a command: the report plus whether it counts as success.
pub struct Outcome {
    pub report: Value,
    pub success: bool,
}

impl From<Value> for Outcome {
    fn from(report: Value) -> Self {
        Outcome {
            report,
            success: true,
        }
    }
}

fn poly(text: &str, n: usize, what: &str) -> Result<Poly> {
    parse_poly(text, n).map_err(|e| match e {
        Error::Parse { column, message } => Error::Parse {
            column,
            message: format!("{what}: {message}"),
        },
        other => other,
    })
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize to JSON")
}

fn spec_json(spec: &FamilySpec) -> Value {
    let f_comps: BTreeMap<String, String> = (1..=spec.s())
        .map(|l| (l.to_string(), spec.f_component(l).to_string()))
        .collect();
    let a: BTreeMap<String, String> = spec
        .params
        .a
        .iter()
        .map(|(j, v)| (j.to_string(), v.to_string()))
        .collect();
    json!({
        "n": spec.nvars,
        "d": spec.d(),
        "N": spec.n(),
        "t": spec.t(),
        "h": spec.h().to_string(),
        "F": spec.f().to_string(),
        "F_components": f_comps,
        "a": a,
    })
}

fn resolve_spec(args: &SpecArgs, seed: u64) -> Result<FamilySpec> {
    match (&args.source.spec, args.source.random) {
        (Some(path), _) => load_spec(path),
        (None, Some((d, t, n))) => random_family(&mut rng_for(seed, 0), args.nvars, d, t, n),
        (None, None) => unreachable!("clap enforces one spec source"),
    }
}

fn resolve_g(spec: &FamilySpec, g: &Option<String>, i: Option<u32>) -> Result<(Poly, Option<u32>)> {
    match g {
        Some(text) => Ok((poly(text, spec.nvars, "G")?, None)),
        None => {
            let i = match i {
                Some(i) => i,
                None => lowest_buildable_threshold(spec)?,
            };
            Ok((build_g(spec, i, None)?, Some(i)))
        }
    }
}

fn check_pair_input(n: usize) -> Result<()> {
    if n == 0 || n > crate::config::MAX_NVARS {
        return Err(Error::params(format!(
            "n must lie in 1..={}, got {n}",
            crate::config::MAX_NVARS
        )));
    }
    Ok(())
}

fn lattice_json(r: &crate::lattice::MinResult) -> Value {
    json!({"value": r.value.to_string(), "argmins": to_value(&r.argmins)})
}

/// Executes a parsed command.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let seed = cli.seed.unwrap_or(0);
    Ok(match &cli.command {
        Command::Bracket(p) => {
            check_pair_input(p.n)?;
            let (f, g) = (poly(&p.f, p.n, "F")?, poly(&p.g, p.n, "G")?);
            let b = poisson_bracket(&f, &g)?;
            json!({
                "f": f.to_string(),
                "g": g.to_string(),
                "bracket": to_value(&b),
                "degree": to_value(&b.degree()),
            })
            .into()
        }
        Command::BracketDeg(p) => {
            check_pair_input(p.n)?;
            let (f, g) = (poly(&p.f, p.n, "F")?, poly(&p.g, p.n, "G")?);
            json!({"degree": to_value(&bracket_degree(&f, &g)?)}).into()
        }
        Command::Hreduce { n, h, p } => {
            check_pair_input(*n)?;
            let h = HomogeneousPoly::new(poly(h, *n, "H")?)?;
            let p = HomogeneousPoly::new(poly(p, *n, "P")?)?;
            let (a, k) = h_reduce(&h, &p)?;
            json!({"a": a.to_string(), "k": k}).into()
        }
        Command::Express { n, h, p } => {
            check_pair_input(*n)?;
            let h = poly(h, *n, "H")?;
            let p = poly(p, *n, "P")?;
            let coeffs = if h.is_homogeneous() {
                Some(express_in_h(&HomogeneousPoly::new(h)?, &p)?)
            } else {
                expand_in(&h, &p)?
            };
            match coeffs {
                Some(c) => json!({
                    "member": true,
                    "coefficients": c.iter().map(ToString::to_string).collect::<Vec<_>>(),
                }),
                None => json!({"member": false, "coefficients": Value::Null}),
            }
            .into()
        }
        Command::BuildG { spec, i } => {
            let spec = resolve_spec(spec, seed)?;
            let i = match i {
                Some(i) => *i,
                None => lowest_buildable_threshold(&spec)?,
            };
            let comps = build_g_components(&spec, i)?;
            let g = build_g(&spec, i, None)?;
            let f = spec.f();
            let deg = bracket_degree(&f, &g)?;
            let bound = spec.d() + i;
            json!({
                "spec": spec_json(&spec),
                "i": i,
                "G": g.to_string(),
                "G_components": comps
                    .iter()
                    .map(|(j, p)| json!({"j": j, "poly": p.to_string()}))
                    .collect::<Vec<_>>(),
                "bracket_degree": to_value(&deg),
                "bound": bound,
                "below_bound": deg < crate::poly::Degree::Finite(bound),
            })
            .into()
        }
        Command::VerifyFormula {
            spec,
            d,
            big_n,
            t,
            a,
            i,
            table,
        } => {
            let params = match spec {
                Some(path) => load_spec(path)?.params,
                None => {
                    let (Some(d), Some(n), Some(t)) = (*d, *big_n, *t) else {
                        return Err(Error::params("give --spec or all of --d, --N, --t"));
                    };
                    let mut consts = BTreeMap::new();
                    for entry in a {
                        let (j, v) = entry.split_once('=').ok_or_else(|| {
                            Error::params(format!("--a expects j=value, got {entry:?}"))
                        })?;
                        let j: u32 = j
                            .trim()
                            .parse()
                            .map_err(|_| Error::params(format!("bad index in {entry:?}")))?;
                        let v = parse_rational(v)
                            .ok_or_else(|| Error::params(format!("bad value in {entry:?}")))?;
                        consts.insert(j, v);
                    }
                    consts
                        .entry(n)
                        .or_insert_with(|| Rational::from_integer(1.into()));
                    FormulaParams::new(d, n, t, consts)?
                }
            };
            if *i == 0 || *i > params.deg_g {
                return Err(Error::params(format!(
                    "i must lie in 1..=N = {}",
                    params.deg_g
                )));
            }
            let tab = CoefficientTable::from_formulas(&params, *i)?;
            let report = check_conditions(&tab, *i);
            let mut out = json!({
                "d": params.deg_f,
                "N": params.deg_g,
                "t": params.deg_h,
                "i": i,
                "entries": tab.len(),
                "conditions": to_value(&report),
                "all_hold": report.all_hold(),
            });
            if *table {
                out["table"] = tab
                    .entries()
                    .map(|(j, alpha, c)| json!({"j": j, "alpha": to_value(alpha), "c": c.to_string()}))
                    .collect();
            }
            Outcome {
                success: report.all_hold(),
                report: out,
            }
        }
        Command::LatticeMin {
            d,
            big_n,
            j,
            t,
            k,
            tie,
            mode,
        } => {
            let (d, n, j, t) = (*d, *big_n, *j, *t);
            let weight = if *tie {
                if d % 2 != 0 || (d / 2) % t != 0 {
                    return Err(Error::params("--tie needs d = 2 d_1 with t | d_1"));
                }
                d / 2 / t
            } else {
                *k
            };
            let brute = match mode {
                LatticeMode::Closed => None,
                _ => Some(brute_force_min(&LatticeProblem::alpha0_plus(
                    j,
                    n,
                    d,
                    t,
                    Rational::from_integer(weight.into()),
                )?)?),
            };
            let closed = match mode {
                LatticeMode::Brute => None,
                _ if *tie => Some(predicted_min_tie(j, n, d / 2, t)?),
                _ => Some(predicted_min_t(j, n, d, t, weight)?),
            };
            let primary = brute
                .as_ref()
                .or(closed.as_ref())
                .expect("at least one mode");
            let mut out = lattice_json(primary);
            out["weight"] = json!(weight);
            if let Some(b) = &brute {
                out["brute"] = lattice_json(b);
            }
            if let Some(c) = &closed {
                out["closed"] = lattice_json(c);
            }
            let agree = match (&brute, &closed) {
                (Some(b), Some(c)) => Some(b == c),
                _ => None,
            };
            out["agree"] = json!(agree);
            Outcome {
                report: out,
                success: agree != Some(false),
            }
        }
        Command::CheckDivisibility { spec, k, g, i } => {
            let spec = resolve_spec(spec, seed)?;
            let (g, built_at) = resolve_g(&spec, g, *i)?;
            let f = spec.f();
            let r = check_divisibility(&spec, &f, &g, *k)?;
            json!({
                "spec": spec_json(&spec),
                "G": g.to_string(),
                "built_at": built_at,
                "report": to_value(&r),
                "hypotheses_hold": r.hypotheses_hold(),
                "consistent": r.consistent(),
            })
            .into()
        }
        Command::CheckDependence { spec, g, i } => {
            let spec = resolve_spec(spec, seed)?;
            let (g, built_at) = resolve_g(&spec, g, *i)?;
            let f = spec.f();
            let r = check_dependence(&spec, &f, &g)?;
            json!({
                "spec": spec_json(&spec),
                "G": g.to_string(),
                "built_at": built_at,
                "report": to_value(&r),
                "hypotheses_hold": r.hypotheses_hold(),
                "consistent": r.consistent(),
            })
            .into()
        }
        Command::OracleMinBracket {
            spec,
            f,
            floor,
            cap,
        } => {
            let spec = resolve_spec(spec, seed)?;
            let f = match f {
                Some(text) => poly(text, spec.nvars, "F")?,
                None => spec.f(),
            };
            let r =
                min_bracket_degree_over_g(&f, spec.n(), spec.h(), spec.params.a_n(), *floor, *cap)?;
            json!({
                "spec": spec_json(&spec),
                "F": f.to_string(),
                "report": to_value(&r),
                "bound": r.bound(),
            })
            .into()
        }
        Command::SuBound { n, f, g, p } => {
            check_pair_input(*n)?;
            let (f, g) = (poly(f, *n, "f")?, poly(g, *n, "g")?);
            let p = poly(p, 2, "P")?;
            let r = su_bound(&f, &g, &p)?;
            let mut out = to_value(&r);
            out["holds"] = json!(r.holds());
            out.into()
        }
        Command::SearchConjecture {
            config,
            samples,
            dump_dir,
        } => {
            let mut cfg = load_search_config(config)?;
            if let Some(s) = cli.seed {
                cfg.seed = s;
            }
            if let Some(n) = samples {
                cfg.samples = *n;
            }
            cfg.validate()?;
            let summary = run_search(&cfg)?;
            if let Some(dir) = dump_dir {
                std::fs::create_dir_all(dir)
                    .map_err(|e| Error::Config(format!("{}: {e}", dir.display())))?;
                for c in &summary.candidates {
                    let text = pretty(&to_value(c));
                    write_atomic(&dir.join(format!("candidate-{:06}.json", c.index)), &text)?;
                }
            }
            let text = summary_json(&summary)?;
            serde_json::from_str::<Value>(&text)
                .map_err(|e| Error::Config(e.to_string()))?
                .into()
        }
        Command::Selftest { quick } => {
            let size = if *quick {
                SelftestSize::Quick
            } else {
                SelftestSize::Full
            };
            let checks = run_selftest(seed, size);
            let success = checks.iter().all(|c| c.passed);
            Outcome {
                report: json!({"seed": seed, "checks": to_value(&checks), "passed": success}),
                success,
            }
        }
    })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values render");
    s.push('\n');
    s
}

/// Writes through a temporary file in the target directory and renames it
/// into place.
pub fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| Error::Config(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(text.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn diagnostic(e: &Error) -> String {
    pretty(&json!({"error": {"kind": e.kind(), "message": e.to_string()}}))
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match cli.threads {
        Some(0) => {
            eprintln!("error: --threads must be positive");
            return EXIT_USAGE;
        }
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(Error::Config(e.to_string())),
        },
        None => execute(&cli),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            eprint!("{}", diagnostic(&e));
            return EXIT_DOMAIN;
        }
    };
    let text = pretty(&outcome.report);
    match &cli.out {
        Some(path) => {
            if let Err(e) = write_atomic(path, &text) {
                eprint!("{}", diagnostic(&e));
                return EXIT_DOMAIN;
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    if outcome.success {
        EXIT_OK
    } else {
        EXIT_DOMAIN
    }
}
