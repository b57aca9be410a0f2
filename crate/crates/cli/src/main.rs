//! `rss`: command-line front end to the sequence-space model.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rss_core::connectives;
use rss_core::counterexample;
use rss_core::expo::{self, GradedCoeffs, SuiteConfig};
use rss_core::ll::{self, Bindings, Env};
use rss_core::rational::{fmt_decimal, fmt_rat, parse_rat};
use rss_core::{validate, Error, Guards, MatrixRep, PolytopeSpace, Rat, Sequence};

#[derive(Parser)]
#[command(name = "rss", version, about = "Exact computations in polytope-normed sequence spaces")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized suites and samples.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Space files: validate, dualize, combine.
    #[command(subcommand)]
    Space(SpaceCmd),
    /// Norm of a sequence (or dual norm with --dual).
    Norm {
        #[arg(long)]
        space: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        vec: String,
        #[arg(long)]
        dual: bool,
    },
    /// Pairing of a in A with b in A*, with the bound ‖a‖·‖b‖.
    Pair {
        #[arg(long)]
        space: PathBuf,
        /// Two vectors: a then b.
        #[arg(long = "vec", num_args = 1, allow_hyphen_values = true, required = true)]
        vecs: Vec<String>,
    },
    /// Map norm of a matrix from the first space to the second.
    Mapnorm(MapArgs),
    /// Whether a matrix is a contraction from the first space to the second.
    Morphism(MapArgs),
    /// Report on the truncated non-regular operator.
    Counterexample {
        #[arg(long = "N", short = 'N')]
        n: usize,
    },
    /// Truncated exponentials.
    #[command(subcommand)]
    Exp(ExpCmd),
    /// Sequent proofs.
    #[command(subcommand)]
    Proof(ProofCmd),
}

#[derive(Args)]
struct MapArgs {
    /// Domain then codomain.
    #[arg(long = "space", num_args = 1, required = true)]
    spaces: Vec<PathBuf>,
    #[arg(long)]
    matrix: PathBuf,
}

#[derive(Subcommand)]
enum SpaceCmd {
    Validate {
        #[arg(long)]
        space: PathBuf,
    },
    Dual {
        #[arg(long)]
        space: PathBuf,
    },
    Combine {
        #[arg(long, value_enum)]
        op: Op,
        /// Exactly two.
        #[arg(long = "space", num_args = 1, required = true)]
        spaces: Vec<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Product,
    Coproduct,
    Tensor,
    Cotensor,
    Hom,
}

#[derive(Args)]
struct LevelArgs {
    #[arg(long)]
    space: PathBuf,
    #[arg(long)]
    series: PathBuf,
    /// Largest level n.
    #[arg(long, default_value_t = 20)]
    nmax: usize,
}

#[derive(Subcommand)]
enum ExpCmd {
    /// Certified interval on the ?A norm of a series.
    Norm {
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long, default_value = "1/100")]
        tol: String,
        /// Random dual-ball samples for the lower bound.
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Level norms for n = degree..nmax.
    Convergence {
        #[command(flatten)]
        level: LevelArgs,
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Monoid, monad and naturality laws on random series.
    Laws {
        #[arg(long)]
        space: PathBuf,
        #[arg(long, default_value_t = 4)]
        degree: usize,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 20)]
        lifts: usize,
    },
}

#[derive(Subcommand)]
enum ProofCmd {
    Check {
        #[arg(long)]
        proof: PathBuf,
    },
    Interpret {
        #[arg(long)]
        proof: PathBuf,
        #[arg(long)]
        bindings: PathBuf,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        /// Level used for the norm bound on ?-slots.
        #[arg(long, default_value_t = 6)]
        nmax: usize,
    },
}

/// Failure of a check (exit 1) versus bad input (exit 2).
enum Failure {
    Check(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::IllFormed { .. } | Error::InvalidSpace(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Out = Result<String, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_space(path: &Path) -> Result<PolytopeSpace, Failure> {
    let s = PolytopeSpace::from_json(&read_json(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let rep = validate(&s);
    if !rep.passed() {
        let lines: Vec<String> = rep.violations.iter().map(|v| format!("{}: {}", v.invariant, v.witness)).collect();
        return Err(Failure::Check(format!(
            "{} is not a valid space:\n{}",
            path.display(),
            lines.join("\n")
        )));
    }
    Ok(s)
}

fn num(r: &Rat) -> Value {
    json!({ "exact": fmt_rat(r), "decimal": fmt_decimal(r, 12) })
}

fn show(r: &Rat) -> String {
    format!("{} ~ {}", fmt_rat(r), fmt_decimal(r, 12))
}

fn emit(format: Format, text: String, value: Value) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(&value).expect("serializable"),
        _ => text,
    }
}

fn two<'a>(spaces: &'a [PathBuf], what: &str) -> Result<(&'a Path, &'a Path), Failure> {
    match spaces {
        [a, b] => Ok((a, b)),
        _ => Err(usage(format!("{what} needs exactly two --space arguments"))),
    }
}

fn run(cli: &Cli, guards: &Guards) -> Out {
    let f = cli.format;
    match &cli.cmd {
        Cmd::Space(SpaceCmd::Validate { space }) => {
            let s = PolytopeSpace::from_json(&read_json(space)?)?;
            let rep = validate(&s);
            let value = json!({
                "valid": rep.passed(),
                "violations": rep.violations.iter().map(|v| json!({"invariant": v.invariant, "witness": v.witness})).collect::<Vec<_>>(),
            });
            let mut text = if rep.passed() { "valid".to_string() } else { "invalid".to_string() };
            for v in &rep.violations {
                text.push_str(&format!("\n  {}: {}", v.invariant, v.witness));
            }
            let out = emit(f, text, value);
            if rep.passed() {
                Ok(out)
            } else {
                Err(Failure::Check(out))
            }
        }
        Cmd::Space(SpaceCmd::Dual { space }) => Ok(serde_json::to_string_pretty(&load_space(space)?.dual().to_json()).expect("json")),
        Cmd::Space(SpaceCmd::Combine { op, spaces }) => {
            let (a, b) = two(spaces, "combine")?;
            let (a, b) = (load_space(a)?, load_space(b)?);
            let s = match op {
                Op::Product => connectives::product(&a, &b, guards)?,
                Op::Coproduct => connectives::coproduct(&a, &b, guards)?,
                Op::Tensor => connectives::tensor(&a, &b, guards)?,
                Op::Cotensor => connectives::cotensor(&a, &b, guards)?,
                Op::Hom => connectives::hom(&a, &b, guards)?,
            };
            Ok(serde_json::to_string_pretty(&s.to_json()).expect("json"))
        }
        Cmd::Norm { space, vec, dual } => {
            let s = load_space(space)?;
            let v = Sequence::parse(vec)?;
            let n = if *dual { s.dual_norm(&v)? } else { s.norm(&v)? };
            Ok(emit(f, show(&n), json!({ "norm": num(&n) })))
        }
        Cmd::Pair { space, vecs } => {
            let [a, b] = vecs.as_slice() else {
                return Err(usage("pair needs exactly two --vec arguments"));
            };
            let s = load_space(space)?;
            let (a, b) = (Sequence::parse(a)?, Sequence::parse(b)?);
            let p = rss_core::pairing(&a, &b)?;
            let bound = s.norm(&a)? * s.dual_norm(&b)?;
            let text = format!("pairing {}\nbound   {}", show(&p), show(&bound));
            Ok(emit(f, text, json!({ "pairing": num(&p), "bound": num(&bound) })))
        }
        Cmd::Mapnorm(m) | Cmd::Morphism(m) => {
            let (a, b) = two(&m.spaces, "this command")?;
            let (a, b) = (load_space(a)?, load_space(b)?);
            let mat = MatrixRep::from_json(&read_json(&m.matrix)?)?;
            if mat.rows() != a.index() || mat.cols() != b.index() {
                return Err(usage(format!(
                    "{}: row labels must match the domain and column labels the codomain",
                    m.matrix.display()
                )));
            }
            let res = rss_core::is_morphism(&a, &b, &mat)?;
            if matches!(cli.cmd, Cmd::Mapnorm(_)) {
                return Ok(emit(f, show(&res.norm), json!({ "map_norm": num(&res.norm) })));
            }
            let text = format!(
                "{} (norm {})",
                if res.is_morphism { "morphism" } else { "not a morphism" },
                show(&res.norm)
            );
            let out = emit(f, text, json!({ "morphism": res.is_morphism, "map_norm": num(&res.norm) }));
            if res.is_morphism {
                Ok(out)
            } else {
                Err(Failure::Check(out))
            }
        }
        Cmd::Counterexample { n } => {
            let r = counterexample::report(*n)?;
            if f == Format::Json {
                return Ok(serde_json::to_string_pretty(&r.to_json()).expect("json"));
            }
            let mut table = String::from("n,abs_omega,T_enumerated,T_binomial,level_bound\n");
            for l in &r.levels {
                let te = l.t_enumerated.as_ref().map_or_else(String::new, ToString::to_string);
                table.push_str(&format!(
                    "{},{},{},{},{}\n",
                    l.n,
                    fmt_rat(&l.abs_omega),
                    te,
                    l.t_binomial,
                    fmt_rat(&l.level_bound)
                ));
            }
            if f == Format::Csv {
                return Ok(table.trim_end().to_string());
            }
            let mut text = format!("N = {}\nsum of level |L Omega| norms = {}\n", r.n, show(&r.abs_omega_norm));
            text.push_str(&format!("operator estimate <= {}\n", show(&r.operator_upper)));
            if let Some(lo) = &r.operator_lower {
                text.push_str(&format!("operator estimate >= {}\n", show(lo)));
            }
            text.push_str(&table);
            Ok(text.trim_end().to_string())
        }
        Cmd::Exp(ExpCmd::Norm { level, tol, samples }) => {
            let (a, series) = load_series(level)?;
            let tol = parse_rat(tol)?;
            if tol <= Rat::from_integer(0.into()) {
                return Err(usage("--tol must be positive"));
            }
            let iv = expo::exp_norm_interval(&a, &series, level.nmax, &tol, *samples, cli.seed, guards)?;
            let text = format!(
                "lower {}\nupper {}\nwidth {}\nlevel {}",
                show(&iv.lower),
                show(&iv.upper),
                show(&iv.width()),
                iv.n_used
            );
            let value = json!({ "lower": num(&iv.lower), "upper": num(&iv.upper), "width": num(&iv.width()), "n_used": iv.n_used,
                "lower_witness": iv.lower_witness.to_strings() });
            Ok(emit(f, text, value))
        }
        Cmd::Exp(ExpCmd::Convergence { level, samples }) => {
            let (a, series) = load_series(level)?;
            let rows = expo::convergence(&a, &series, level.nmax, *samples, cli.seed, guards)?;
            let value = json!(rows
                .iter()
                .map(|r| json!({ "n": r.n, "level_norm": num(&r.level_norm), "best_lower": num(&r.best_lower), "width": num(&r.width()) }))
                .collect::<Vec<_>>());
            let csv = expo::convergence_csv(&rows);
            Ok(emit(f, csv.trim_end().to_string(), value))
        }
        Cmd::Exp(ExpCmd::Laws {
            space,
            degree,
            nmax,
            trials,
            lifts,
        }) => {
            if nmax < degree {
                return Err(usage("--nmax must be at least --degree"));
            }
            let a = load_space(space)?;
            let cfg = SuiteConfig {
                cap: *degree,
                level: *nmax,
                trials: *trials,
                lifts: *lifts,
                seed: cli.seed,
            };
            let rep = expo::law_suite(&a, &cfg, guards)?;
            let mut text = String::new();
            for r in &rep.results {
                text.push_str(&format!(
                    "{} {} ({} checks)",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.law,
                    r.checks
                ));
                if let Some(w) = &r.witness {
                    text.push_str(&format!(": {w}"));
                }
                text.push('\n');
            }
            let out = emit(f, text.trim_end().to_string(), rep.to_json());
            if rep.passed() {
                Ok(out)
            } else {
                Err(Failure::Check(out))
            }
        }
        Cmd::Proof(ProofCmd::Check { proof }) => {
            let p = load_proof(proof)?;
            let rep = ll::check_proof(&p)?;
            let seq = ll::formula::fmt_sequent(&rep.conclusion);
            Ok(emit(
                f,
                format!("|- {seq}"),
                json!({ "conclusion": seq, "nodes": rep.nodes, "exponential": rep.exponential }),
            ))
        }
        Cmd::Proof(ProofCmd::Interpret {
            proof,
            bindings,
            degree,
            nmax,
        }) => {
            if nmax < degree {
                return Err(usage("--nmax must be at least --degree"));
            }
            let p = load_proof(proof)?;
            let dir = bindings.parent().map(Path::to_path_buf);
            let b = Bindings::from_json(&read_json(bindings)?, dir.as_deref())?;
            let env = Env::new(&b, *degree, guards.clone());
            let t = ll::interpret(&p, &env)?;
            let bound = ll::morphism_bound(&t, &env, *nmax);
            let mut value = t.to_json();
            let mut text = format!("|- {}\n", ll::formula::fmt_sequent(&t.sequent));
            match &bound {
                Ok(b) => {
                    value["norm_upper"] = num(&b.upper);
                    value["norm_exact"] = json!(b.exact);
                    text.push_str(&format!("norm {} {}\n", if b.exact { "=" } else { "<=" }, show(&b.upper)));
                }
                Err(e) => {
                    value["norm_upper"] = Value::Null;
                    text.push_str(&format!("norm bound unavailable: {e}\n"));
                }
            }
            for (k, v) in t.labeled() {
                let labels: Vec<String> = k.iter().map(ToString::to_string).collect();
                text.push_str(&format!("{} {}\n", labels.join(" "), fmt_rat(&v)));
            }
            Ok(emit(f, text.trim_end().to_string(), value))
        }
    }
}

fn load_series(level: &LevelArgs) -> Result<(PolytopeSpace, GradedCoeffs), Failure> {
    let a = load_space(&level.space)?;
    let s = GradedCoeffs::from_json(&read_json(&level.series)?, a.index())?;
    if level.nmax < s.cap() {
        return Err(usage(format!("--nmax {} is below the series degree {}", level.nmax, s.cap())));
    }
    Ok((a, s))
}

fn load_proof(path: &Path) -> Result<ll::Proof, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    ll::parse_proof(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Prints to stdout; a closed pipe (e.g. `| head`) is not an error.
fn print_out(s: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{s}").and_then(|()| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let guards = match Guards::from_env() {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match run(&cli, &guards) {
        Ok(out) => {
            print_out(&out);
            ExitCode::SUCCESS
        }
        Err(Failure::Check(msg)) => {
            print_out(&msg);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
