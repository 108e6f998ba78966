//! Command-line front end.
//!
//! Exit codes: 0 computed or passed, 1 a checker failed or a predicate is
//! false, 2 usage or input error, 3 precision exhausted or unsupported input.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use valgen_core::genseq::{
    completeness_check, counterexample_run, gs1star_decompose, gs1star_verify, gs2_check, gs3_check,
    theorem_crosschecks, CheckReport, Corpus, CorpusSource,
};
use valgen_core::graded::{gs3_witness, initial_equal, semigroup_membership};
use valgen_core::keypoly::{epsilon, hasse_derivative, is_key};
use valgen_core::{fixtures, BivarPoly, Error as CoreError, Poly, ValuationSpec, Value};

use crate::formats::{load_fixture, load_spec, FormatError, SpecFile};
use crate::parse::{parse_bivariate, parse_field, parse_poly, parse_value, ParseError};
use crate::report::{CertJson, CheckJson, CounterexampleJson, CrosscheckJson, Gs3WitnessJson};

#[derive(Parser, Debug)]
#[command(name = "valgen", version, about = "Exact valuation invariants and generating-sequence checks")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CorpusKind {
    Exhaustive,
    Monomials,
}

#[derive(Args, Debug, Clone)]
struct Source {
    /// Valuation spec (JSON).
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Fixture file with spec, Qset and corpus (JSON).
    #[arg(long)]
    fixture: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct QsetArg {
    /// Qset members; repeatable or comma-separated.
    #[arg(long, value_delimiter = ',')]
    qset: Vec<String>,
}

#[derive(Args, Debug, Clone)]
struct CorpusArgs {
    /// Maximal degree of corpus members.
    #[arg(long)]
    corpus_degree: Option<u32>,
    /// Coefficient bound: `|c| <= B` over Q (exhaustive default 1, random default 5).
    #[arg(long)]
    coeff_bound: Option<u32>,
    /// Deterministic corpus shape; defaults to exhaustive on K[x] and monomials on K[x, y].
    #[arg(long, value_enum)]
    corpus_kind: Option<CorpusKind>,
    /// Use this many seeded random polynomials instead.
    #[arg(long)]
    sample: Option<usize>,
    /// Seed for --sample (required with it).
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// nu(f).
    Value {
        #[command(flatten)]
        source: Source,
        poly: String,
    },
    /// The truncation nu_Q(f).
    Nuq {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        q: String,
        poly: String,
    },
    /// Q-adic expansion f = sum f_i Q^i.
    Expand {
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long)]
        q: String,
        poly: String,
    },
    /// Hasse derivative of order k.
    Hasse {
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long)]
        k: usize,
        poly: String,
    },
    /// epsilon(f) and the maximizing orders.
    Eps {
        #[command(flatten)]
        source: Source,
        poly: String,
    },
    /// Exhaustive key-polynomial test over F_p.
    Keycheck {
        #[command(flatten)]
        source: Source,
        poly: String,
    },
    /// in(f) = in(g)?
    InitialEq {
        #[command(flatten)]
        source: Source,
        f: String,
        g: String,
    },
    /// Membership in a finitely generated semigroup of values.
    Semigroup {
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<String>,
        #[arg(long)]
        target: String,
    },
    /// in(f) as a constant times a monomial in the in(Q).
    Gs3Witness {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        qset: QsetArg,
        poly: String,
    },
    /// Completeness of the Qset over a corpus.
    Complete {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        qset: QsetArg,
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// GS1* certificate for f.
    Gs1star {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        qset: QsetArg,
        poly: String,
    },
    /// GS2 at value gamma over a corpus.
    Gs2 {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        qset: QsetArg,
        #[arg(long)]
        gamma: String,
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// GS3 over a corpus.
    Gs3 {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        qset: QsetArg,
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Stop peeling once the value exceeds this.
        #[arg(long)]
        value_cap: Option<String>,
    },
    /// Implications between the checkers on one fixture.
    Crosscheck {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        qset: QsetArg,
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// The squares embedding: GS3 holds for {x} but GS2 does not.
    PaperExample {
        #[arg(long, default_value_t = 17)]
        precision: u64,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Format(#[from] FormatError),
    #[error("{0}")]
    Core(#[from] CoreError),
}

fn core_code(e: &CoreError) -> i32 {
    match e {
        CoreError::PrecisionExhausted { .. }
        | CoreError::Unsupported(_)
        | CoreError::NonFiniteField
        | CoreError::NotCentered
        | CoreError::SemigroupTooLarge(_) => 3,
        _ => 2,
    }
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Core(e) | CliError::Format(FormatError::Spec(e)) => core_code(e),
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

struct Context {
    spec: ValuationSpec,
    qset: Vec<BivarPoly>,
    corpus: Option<Corpus>,
}

fn context(source: &Source) -> Result<Context> {
    match (&source.spec, &source.fixture) {
        (Some(_), Some(_)) => Err(CliError::Usage("give --spec or --fixture, not both".into())),
        (Some(p), None) => Ok(Context { spec: load_spec(p)?, qset: Vec::new(), corpus: None }),
        (None, Some(p)) => {
            let f = load_fixture(p)?;
            Ok(Context { spec: f.spec, qset: f.qset, corpus: Some(f.corpus) })
        }
        (None, None) => Err(CliError::Usage("a valuation is required: pass --spec or --fixture".into())),
    }
}

impl Context {
    fn bivariate(&self, s: &str) -> Result<BivarPoly> {
        Ok(parse_bivariate(s, self.spec.field())?)
    }

    fn poly(&self, s: &str) -> Result<Poly> {
        Ok(parse_poly(s, self.spec.field())?)
    }

    fn qset(&self, arg: &QsetArg) -> Result<Vec<BivarPoly>> {
        if arg.qset.is_empty() {
            if self.qset.is_empty() {
                return Err(CliError::Usage("--qset is required".into()));
            }
            return Ok(self.qset.clone());
        }
        arg.qset.iter().map(|q| self.bivariate(q.trim())).collect()
    }

    fn univariate_qset(&self, arg: &QsetArg) -> Result<Vec<Poly>> {
        self.qset(arg)?
            .iter()
            .map(|q| q.to_univariate().ok_or_else(|| CliError::Core(CoreError::Unsupported(format!("{} involves y", q)))))
            .collect()
    }

    fn corpus(&self, args: &CorpusArgs) -> Result<Corpus> {
        let field = self.spec.field();
        let bivariate = self.spec.is_bivariate();
        let Some(degree) = args.corpus_degree else {
            return self.corpus.clone().ok_or_else(|| CliError::Usage("--corpus-degree is required".into()));
        };
        let corpus = Corpus::new(field, degree, bivariate);
        if let Some(size) = args.sample {
            let seed = args.seed.ok_or_else(|| CliError::Usage("--sample needs --seed".into()))?;
            return Ok(corpus.with(CorpusSource::Random { size, seed, coeff_bound: args.coeff_bound.unwrap_or(5) }));
        }
        let kind = args.corpus_kind.unwrap_or(if bivariate { CorpusKind::Monomials } else { CorpusKind::Exhaustive });
        Ok(corpus.with(match kind {
            CorpusKind::Exhaustive => CorpusSource::Exhaustive { coeff_bound: args.coeff_bound.unwrap_or(1) },
            CorpusKind::Monomials => CorpusSource::Monomials,
        }))
    }
}

fn value(s: &str) -> Result<Value> {
    Ok(parse_value(s)?)
}

/// Output of a command: text, JSON and exit code.
struct Outcome {
    text: String,
    json: serde_json::Value,
    code: i32,
}

fn outcome(text: String, json: impl Serialize, code: i32) -> Result<Outcome> {
    Ok(Outcome { text, json: serde_json::to_value(json).expect("reports serialize"), code })
}

fn check(r: &CheckReport) -> Result<Outcome> {
    outcome(r.to_string(), CheckJson::from(r), if r.passed() { 0 } else { 1 })
}

fn list<T: std::fmt::Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(|i| i.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn execute(command: Command) -> Result<Outcome> {
    match command {
        Command::Value { source, poly } => {
            let cx = context(&source)?;
            let f = cx.bivariate(&poly)?;
            let r = cx.spec.value_of(&f)?;
            let text = if r.exact { format!("value={}", r.value) } else { format!("value={} (after precision retry)", r.value) };
            #[derive(Serialize)]
            struct J {
                poly: String,
                value: String,
                exact: bool,
            }
            outcome(text, J { poly: f.to_string(), value: r.value.to_string(), exact: r.exact }, 0)
        }
        Command::Nuq { source, q, poly } => {
            let cx = context(&source)?;
            let (q, f) = (cx.poly(&q)?, cx.poly(&poly)?);
            let nu_q = cx.spec.nu_q(&q, &f)?;
            let nu = cx.spec.value(&f)?;
            #[derive(Serialize)]
            struct J {
                poly: String,
                q: String,
                nu_q: String,
                nu: String,
            }
            outcome(
                format!("nu_q={} nu={}", nu_q, nu),
                J { poly: f.to_string(), q: q.to_string(), nu_q: nu_q.to_string(), nu: nu.to_string() },
                0,
            )
        }
        Command::Expand { field, q, poly } => {
            let field = parse_field(&field)?;
            let (q, f) = (parse_poly(&q, field)?, parse_poly(&poly, field)?);
            let e = f.expand(&q)?;
            #[derive(Serialize)]
            struct Part {
                index: usize,
                coefficient: String,
            }
            #[derive(Serialize)]
            struct J {
                poly: String,
                q: String,
                parts: Vec<Part>,
            }
            let parts: Vec<Part> =
                e.parts().iter().rev().map(|(i, p)| Part { index: *i, coefficient: p.to_string() }).collect();
            let text = parts.iter().map(|p| format!("f_{} = {}", p.index, p.coefficient)).collect::<Vec<_>>().join("\n");
            outcome(if text.is_empty() { "0".into() } else { text }, J { poly: f.to_string(), q: q.to_string(), parts }, 0)
        }
        Command::Hasse { field, k, poly } => {
            let field = parse_field(&field)?;
            let f = parse_poly(&poly, field)?;
            let d = hasse_derivative(&f, k)?;
            #[derive(Serialize)]
            struct J {
                poly: String,
                k: usize,
                derivative: String,
            }
            outcome(d.to_string(), J { poly: f.to_string(), k, derivative: d.to_string() }, 0)
        }
        Command::Eps { source, poly } => {
            let cx = context(&source)?;
            let f = cx.poly(&poly)?;
            let r = epsilon(&cx.spec, &f)?;
            #[derive(Serialize)]
            struct J {
                poly: String,
                epsilon: String,
                indices: Vec<usize>,
            }
            outcome(
                format!("epsilon={} indices={}", r.epsilon, list(&r.indices)),
                J { poly: f.to_string(), epsilon: r.epsilon.to_string(), indices: r.indices },
                0,
            )
        }
        Command::Keycheck { source, poly } => {
            let cx = context(&source)?;
            let q = cx.poly(&poly)?;
            let v = is_key(&cx.spec, &q)?;
            let text = match &v.witness {
                Some(w) => format!("key=false witness={} epsilon={}", w, v.epsilon),
                None => format!("key=true epsilon={}", v.epsilon),
            };
            #[derive(Serialize)]
            struct J {
                q: String,
                key: bool,
                epsilon: String,
                witness: Option<String>,
            }
            let code = if v.is_key { 0 } else { 1 };
            outcome(
                text,
                J { q: q.to_string(), key: v.is_key, epsilon: v.epsilon.to_string(), witness: v.witness.map(|w| w.to_string()) },
                code,
            )
        }
        Command::InitialEq { source, f, g } => {
            let cx = context(&source)?;
            let (f, g) = (cx.bivariate(&f)?, cx.bivariate(&g)?);
            let equal = initial_equal(&cx.spec, &f, &g)?;
            let (vf, vg, vd) = (cx.spec.value(&f)?, cx.spec.value(&g)?, cx.spec.value(&(&f - &g))?);
            #[derive(Serialize)]
            struct J {
                f: String,
                g: String,
                equal: bool,
                value_f: String,
                value_g: String,
                value_difference: String,
            }
            outcome(
                format!("equal={} nu(f)={} nu(g)={} nu(f-g)={}", equal, vf, vg, vd),
                J {
                    f: f.to_string(),
                    g: g.to_string(),
                    equal,
                    value_f: vf.to_string(),
                    value_g: vg.to_string(),
                    value_difference: vd.to_string(),
                },
                if equal { 0 } else { 1 },
            )
        }
        Command::Semigroup { gens, target } => {
            let gens: Vec<Value> = gens.iter().map(|g| value(g)).collect::<Result<_>>()?;
            let target = value(&target)?;
            let w = semigroup_membership(&gens, &target)?;
            #[derive(Serialize)]
            struct J {
                generators: Vec<String>,
                target: String,
                member: bool,
                witness: Option<Vec<u64>>,
            }
            let text = match &w {
                Some(w) => format!("member=true witness={}", w),
                None => "member=false".into(),
            };
            let code = if w.is_some() { 0 } else { 1 };
            outcome(
                text,
                J {
                    generators: gens.iter().map(|g| g.to_string()).collect(),
                    target: target.to_string(),
                    member: w.is_some(),
                    witness: w.map(|w| w.multiplicities),
                },
                code,
            )
        }
        Command::Gs3Witness { source, qset, poly } => {
            let cx = context(&source)?;
            let qs = cx.qset(&qset)?;
            let f = cx.bivariate(&poly)?;
            let r = gs3_witness(&cx.spec, &qs, &f)?;
            let v = cx.spec.value(&f)?;
            let text = match &r {
                Ok(w) => format!("z={} multiplicities={} monomial={}", w.z, w.multiplicities, w.monomial),
                Err(e) => format!("failure={}", e),
            };
            let code = if r.is_ok() { 0 } else { 1 };
            outcome(text, Gs3WitnessJson::new(&f, v.to_string(), &r), code)
        }
        Command::Complete { source, qset, corpus } => {
            let cx = context(&source)?;
            let qs = cx.univariate_qset(&qset)?;
            check(&completeness_check(&cx.spec, &qs, &cx.corpus(&corpus)?)?)
        }
        Command::Gs1star { source, qset, poly } => {
            let cx = context(&source)?;
            let qs = cx.univariate_qset(&qset)?;
            let f = cx.poly(&poly)?;
            match gs1star_decompose(&cx.spec, &qs, &f) {
                Ok(cert) => {
                    let verified = gs1star_verify(&cx.spec, &qs, &f, &cert)?.is_ok();
                    outcome(format!("{} = {}", f, cert.render(&qs)), CertJson::new(&f, &cert, &qs, verified), 0)
                }
                Err(CoreError::NoEligibleQ(g)) => {
                    #[derive(Serialize)]
                    struct J {
                        poly: String,
                        error: String,
                        witness: String,
                    }
                    let msg = CoreError::NoEligibleQ(g.clone()).to_string();
                    outcome(msg.clone(), J { poly: f.to_string(), error: msg, witness: g.to_string() }, 1)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Gs2 { source, qset, gamma, corpus } => {
            let cx = context(&source)?;
            let qs = cx.qset(&qset)?;
            check(&gs2_check(&cx.spec, &qs, &value(&gamma)?, &cx.corpus(&corpus)?)?)
        }
        Command::Gs3 { source, qset, corpus, value_cap } => {
            let cx = context(&source)?;
            let qs = cx.qset(&qset)?;
            let cap = value_cap.as_deref().map(value).transpose()?;
            check(&gs3_check(&cx.spec, &qs, &cx.corpus(&corpus)?, cap)?)
        }
        Command::Crosscheck { source, qset, corpus } => {
            let cx = context(&source)?;
            let qs = cx.qset(&qset)?;
            let r = theorem_crosschecks(&cx.spec, &qs, &cx.corpus(&corpus)?)?;
            let mut lines: Vec<String> = r.implications.iter().map(|i| i.to_string()).collect();
            lines.extend(r.observations.iter().map(|o| format!("note: {}", o)));
            lines.extend(r.reports.iter().map(|c| c.to_string()));
            let code = if r.all_hold() { 0 } else { 1 };
            outcome(lines.join("\n"), CrosscheckJson::from(&r), code)
        }
        Command::PaperExample { precision } => {
            let r = counterexample_run(precision)?;
            let spec = fixtures::squares_embedding(precision);
            let mut lines = vec![format!("valuation: {}", spec), "qset: {x}".to_string()];
            for a in &r.values {
                lines.push(format!(
                    "nu({}) = {}{}",
                    a.poly,
                    a.computed,
                    if a.holds() { String::new() } else { format!(" (expected {})", a.expected) }
                ));
            }
            lines.push(r.gs3.to_string());
            lines.push(r.gs2.to_string());
            lines.push(format!("GS3 without GS2: {}", if r.separates() { "yes" } else { "no" }));
            let json = CounterexampleJson::new(&r, spec.to_string());
            outcome(lines.join("\n"), json, if r.separates() { 0 } else { 1 })
        }
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// the report to `out` and errors to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let format = cli.format;
    match execute(cli.command) {
        Ok(o) => {
            let body = match format {
                Format::Text => o.text,
                Format::Json => serde_json::to_string_pretty(&o.json).expect("json"),
            };
            let _ = writeln!(out, "{}", body);
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            e.code()
        }
    }
}

/// The JSON form of a spec, for documentation and tests.
pub fn spec_json(spec: &ValuationSpec) -> String {
    serde_json::to_string(&SpecFile::from_spec(spec)).expect("json")
}
