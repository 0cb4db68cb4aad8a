//! `symskew`: command-line front end.
//!
//! Exit codes: 0 success, 1 mathematical negative (failed check, obstruction,
//! exhausted search), 2 usage error.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use symskew::criteria::{self, CriterionId, SearchPool, Variant};
use symskew::decompose::{self, Certificate, Scheme};
use symskew::staralgebra::{self, IdentityVerdict};
use symskew::structure::{self, TheoremStatus, THEOREM_IDS};
use symskew::{Element, FieldDescriptor, InvolutiveAlgebra};

#[derive(Parser)]
#[command(name = "symskew", version, about = "Symmetric and skew elements of rings with involution")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct AlgebraArgs {
    /// `mat:<n>:<transpose|symplectic>` or `quat`.
    #[arg(long)]
    algebra: String,
    /// `q` or `gf:<p>`.
    #[arg(long, default_value = "q")]
    field: String,
}

impl AlgebraArgs {
    fn resolve(&self) -> Result<InvolutiveAlgebra, Failure> {
        let field = FieldDescriptor::parse_spec(&self.field).map_err(Failure::usage)?;
        InvolutiveAlgebra::parse_spec(&self.algebra, field).map_err(Failure::usage)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Verify theorems on an algebra.
    Verify {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// Theorem ids, or `all`.
        #[arg(long = "theorem", required = true)]
        theorems: Vec<String>,
        /// Lines of `<theorem> <Verified|HypothesisFailed|ConclusionFailed>`.
        #[arg(long)]
        expect: Option<PathBuf>,
    },
    /// Check a criterion on a witness pair.
    Check {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        criterion: String,
        /// `paper:<name>`, `file:<path>` or `elements:<x>,<y>`.
        #[arg(long)]
        witness: String,
    },
    /// Search the basis pool for a criterion witness.
    Search {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        criterion: String,
        /// Maximum number of pairs, or `all`.
        #[arg(long)]
        budget: String,
        #[arg(long, value_enum, default_value_t = Pool::Sums)]
        pool: Pool,
    },
    /// Decompose a target and emit a certificate.
    Decompose {
        #[command(flatten)]
        algebra: AlgebraArgs,
        /// `s3`, `s2`, `k_plus_k2` or `k_plus_k2_k3`.
        #[arg(long)]
        scheme: String,
        /// `paper:<name>`, `file:<path>` or `elements:<x>,<y>`; searched for when absent.
        #[arg(long)]
        witness: Option<String>,
        /// Element name such as `e12`, or a JSON file.
        #[arg(long, conflicts_with = "seed")]
        target: Option<String>,
        /// Seed for a pseudo-random target.
        #[arg(long)]
        seed: Option<u64>,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a certificate file.
    VerifyCertificate { path: PathBuf },
    /// Check an identity corpus in the free algebra with involution.
    Identity {
        /// Corpus file; the bundled corpus when absent.
        #[arg(long, conflicts_with = "mutated")]
        corpus: Option<PathBuf>,
        /// Use the bundled mutated corpus.
        #[arg(long)]
        mutated: bool,
    },
    /// Evaluate a set expression such as `S^2` or `K+K o K`.
    Eval {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        expr: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Pool {
    Basis,
    Sums,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(e: impl std::fmt::Display) -> Self {
        Failure { code: 2, message: e.to_string() }
    }

    fn negative(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

/// Report plus exit code.
struct Outcome {
    json: Value,
    text: String,
    success: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
                Format::Text => print!("{}", out.text),
            }
            ExitCode::from(if out.success { 0 } else { 1 })
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: &Command) -> Result<Outcome, Failure> {
    match cmd {
        Command::Verify { algebra, theorems, expect } => verify(algebra, theorems, expect.as_deref()),
        Command::Check { algebra, criterion, witness } => check(algebra, criterion, witness),
        Command::Search { algebra, criterion, budget, pool } => search(algebra, criterion, budget, *pool),
        Command::Decompose { algebra, scheme, witness, target, seed, out } => {
            decompose_cmd(algebra, scheme, witness.as_deref(), target.as_deref(), *seed, out.as_deref())
        }
        Command::VerifyCertificate { path } => verify_certificate(path),
        Command::Identity { corpus, mutated } => identity(corpus.as_deref(), *mutated),
        Command::Eval { algebra, expr } => eval(algebra, expr),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn parse_expectations(path: &Path) -> Result<BTreeMap<String, String>, Failure> {
    let mut out = BTreeMap::new();
    for (i, line) in read(path)?.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts[..] {
            [id, status] if ["Verified", "HypothesisFailed", "ConclusionFailed"].contains(&status) => {
                out.insert(id.to_string(), status.to_string());
            }
            _ => return Err(Failure::usage(format!("{}:{}: expected `<theorem> <status>`", path.display(), i + 1))),
        }
    }
    Ok(out)
}

fn verify(args: &AlgebraArgs, theorems: &[String], expect: Option<&Path>) -> Result<Outcome, Failure> {
    let alg = args.resolve()?;
    let ids: Vec<String> = if theorems.iter().any(|t| t == "all") {
        THEOREM_IDS.iter().map(|s| s.to_string()).collect()
    } else {
        theorems.to_vec()
    };
    for id in &ids {
        if !THEOREM_IDS.contains(&id.as_str()) {
            return Err(Failure::usage(structure::StructureError::UnknownTheorem(id.clone())));
        }
    }
    let expectations = expect.map(parse_expectations).transpose()?;
    let mut ctx = structure::TheoremContext::new(&alg);
    let mut reports = Vec::new();
    let mut text = String::new();
    let mut success = true;
    for id in &ids {
        let report = ctx.verify(id).map_err(Failure::usage)?;
        let ok = match expectations.as_ref().and_then(|e| e.get(id)) {
            Some(expected) => report.status.to_string() == *expected,
            None => report.status == TheoremStatus::Verified,
        };
        success &= ok;
        text.push_str(&report.text_line());
        text.push('\n');
        let mut j = report.to_json();
        j["expected_outcome_met"] = json!(ok);
        reports.push(j);
    }
    Ok(Outcome { json: json!({ "algebra": alg.spec(), "field": alg.field().spec(), "reports": reports }), text, success })
}

/// Resolves `paper:<name>`, `file:<path>` or `elements:<x>,<y>`.
fn resolve_witness(alg: &InvolutiveAlgebra, source: &str) -> Result<(Element, Element), Failure> {
    if let Some(name) = source.strip_prefix("paper:") {
        return criteria::paper_witness(alg, name).map_err(Failure::usage);
    }
    if let Some(path) = source.strip_prefix("file:") {
        let v: Value = serde_json::from_str(&read(Path::new(path))?).map_err(Failure::usage)?;
        let get = |k: &str| -> Result<Element, Failure> {
            let e = v.get(k).ok_or_else(|| Failure::usage(format!("{path}: missing \"{k}\"")))?;
            alg.element_from_json(e).map_err(Failure::usage)
        };
        return Ok((get("x")?, get("y")?));
    }
    if let Some(pair) = source.strip_prefix("elements:") {
        let (x, y) = pair.split_once(',').ok_or_else(|| Failure::usage("elements: needs `<x>,<y>`"))?;
        let x = alg.parse_element_name(x.trim()).map_err(Failure::usage)?;
        let y = alg.parse_element_name(y.trim()).map_err(Failure::usage)?;
        return Ok((x, y));
    }
    Err(Failure::usage(format!("witness source {source:?} must start with paper:, file: or elements:")))
}

fn check(args: &AlgebraArgs, criterion: &str, witness: &str) -> Result<Outcome, Failure> {
    let alg = args.resolve()?;
    let id = CriterionId::parse(criterion).map_err(Failure::usage)?;
    let (x, y) = resolve_witness(&alg, witness)?;
    let outcome = criteria::check_criterion(&alg, id, &x, &y).map_err(Failure::usage)?;
    let text = match outcome.failure() {
        None => format!("criterion {id} on {alg}: pass\n"),
        Some(why) => format!("criterion {id} on {alg}: fail ({why})\n"),
    };
    Ok(Outcome { json: outcome.to_json(), text, success: outcome.verdict })
}

fn search(args: &AlgebraArgs, criterion: &str, budget: &str, pool: Pool) -> Result<Outcome, Failure> {
    let alg = args.resolve()?;
    let id = CriterionId::parse(criterion).map_err(Failure::usage)?;
    let budget = match budget {
        "all" => None,
        n => Some(n.parse::<usize>().map_err(|_| Failure::usage(format!("budget {n:?} is not a number or `all`")))?),
    };
    let pool = match pool {
        Pool::Basis => SearchPool::Basis,
        Pool::Sums => SearchPool::BasisSumsDifferences,
    };
    let result = criteria::witness_search(&alg, id, pool, budget).map_err(Failure::usage)?;
    let text = match &result.outcome {
        Some(o) => format!("criterion {id} on {alg}: witness found after {} pairs: x = {}, y = {}\n", result.tried, o.x, o.y),
        None => format!("criterion {id} on {alg}: exhausted after {} pairs\n", result.tried),
    };
    Ok(Outcome { json: result.to_json(), text, success: result.found() })
}

fn scheme_criterion(scheme: Scheme) -> CriterionId {
    match scheme {
        Scheme::S3 => CriterionId::Aux(Variant::H3),
        Scheme::S2 => CriterionId::Aux(Variant::H2),
        Scheme::KPlusK2 => CriterionId::Aux(Variant::D),
        Scheme::KPlusK2K3 => CriterionId::Aux(Variant::E),
    }
}

fn resolve_target(alg: &InvolutiveAlgebra, target: Option<&str>, seed: Option<u64>) -> Result<Element, Failure> {
    match (target, seed) {
        (Some(t), _) if t.ends_with(".json") => {
            let v: Value = serde_json::from_str(&read(Path::new(t))?).map_err(Failure::usage)?;
            alg.element_from_json(&v).map_err(Failure::usage)
        }
        (Some(t), _) => alg.parse_element_name(t).map_err(Failure::usage),
        (None, Some(seed)) => Ok(decompose::random_target(alg, seed)),
        (None, None) => Err(Failure::usage("give --target or --seed")),
    }
}

fn decompose_cmd(
    args: &AlgebraArgs,
    scheme: &str,
    witness: Option<&str>,
    target: Option<&str>,
    seed: Option<u64>,
    out: Option<&Path>,
) -> Result<Outcome, Failure> {
    let alg = args.resolve()?;
    let scheme = Scheme::parse(scheme).map_err(Failure::usage)?;
    let r = resolve_target(&alg, target, seed)?;
    let (x, y) = match witness {
        Some(w) => resolve_witness(&alg, w)?,
        None => {
            let found = criteria::witness_search(&alg, scheme_criterion(scheme), SearchPool::BasisSumsDifferences, None)
                .map_err(Failure::usage)?;
            match (found.outcome, found.closest) {
                (Some(o), _) => (o.x, o.y),
                (None, Some(c)) => {
                    return Err(Failure::negative(format!(
                        "obstruction: no witness in the search pool; first nondegenerate pair has {}",
                        c.failure().unwrap_or_default()
                    )))
                }
                (None, None) => {
                    return Err(Failure::negative(format!(
                        "obstruction: no candidate pair satisfies the nondegeneracy of scheme {scheme}"
                    )))
                }
            }
        }
    };
    let cert = match scheme {
        Scheme::S3 => decompose::decompose_s3(&alg, &x, &y, &r),
        Scheme::S2 => decompose::decompose_s2(&alg, &x, &y, &r, decompose::default_xsy_decomposer(&x, &y).as_ref()),
        Scheme::KPlusK2 | Scheme::KPlusK2K3 => decompose::decompose_k_chain(&alg, &x, &y, &r, scheme),
    }
    .map_err(|e| match e {
        decompose::DecomposeError::NotSymmetric { .. } | decompose::DecomposeError::NotSkew { .. } => Failure::usage(e),
        other => Failure::negative(format!("obstruction: {other}")),
    })?;
    let verdict = decompose::verify_certificate(&cert);
    let body = cert.to_json();
    let mut text = String::new();
    if let Some(path) = out {
        let pretty = serde_json::to_string_pretty(&body).expect("serializable");
        fs::write(path, pretty + "\n").map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        text.push_str(&format!("certificate written to {}\n", path.display()));
    } else {
        text.push_str(&serde_json::to_string_pretty(&body).expect("serializable"));
        text.push('\n');
    }
    text.push_str(&format!("{} terms; {verdict}\n", cert.terms.len()));
    let json = json!({ "certificate": body, "terms": cert.terms.len(), "verdict": verdict.to_string() });
    Ok(Outcome { json, text, success: verdict.is_valid() })
}

fn verify_certificate(path: &Path) -> Result<Outcome, Failure> {
    let v: Value = serde_json::from_str(&read(path)?).map_err(Failure::usage)?;
    let cert = Certificate::from_json(&v).map_err(Failure::usage)?;
    let verdict = decompose::verify_certificate(&cert);
    Ok(Outcome {
        json: json!({ "scheme": cert.scheme.name(), "terms": cert.terms.len(), "verdict": verdict.to_string() }),
        text: format!("{}: {verdict}\n", path.display()),
        success: verdict.is_valid(),
    })
}

fn identity(corpus: Option<&Path>, mutated: bool) -> Result<Outcome, Failure> {
    let (label, text) = match corpus {
        Some(p) => (p.display().to_string(), read(p)?),
        None if mutated => ("<bundled mutated corpus>".to_string(), staralgebra::MUTATED_CORPUS.to_string()),
        None => ("<bundled corpus>".to_string(), staralgebra::CORPUS.to_string()),
    };
    let entries = staralgebra::parse_corpus(&text).map_err(|e| match e {
        staralgebra::StarError::Corpus { line, message } => Failure::usage(format!("{label}:{line}: {message}")),
        other => Failure::usage(format!("{label}: {other}")),
    })?;
    let mut rows = Vec::new();
    let mut out = String::new();
    let mut failures = 0;
    for e in &entries {
        let verdict = e.check();
        let (status, diff) = match &verdict {
            IdentityVerdict::Holds => ("holds", None),
            IdentityVerdict::Fails(d) => {
                failures += 1;
                ("fails", Some(d.to_string()))
            }
        };
        match &diff {
            None => out.push_str(&format!("{:<28} holds\n", e.name)),
            Some(d) => out.push_str(&format!("{:<28} FAILS  lhs - rhs = {d}\n", e.name)),
        }
        rows.push(json!({ "name": e.name, "line": e.line, "status": status, "difference": diff }));
    }
    out.push_str(&format!("{} identities, {failures} failing\n", entries.len()));
    let json = json!({ "corpus": label, "identities": rows, "failing": failures });
    Ok(Outcome { json, text: out, success: failures == 0 })
}

fn eval(args: &AlgebraArgs, expr: &str) -> Result<Outcome, Failure> {
    let alg = args.resolve()?;
    let parsed = structure::SetExpr::parse(expr).map_err(Failure::usage)?;
    let v = structure::eval_set_expression(&parsed, &alg).map_err(Failure::usage)?;
    let text = format!("dim {parsed} = {} of {}{}\n", v.dim(), alg.dim(), if v.is_full() { " (all of R)" } else { "" });
    let mut json = v.to_json();
    json["expr"] = json!(parsed.to_string());
    json["algebra"] = json!(alg.spec());
    json["field"] = json!(alg.field().spec());
    Ok(Outcome { json, text, success: true })
}
