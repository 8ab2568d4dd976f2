//! The `weakhopf` command line: validate, build, cleft, reconstruct, equiv and eval.
//!
//! Exit codes: 0 when no report entry fails (skipped entries are allowed), 1 when a check or
//! a construction hypothesis fails, 2 when the input cannot be read or is ill-shaped.
//! Reports are JSON and byte-identical across reruns unless `--timing` is given.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::cleft::{
    cleaving_check, comodule_algebra_report, decomposition, extension_check, reconstruct,
    CleftError,
};
use crate::corpus::Corpus;
use crate::crossed::{
    build_crossed_product, cocycle_report, crossed_product_law_suite, equivalence_from_phi,
    gamma_inverse, invert_cocycle, is_weak_module_algebra, measure_report, module_algebra_suite,
    CrossedError,
};
use crate::linalg::{FieldSpec, LinMap};
use crate::presentation::{crossed_product_presentation, Presentation, PresentationError};
use crate::verdict::{Status, Verdict, VerdictReport};
use crate::weakhopf::{check_antipode, check_bialgebra_axioms, projection_identity_suite};

#[derive(Parser, Debug)]
#[command(
    name = "weakhopf",
    version,
    about = "Exact checks for weak Hopf algebras, crossed products and cleft extensions"
)]
pub struct Cli {
    /// Read every scalar in this field instead of the declared one (`rational` or `prime:P`).
    #[arg(long, global = true)]
    pub field: Option<FieldSpec>,
    /// Where to write the JSON report (default: beside the input).
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Record elapsed milliseconds in the report; reports are otherwise reproducible.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Weak bialgebra axioms, antipode axioms and the projection identities.
    Validate {
        /// Presentation file.
        path: PathBuf,
    },
    /// Build the crossed product of a measure and a cocycle and run its suites.
    Build {
        /// Presentation file.
        path: PathBuf,
        /// Generator to use as the measure instead of the tagged one.
        #[arg(long)]
        measure: Option<String>,
        /// Generator to use as the cocycle instead of the tagged one.
        #[arg(long)]
        cocycle: Option<String>,
        /// Output presentation with the product's matrices (default: beside the input).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a comodule algebra extension with cleaving maps is cleft.
    Cleft {
        /// Presentation file tagging a comodule, an extension and a cleaving.
        path: PathBuf,
    },
    /// Recover the measure, cocycle and inverse cocycle of a cleft extension.
    Reconstruct {
        /// Presentation file tagging a comodule, an extension and a cleaving.
        path: PathBuf,
    },
    /// Check a map phi: H -> A against the equivalence conditions and build the isomorphism.
    Equiv {
        /// Presentation file.
        path: PathBuf,
        /// Generator to use as phi instead of the tagged one.
        #[arg(long)]
        phi: Option<String>,
        /// Measure of the second product (default: the first one's).
        #[arg(long)]
        target_measure: Option<String>,
        /// Cocycle of the second product (default: the first one's).
        #[arg(long)]
        target_cocycle: Option<String>,
    },
    /// Evaluate a term, or check an identity, against the generators of a presentation.
    Eval {
        /// Presentation file whose generators the terms may use.
        #[arg(long)]
        sig: PathBuf,
        /// Term to evaluate and print.
        #[arg(long, conflicts_with_all = ["lhs", "rhs", "identity"])]
        expr: Option<String>,
        /// Left side of an identity to check.
        #[arg(long, requires = "rhs")]
        lhs: Option<String>,
        /// Right side of an identity to check.
        #[arg(long, requires = "lhs")]
        rhs: Option<String>,
        /// A corpus identity as `signature/id`.
        #[arg(long, conflicts_with_all = ["lhs", "rhs"])]
        identity: Option<String>,
    },
}

/// The on-disk report.
#[derive(Serialize, Debug)]
pub struct ReportFile<'a> {
    pub version: &'static str,
    pub input_sha256: &'a str,
    pub entries: &'a [Verdict],
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub values: &'a BTreeMap<String, String>,
    pub millis: u64,
}

/// What a command produced before the report is written.
#[derive(Default)]
struct Outcome {
    report: VerdictReport,
    values: BTreeMap<String, String>,
    /// A construction that stopped early; forces exit code 1.
    halted: Option<String>,
}

impl Outcome {
    fn halt(&mut self, v: Verdict, message: String) {
        if self.report.get(&v.id).is_none() {
            self.report.push(v);
        }
        self.halted = Some(message);
    }
}

enum Failure {
    /// Unreadable or ill-shaped input: exit 2.
    Input(String),
}

impl From<PresentationError> for Failure {
    fn from(e: PresentationError) -> Failure {
        Failure::Input(e.to_string())
    }
}

/// Parses `std::env::args` and runs; returns the exit code.
pub fn main() -> i32 {
    run(Cli::parse())
}

pub fn run(cli: Cli) -> i32 {
    let start = Instant::now();
    let result = match &cli.command {
        Command::Eval {
            sig,
            expr,
            lhs,
            rhs,
            identity,
        } => {
            return eval(
                &cli,
                sig,
                expr.as_deref(),
                lhs.as_deref().zip(rhs.as_deref()),
                identity.as_deref(),
            )
        }
        Command::Validate { path } => load(&cli, path).map(|p| (validate(&p), p)),
        Command::Build {
            path,
            measure,
            cocycle,
            out,
        } => load(&cli, path).and_then(|p| {
            let out = out.clone().unwrap_or_else(|| beside(path, "built.json"));
            build(&p, measure.as_deref(), cocycle.as_deref(), &out).map(|o| (o, p))
        }),
        Command::Cleft { path } => load(&cli, path).and_then(|p| cleft(&p).map(|o| (o, p))),
        Command::Reconstruct { path } => {
            load(&cli, path).and_then(|p| reconstruction(&p).map(|o| (o, p)))
        }
        Command::Equiv {
            path,
            phi,
            target_measure,
            target_cocycle,
        } => load(&cli, path).and_then(|p| {
            equiv(
                &p,
                phi.as_deref(),
                target_measure.as_deref(),
                target_cocycle.as_deref(),
            )
            .map(|o| (o, p))
        }),
    };
    let (outcome, p) = match result {
        Ok(x) => x,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    print!("{}", outcome.report);
    let counts = |s: Status| {
        outcome
            .report
            .entries()
            .iter()
            .filter(|v| v.status == s)
            .count()
    };
    println!(
        "{} passed, {} failed, {} skipped",
        counts(Status::Pass),
        counts(Status::Fail),
        counts(Status::Skipped)
    );
    for (k, v) in &outcome.values {
        println!("{k}: {v}");
    }
    if let Some(msg) = &outcome.halted {
        println!("stopped: {msg}");
    }
    let path = cli
        .report
        .clone()
        .unwrap_or_else(|| beside(input_path(&cli.command), &report_suffix(&cli.command)));
    let millis = if cli.timing {
        start.elapsed().as_millis() as u64
    } else {
        0
    };
    let file = ReportFile {
        version: env!("CARGO_PKG_VERSION"),
        input_sha256: &p.sha256,
        entries: outcome.report.entries(),
        values: &outcome.values,
        millis,
    };
    let mut text = serde_json::to_string_pretty(&file).expect("serializable");
    text.push('\n');
    if let Err(e) = std::fs::write(&path, text) {
        eprintln!("error: cannot write {}: {e}", path.display());
        return 2;
    }
    println!("report: {}", path.display());
    if outcome.halted.is_some() || !outcome.report.all_pass() {
        1
    } else {
        0
    }
}

fn input_path(c: &Command) -> &Path {
    match c {
        Command::Validate { path }
        | Command::Build { path, .. }
        | Command::Cleft { path }
        | Command::Reconstruct { path }
        | Command::Equiv { path, .. } => path,
        Command::Eval { sig, .. } => sig,
    }
}

fn report_suffix(c: &Command) -> String {
    let name = match c {
        Command::Validate { .. } => "validate",
        Command::Build { .. } => "build",
        Command::Cleft { .. } => "cleft",
        Command::Reconstruct { .. } => "reconstruct",
        Command::Equiv { .. } => "equiv",
        Command::Eval { .. } => "eval",
    };
    format!("{name}.report.json")
}

/// `dir/stem.suffix` for an input `dir/stem.json`.
fn beside(input: &Path, suffix: &str) -> PathBuf {
    let stem = input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    input.with_file_name(format!("{stem}.{suffix}"))
}

fn load(cli: &Cli, path: &Path) -> Result<Presentation, Failure> {
    Ok(Presentation::load(path, cli.field)?)
}

fn validate(p: &Presentation) -> Outcome {
    let mut o = Outcome::default();
    let h = match p.bialgebra() {
        Ok(h) => h,
        Err(e) => {
            o.halt(
                Verdict::fail("bialgebra.shape", None).with_note(&e.to_string()),
                e.to_string(),
            );
            return o;
        }
    };
    o.report.extend("axioms", check_bialgebra_axioms(&h));
    match p.hopf() {
        Ok(Some(s)) => {
            o.report.extend("antipode", check_antipode(&s));
            o.report.extend(
                "projections",
                projection_identity_suite(&h, Some(s.antipode())),
            );
        }
        Ok(None) => o
            .report
            .extend("projections", projection_identity_suite(&h, None)),
        Err(e) => o.halt(
            Verdict::fail("antipode.shape", None).with_note(&e.to_string()),
            e.to_string(),
        ),
    }
    o.values.insert("dim_H".into(), h.dim().to_string());
    o
}

fn crossed_failure(o: &mut Outcome, stage: &str, e: CrossedError) -> Result<(), Failure> {
    let v = match &e {
        CrossedError::MeasureFailed(v) | CrossedError::HypothesisFailed(v) => (**v).clone(),
        CrossedError::ConditionFailed { verdict, .. } => (**verdict).clone(),
        CrossedError::NotInvertible
        | CrossedError::PreconditionFailed(_)
        | CrossedError::NotAnEquivalence(_) => {
            Verdict::fail("error", None).with_note(&e.to_string())
        }
        _ => return Err(Failure::Input(e.to_string())),
    };
    let message = match &e {
        CrossedError::ConditionFailed { condition, .. } => {
            format!("condition ({condition}) fails at {}", v.id)
        }
        CrossedError::MeasureFailed(_) | CrossedError::HypothesisFailed(_) => {
            format!("{} fails", v.id)
        }
        _ => e.to_string(),
    };
    let id = format!("{stage}.{}", v.id);
    o.halt(v.with_id(&id), format!("{stage}: {message}"));
    Ok(())
}

fn cleft_failure(o: &mut Outcome, stage: &str, e: CleftError) -> Result<(), Failure> {
    let v = match &e {
        CleftError::PreconditionFailed(v) => (**v).clone(),
        CleftError::FactorizationFailed(what) => Verdict::fail(&format!("{what}.factors"), None),
        CleftError::Crossed(c) => Verdict::fail("error", None).with_note(&c.to_string()),
        _ => return Err(Failure::Input(e.to_string())),
    };
    let message = match &e {
        CleftError::PreconditionFailed(_) => format!("{} fails", v.id),
        _ => e.to_string(),
    };
    let id = format!("{stage}.{}", v.id);
    o.halt(v.with_id(&id), format!("{stage}: {message}"));
    Ok(())
}

fn build(
    p: &Presentation,
    measure: Option<&str>,
    cocycle: Option<&str>,
    out: &Path,
) -> Result<Outcome, Failure> {
    let mut o = Outcome::default();
    let m = p.measure(measure)?;
    let c = p.cocycle(&m, cocycle)?;
    o.report.extend("measure", measure_report(&m));
    o.report.extend("cocycle", cocycle_report(&c));
    let x = match build_crossed_product(&c) {
        Ok(x) => x,
        Err(e) => {
            crossed_failure(&mut o, "hypotheses", e)?;
            return Ok(o);
        }
    };
    o.report.extend("hypotheses", x.hypotheses().clone());
    o.report.extend("laws", crossed_product_law_suite(&x));
    o.report.extend("module", module_algebra_suite(&x));
    o.values.insert("E_dim".into(), x.dim().to_string());
    let gamma_inv = if m.antipode().is_some() && is_weak_module_algebra(&m) {
        match invert_cocycle(&c) {
            Ok(inv) => match gamma_inverse(&x, &inv.f_inv) {
                Ok(g) if g.report.all_pass() => Ok(g.gamma_inv),
                Ok(g) => Err(format!(
                    "gamma inverse fails {}",
                    g.report.first_failure().map_or("", |v| &v.id)
                )),
                Err(e) => Err(e.to_string()),
            },
            Err(e) => Err(e.to_string()),
        }
    } else {
        Err("needs an antipode and a weak action".into())
    };
    let note = match &gamma_inv {
        Ok(_) => "included".to_string(),
        Err(why) => format!("omitted: {why}"),
    };
    o.values.insert("cleaving".into(), note);
    let file = crossed_product_presentation(&p.file, &x, gamma_inv.as_ref().ok())?;
    std::fs::write(out, file.to_json())
        .map_err(|e| Failure::Input(format!("cannot write {}: {e}", out.display())))?;
    o.values.insert("output".into(), out.display().to_string());
    Ok(o)
}

fn cleft(p: &Presentation) -> Result<Outcome, Failure> {
    let mut o = Outcome::default();
    let x = p.extension()?;
    let c = p.cleaving()?;
    o.report
        .extend("comodule", comodule_algebra_report(x.comodule()));
    o.report.extend("extension", extension_check(&x));
    match cleaving_check(&x, &c) {
        Ok(r) => o.report.extend("cleaving", r),
        Err(e) => cleft_failure(&mut o, "cleaving", e)?,
    }
    Ok(o)
}

/// `Verdict::equal` after relabelling `expected` onto the words of `actual`.
fn matches_input(id: &str, actual: &LinMap, expected: &LinMap) -> Verdict {
    match expected.with_words(actual.dom().clone(), actual.cod().clone()) {
        Ok(e) => Verdict::equal(id, actual, &e),
        Err(err) => Verdict::fail(id, None).with_note(&err.to_string()),
    }
}

fn reconstruction(p: &Presentation) -> Result<Outcome, Failure> {
    let mut o = Outcome::default();
    let x = p.extension()?;
    let c = p.cleaving()?;
    match decomposition(&x, &c) {
        Ok(d) => {
            o.values
                .insert("Omega_rank".into(), d.omega().rank().to_string());
            o.report.extend("decomposition", d.report);
        }
        Err(e) => {
            cleft_failure(&mut o, "decomposition", e)?;
            return Ok(o);
        }
    }
    let r = match reconstruct(&x, &c) {
        Ok(r) => r,
        Err(e) => {
            cleft_failure(&mut o, "reconstruct", e)?;
            return Ok(o);
        }
    };
    o.report.extend("reconstruct", r.report.clone());
    if let Some(role) = &p.file.roles.measure {
        o.report
            .push(matches_input("input.rho", r.rho(), p.map(&role.rho)?));
    }
    if let Some(f) = &p.file.roles.cocycle {
        o.report.push(matches_input("input.f", r.f(), p.map(f)?));
    }
    match r.recover_inverse() {
        Ok(inv) => o.report.extend("recover", inv.report),
        Err(e) => return cleft_failure(&mut o, "recover", e).map(|_| o),
    }
    match r.iso() {
        Ok(iso) => {
            o.values
                .insert("iso_dim".into(), iso.map.cols().to_string());
            o.report.extend("iso", iso.report);
        }
        Err(e) => cleft_failure(&mut o, "iso", e)?,
    }
    Ok(o)
}

fn equiv(
    p: &Presentation,
    phi: Option<&str>,
    target_measure: Option<&str>,
    target_cocycle: Option<&str>,
) -> Result<Outcome, Failure> {
    let mut o = Outcome::default();
    let phi = p.phi(phi)?;
    let m = p.measure(None)?;
    let c = p.cocycle(&m, None)?;
    let m2 = p.measure(target_measure)?;
    let c2 = p.cocycle(&m2, target_cocycle)?;
    let (x, y) = match (build_crossed_product(&c), build_crossed_product(&c2)) {
        (Ok(x), Ok(y)) => (x, y),
        (Err(e), _) => return crossed_failure(&mut o, "source", e).map(|_| o),
        (_, Err(e)) => return crossed_failure(&mut o, "target", e).map(|_| o),
    };
    match equivalence_from_phi(&x, &y, &phi) {
        Ok(eq) => {
            o.report.extend("equivalence", eq.report);
            o.values.insert("Phi".into(), format_matrix(&eq.map));
        }
        Err(e) => crossed_failure(&mut o, "equivalence", e)?,
    }
    Ok(o)
}

fn format_matrix(m: &LinMap) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    format!("[{}]", rows.join("; "))
}

fn eval(
    cli: &Cli,
    sig: &Path,
    expr: Option<&str>,
    sides: Option<(&str, &str)>,
    identity: Option<&str>,
) -> i32 {
    let p = match load(cli, sig) {
        Ok(p) => p,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    let env = p.env();
    if let Some(text) = expr {
        return match env.eval(text) {
            Ok(m) => {
                println!("{} -> {}", m.dom(), m.cod());
                for row in m.to_rows() {
                    println!(
                        "{}",
                        row.iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    );
                }
                0
            }
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        };
    }
    let (lhs, rhs) = match (sides, identity) {
        (Some(s), _) => s,
        (None, Some(key)) => {
            let found = key
                .split_once('/')
                .and_then(|(s, id)| Corpus::active().entry(s, id));
            match found {
                Some(e) => (e.lhs.as_str(), e.rhs.as_str()),
                None => {
                    eprintln!("error: no corpus identity {key}");
                    return 2;
                }
            }
        }
        (None, None) => {
            eprintln!("error: give --expr, --lhs and --rhs, or --identity");
            return 2;
        }
    };
    match env.check("identity", lhs, rhs) {
        Ok(v) if v.passed() => {
            println!("IDENTITY: pass");
            0
        }
        Ok(v) => {
            match &v.witness {
                Some(w) => println!("IDENTITY: fail at {w}"),
                None => println!("IDENTITY: fail"),
            }
            1
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
