//! The `ramified` command line. [`run`] returns the exit status and the text
//! for standard output, so it can be driven in-process.
//!
//! Exit status: 0 on success, 1 when a mathematical check fails, 2 on bad input.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::category::FiniteCategory;
use crate::constructions::{builtin_example, random_covering, wedge, Builtin, ConstructionError, RandomCoveringParams};
use crate::covering::{check_ramified_covering, check_unramified_covering, CoveringError, RamifiedCovering};
use crate::invariants::series::PowerSeries;
use crate::invariants::{
    check_riemann_hurwitz, check_zeta_divisibility, euler_rational_function, rational_string,
    series_euler_characteristic, zeta_truncated, EulerCharacteristic, DEFAULT_ORDER,
};
use crate::io::{load_category, load_functor, write_category, write_functor, InputError};
use crate::nerve::{count_chains, count_chains_based, enumerate_chains};
use crate::report::{Report, Verdict};

pub const DEFAULT_NMAX: usize = 4;
pub const DEFAULT_CASES: usize = 100;
/// Truncation order and chain length used per `selftest` case.
pub const SELFTEST_ORDER: usize = 12;
pub const SELFTEST_NMAX: usize = 3;

#[derive(Debug, Parser)]
#[command(
    name = "ramified",
    version,
    about = "Finite categories, ramified coverings and their invariants"
)]
struct Cli {
    /// Indent the JSON report.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the category axioms.
    Validate { category: String },
    /// Count or list chains of the nerve.
    Chains {
        category: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        nondegenerate: bool,
        #[arg(long)]
        base: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Series Euler characteristic.
    Euler { category: String },
    /// Truncated zeta function.
    Zeta {
        category: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Decide whether a functor is a ramified (or unramified) covering.
    Covering {
        functor: String,
        #[arg(long)]
        unramified: bool,
    },
    /// Check the structural lemmas on a covering.
    Lemmas { functor: String },
    /// Riemann-Hurwitz formula.
    Rh { functor: String },
    /// Zeta divisibility.
    Zetadiv {
        functor: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Lift counts and face/degeneracy compatibility of lifts.
    Dinverse {
        functor: String,
        #[arg(long, default_value_t = DEFAULT_NMAX)]
        nmax: usize,
    },
    /// Wedge categories at preinitial objects, given as `file:object`.
    Wedge {
        #[arg(required = true)]
        parts: Vec<String>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write a named example to a file.
    Example {
        name: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run every theorem check on seeded random coverings.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_CASES)]
        cases: usize,
    },
}

/// Outcome of a subcommand: exit status and report.
type Outcome = (i32, Report);

fn n(v: impl ToString) -> Value {
    Value::String(v.to_string())
}

fn q(v: &BigRational) -> Value {
    Value::String(rational_string(v))
}

fn series(s: &PowerSeries) -> Value {
    Value::Array(s.coeffs().iter().map(q).collect())
}

fn chi(c: &EulerCharacteristic) -> Value {
    Value::String(c.to_string())
}

fn input_error(command: &str, inputs: &[String], e: &InputError) -> Outcome {
    (
        2,
        Report::new(command, inputs.to_vec(), Verdict::Fail, Value::Null).with_diagnostics(e.diagnostics()),
    )
}

fn exit_for(verdict: Verdict) -> i32 {
    match verdict {
        Verdict::Fail => 1,
        _ => 0,
    }
}

fn pass_if(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// Loads a functor and verifies it is a ramified covering, or produces the failing outcome.
fn verified(command: &str, inputs: &[String], spec: &str) -> Result<RamifiedCovering, Outcome> {
    let p = load_functor(spec).map_err(|e| input_error(command, inputs, &e))?;
    check_ramified_covering(&p).map_err(|e| {
        (
            1,
            Report::new(command, inputs.to_vec(), Verdict::Fail, Value::Null)
                .with_diagnostics(covering_diagnostics(&e)),
        )
    })
}

fn covering_diagnostics(e: &CoveringError) -> Vec<String> {
    match e {
        CoveringError::Rejected(r) => r.failures.iter().map(ToString::to_string).collect(),
        other => vec![other.to_string()],
    }
}

fn profile_payload(cov: &RamifiedCovering) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("degree".into(), n(cov.degree()));
    m.insert("total_ramification".into(), n(cov.total_ramification()));
    m.insert(
        "ramification".into(),
        Value::Object(
            cov.ramification_map()
                .into_iter()
                .map(|(x, e)| (x.to_string(), n(e)))
                .collect(),
        ),
    );
    m
}

fn validate(inputs: &[String], spec: &str) -> Outcome {
    let c = match load_category(spec) {
        Ok(c) => c,
        Err(e) => return input_error("validate", inputs, &e),
    };
    let adjacency: Vec<Value> = c
        .adjacency_matrix()
        .iter()
        .map(|row| Value::Array(row.iter().map(n).collect()))
        .collect();
    let payload = json!({
        "objects": n(c.num_objects()),
        "morphisms": n(c.num_morphisms()),
        "non_identity_morphisms": n(c.num_non_identity_morphisms()),
        "connected": c.is_connected(),
        "preinitial": c.preinitial_objects().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "adjacency": adjacency,
    });
    (0, Report::new("validate", inputs.to_vec(), Verdict::Pass, payload))
}

fn chains(inputs: &[String], spec: &str, len: usize, nondeg: bool, base: Option<&str>, list: bool) -> Outcome {
    let c = match load_category(spec) {
        Ok(c) => c,
        Err(e) => return input_error("chains", inputs, &e),
    };
    let count = match base {
        Some(b) => match count_chains_based(&c, len, nondeg, b) {
            Ok(k) => k,
            Err(e) => {
                return (
                    2,
                    Report::new("chains", inputs.to_vec(), Verdict::Fail, Value::Null)
                        .with_diagnostics(vec![e.to_string()]),
                )
            }
        },
        None => count_chains(&c, len, nondeg),
    };
    let mut payload = json!({
        "n": n(len),
        "nondegenerate": nondeg,
        "base": base,
        "count": n(count),
    });
    if list {
        let listed = enumerate_chains(&c, len, nondeg, base).expect("base object checked above");
        payload["chains"] = Value::Array(listed.iter().map(|ch| json!(ch.ids(&c))).collect());
    }
    (0, Report::new("chains", inputs.to_vec(), Verdict::Pass, payload))
}

fn euler(inputs: &[String], spec: &str) -> Outcome {
    let c = match load_category(spec) {
        Ok(c) => c,
        Err(e) => return input_error("euler", inputs, &e),
    };
    let r = euler_rational_function(&c);
    let x = series_euler_characteristic(&c);
    let verdict = if x.is_defined() {
        Verdict::Pass
    } else {
        Verdict::Undefined
    };
    let payload = json!({
        "chi": chi(&x),
        "numerator": Value::Array(r.numerator().coeffs().iter().map(q).collect()),
        "denominator": Value::Array(r.denominator().coeffs().iter().map(q).collect()),
    });
    let mut report = Report::new("euler", inputs.to_vec(), verdict, payload);
    if !x.is_defined() {
        report.diagnostics.push("reduced denominator vanishes at t = -1".into());
    }
    (0, report)
}

fn zeta(inputs: &[String], spec: &str, order: usize) -> Outcome {
    let c = match load_category(spec) {
        Ok(c) => c,
        Err(e) => return input_error("zeta", inputs, &e),
    };
    let counts: Vec<Value> = (0..=order).map(|m| n(count_chains(&c, m, false))).collect();
    let payload = json!({
        "order": n(order),
        "chain_counts": counts,
        "coefficients": series(&zeta_truncated(&c, order)),
    });
    (0, Report::new("zeta", inputs.to_vec(), Verdict::Pass, payload))
}

fn covering(inputs: &[String], spec: &str, unramified: bool) -> Outcome {
    let p = match load_functor(spec) {
        Ok(p) => p,
        Err(e) => return input_error("covering", inputs, &e),
    };
    let fail = |diagnostics| {
        (
            1,
            Report::new("covering", inputs.to_vec(), Verdict::Fail, Value::Null).with_diagnostics(diagnostics),
        )
    };
    if unramified {
        return match check_unramified_covering(&p) {
            Ok(v) => {
                let verdict = pass_if(v.is_covering());
                let payload = json!({ "unramified": v.is_covering() });
                let diagnostics = v.witness.iter().map(ToString::to_string).collect();
                (
                    exit_for(verdict),
                    Report::new("covering", inputs.to_vec(), verdict, payload).with_diagnostics(diagnostics),
                )
            }
            Err(e) => fail(covering_diagnostics(&e)),
        };
    }
    match check_ramified_covering(&p) {
        Ok(cov) => {
            let mut payload = profile_payload(&cov);
            let unramified = check_unramified_covering(&p).map(|v| v.is_covering()).unwrap_or(false);
            payload.insert("unramified".into(), Value::Bool(unramified));
            (
                0,
                Report::new("covering", inputs.to_vec(), Verdict::Pass, Value::Object(payload)),
            )
        }
        Err(e) => fail(covering_diagnostics(&e)),
    }
}

fn lemmas(inputs: &[String], spec: &str) -> Outcome {
    let cov = match verified("lemmas", inputs, spec) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let r = cov.check_covering_lemmas();
    let names = |v: Vec<String>| Value::Array(v.into_iter().map(Value::String).collect());
    let payload = json!({
        "identity_reflection": names(r.identity_reflection.iter().map(ToString::to_string).collect()),
        "cycle": names(r.cycle.iter().map(ToString::to_string).collect()),
        "target": names(r.target.iter().map(ToString::to_string).collect()),
    });
    let verdict = pass_if(r.passed());
    (
        exit_for(verdict),
        Report::new("lemmas", inputs.to_vec(), verdict, payload),
    )
}

fn rh(inputs: &[String], spec: &str) -> Outcome {
    let cov = match verified("rh", inputs, spec) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let r = check_riemann_hurwitz(&cov);
    let verdict = match (r.passed(), r.identity_holds) {
        (false, _) => Verdict::Fail,
        (true, None) => Verdict::Undefined,
        (true, Some(_)) => Verdict::Pass,
    };
    let mut diagnostics = Vec::new();
    if !r.definedness_agrees {
        diagnostics.push(format!("chi(total) is {} but chi(base) is {}", r.chi_total, r.chi_base));
    }
    if r.identity_holds.is_some() {
        diagnostics.push(format!(
            "{} = {}*{} - {}",
            r.chi_total, r.degree, r.chi_base, r.total_ramification
        ));
    }
    let payload = json!({
        "chi_total": chi(&r.chi_total),
        "chi_base": chi(&r.chi_base),
        "degree": n(r.degree),
        "total_ramification": n(r.total_ramification),
        "definedness_agrees": r.definedness_agrees,
        "identity_holds": r.identity_holds,
    });
    (
        exit_for(verdict),
        Report::new("rh", inputs.to_vec(), verdict, payload).with_diagnostics(diagnostics),
    )
}

fn zetadiv(inputs: &[String], spec: &str, order: usize) -> Outcome {
    let cov = match verified("zetadiv", inputs, spec) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let r = check_zeta_divisibility(&cov, order);
    let verdict = pass_if(r.passed());
    let payload = json!({
        "order": n(order),
        "degree": n(cov.degree()),
        "total_ramification": n(cov.total_ramification()),
        "total": series(&r.total),
        "predicted": series(&r.predicted),
        "first_mismatch": r.first_mismatch.map(n),
    });
    (
        exit_for(verdict),
        Report::new("zetadiv", inputs.to_vec(), verdict, payload),
    )
}

fn dinverse(inputs: &[String], spec: &str, nmax: usize) -> Outcome {
    let cov = match verified("dinverse", inputs, spec) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let r = cov.check_simplicial_compatibility(nmax);
    let verdict = pass_if(r.passed());
    let mut diagnostics: Vec<String> = r
        .cardinality_violations
        .iter()
        .map(|v| {
            format!(
                "chain [{}] has {} lifts, expected {}",
                v.base_chain.join(", "),
                v.lifts,
                v.expected
            )
        })
        .collect();
    diagnostics.extend(r.violations.iter().map(|v| {
        format!(
            "{:?} {} on chain [{}] does not commute with lifting",
            v.operator,
            v.index,
            v.base_chain.join(", ")
        )
    }));
    let payload = json!({
        "n_max": n(nmax),
        "degree": n(cov.degree()),
        "chains_checked": n(r.chains_checked),
        "operator_checks": n(r.operator_checks),
        "cardinality_violations": n(r.cardinality_violations.len()),
        "compatibility_violations": n(r.violations.len()),
    });
    (
        exit_for(verdict),
        Report::new("dinverse", inputs.to_vec(), verdict, payload).with_diagnostics(diagnostics),
    )
}

fn wedge_cmd(inputs: &[String], parts: &[String], output: &Path) -> Outcome {
    let fail = |code, diagnostics| {
        (
            code,
            Report::new("wedge", inputs.to_vec(), Verdict::Fail, Value::Null).with_diagnostics(diagnostics),
        )
    };
    let mut loaded: Vec<(FiniteCategory, String)> = Vec::new();
    for part in parts {
        let Some((path, object)) = part.rsplit_once(':') else {
            return fail(2, vec![format!("`{part}` is not of the form <category>:<object>")]);
        };
        match load_category(path) {
            Ok(c) => loaded.push((c, object.to_string())),
            Err(e) => return input_error("wedge", inputs, &e),
        }
    }
    let refs: Vec<(FiniteCategory, &str)> = loaded.iter().map(|(c, o)| (c.clone(), o.as_str())).collect();
    let w = match wedge(&refs) {
        Ok(w) => w,
        Err(e @ ConstructionError::NotPreinitial { .. }) => return fail(1, vec![e.to_string()]),
        Err(e) => return fail(2, vec![e.to_string()]),
    };
    if let Err(e) = write_category(output, &w.category) {
        return fail(2, vec![format!("{}: {e}", output.display())]);
    }
    let payload = json!({
        "output": output.display().to_string(),
        "objects": n(w.category.num_objects()),
        "non_identity_morphisms": n(w.category.num_non_identity_morphisms()),
        "basepoint": crate::constructions::WEDGE_BASE,
    });
    (0, Report::new("wedge", inputs.to_vec(), Verdict::Pass, payload))
}

fn example(inputs: &[String], name: &str, output: &Path) -> Outcome {
    let fail = |diagnostics| {
        (
            2,
            Report::new("example", inputs.to_vec(), Verdict::Fail, Value::Null).with_diagnostics(diagnostics),
        )
    };
    let b = match builtin_example(name) {
        Ok(b) => b,
        Err(e) => return fail(vec![e.to_string()]),
    };
    let (kind, written) = match b {
        Builtin::Category(c) => (
            "category",
            write_category(output, &c).map(|_| vec![output.to_path_buf()]),
        ),
        Builtin::Functor(f) => ("functor", write_functor(output, &f)),
    };
    match written {
        Ok(files) => {
            let payload = json!({
                "kind": kind,
                "files": files.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
            });
            (0, Report::new("example", inputs.to_vec(), Verdict::Pass, payload))
        }
        Err(e) => fail(vec![format!("{}: {e}", output.display())]),
    }
}

/// Runs every theorem check on one covering; returns the names of failed checks.
pub fn theorem_failures(cov: &RamifiedCovering) -> Vec<&'static str> {
    let mut failed = Vec::new();
    if !cov.check_covering_lemmas().passed() {
        failed.push("lemmas");
    }
    if !check_riemann_hurwitz(cov).passed() {
        failed.push("riemann-hurwitz");
    }
    if !check_zeta_divisibility(cov, SELFTEST_ORDER).passed() {
        failed.push("zeta-divisibility");
    }
    if !cov.check_simplicial_compatibility(SELFTEST_NMAX).passed() {
        failed.push("simplicial-compatibility");
    }
    failed
}

fn selftest(inputs: &[String], seed: u64, cases: usize) -> Outcome {
    let params = RandomCoveringParams::default();
    let mut diagnostics = Vec::new();
    let mut ramified = 0usize;
    for i in 0..cases {
        let s = seed.wrapping_add(i as u64);
        match random_covering(s, &params) {
            Ok(cov) => {
                if cov.total_ramification() > 0 {
                    ramified += 1;
                }
                let failed = theorem_failures(&cov);
                if !failed.is_empty() {
                    diagnostics.push(format!("seed {s}: {}", failed.join(", ")));
                }
            }
            Err(e) => diagnostics.push(format!("seed {s}: {e}")),
        }
    }
    let verdict = pass_if(diagnostics.is_empty());
    let payload = json!({
        "seed": n(seed),
        "cases": n(cases),
        "ramified_cases": n(ramified),
        "failures": n(diagnostics.len()),
    });
    (
        exit_for(verdict),
        Report::new("selftest", inputs.to_vec(), verdict, payload).with_diagnostics(diagnostics),
    )
}

fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Validate { category } => validate(std::slice::from_ref(category), category),
        Command::Chains {
            category,
            n,
            nondegenerate,
            base,
            list,
        } => chains(
            std::slice::from_ref(category),
            category,
            *n,
            *nondegenerate,
            base.as_deref(),
            *list,
        ),
        Command::Euler { category } => euler(std::slice::from_ref(category), category),
        Command::Zeta { category, order } => zeta(std::slice::from_ref(category), category, *order),
        Command::Covering { functor, unramified } => covering(std::slice::from_ref(functor), functor, *unramified),
        Command::Lemmas { functor } => lemmas(std::slice::from_ref(functor), functor),
        Command::Rh { functor } => rh(std::slice::from_ref(functor), functor),
        Command::Zetadiv { functor, order } => zetadiv(std::slice::from_ref(functor), functor, *order),
        Command::Dinverse { functor, nmax } => dinverse(std::slice::from_ref(functor), functor, *nmax),
        Command::Wedge { parts, output } => wedge_cmd(parts, parts, output),
        Command::Example { name, output } => example(std::slice::from_ref(name), name, output),
        Command::Selftest { seed, cases } => selftest(&[], *seed, *cases),
    }
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (0, e.to_string()),
                _ => {
                    let report = Report::new("usage", Vec::new(), Verdict::Fail, Value::Null).with_diagnostics(
                        e.to_string()
                            .lines()
                            .filter(|l| !l.is_empty())
                            .map(str::to_string)
                            .collect(),
                    );
                    (2, report.to_json(false) + "\n")
                }
            };
        }
    };
    let (code, report) = dispatch(&cli);
    (code, report.to_json(cli.pretty) + "\n")
}
