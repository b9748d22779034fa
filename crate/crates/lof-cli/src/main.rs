//! `lof` — command-line calculator for boundary algebra: the primary
//! arithmetic and algebra, the four-valued BF calculus and its siblings,
//! bilattice tables, equational demonstrations and the braid representation.
//!
//! Exit codes: 0 on success / all checks passing, 1 when a verification or
//! equivalence fails or a search comes up empty, 2 on input errors.

mod suites;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lof::bf::{bf_equivalent, bf_eval, nms_eval, BfValuation, SimpleValue};
use lof::calculi::{four_equivalent, four_eval, op_table, rot_eval, BinaryOp, SiblingCalculus, TupleValue};
use lof::pa::{pa_equivalent, pa_simplify, PaValuation, PaValue};
use lof::rewrite::{check, search, Calculus, Demonstration};
use lof::syntax::{ground_pair, parse, Expr, PaExpr};
use lof::EvalError;

#[derive(Parser)]
#[command(name = "lof", version, about = "Boundary-algebra calculator: marks, imaginary marks, four values and braids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Evaluate by the value arithmetic on residues/pairs.
    Pair,
    /// Evaluate by the nested marking scheme.
    Nms,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression under a calculus
    Eval {
        /// Expression in the bracket grammar, e.g. "[[X] {(),()}] Y"
        expr: String,
        /// Variable assignment VAR=VALUE; repeatable. Values: 0-3 for
        /// four-valued calculi (pair-component variables take 0/1),
        /// marked/unmarked (or 1/0) for pa, a bitmask for rot:<n>
        #[arg(long = "assign", value_name = "VAR=VALUE")]
        assign: Vec<String>,
        /// One of pa, bf, wf, belnap, rot:<n>
        #[arg(long, default_value = "bf")]
        calculus: String,
        /// Evaluation route (bf only)
        #[arg(long, value_enum, default_value_t = Method::Pair)]
        method: Method,
    },
    /// Decide equivalence of two expressions by exhaustive valuation
    Equiv {
        left: String,
        right: String,
        /// One of pa, bf, wf, belnap, rot:<n>
        #[arg(long, default_value = "bf")]
        calculus: String,
    },
    /// Print one of the four bilattice operation tables
    Table {
        /// One of or, and, oplus, otimes
        op: String,
        #[arg(long)]
        json: bool,
    },
    /// Replay a recorded demonstration from a JSON file
    CheckProof {
        file: PathBuf,
    },
    /// Search for a demonstration between two expressions
    SearchProof {
        left: String,
        right: String,
        /// Maximum number of steps
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Axiom basis: pa or bf
        #[arg(long, default_value = "pa")]
        basis: String,
    },
    /// Run a verification suite
    Verify {
        /// One of pa-consequences, bf-consequences, wf, belnap,
        /// bilattice-tables, groups, rotation, braid, quaternions, all
        suite: String,
        #[arg(long)]
        json: bool,
    },
}

/// Which calculus an expression-level command runs in.
enum CalcChoice {
    Pa,
    Bf,
    Sibling(SiblingCalculus),
    Rot(usize),
}

fn parse_calculus(text: &str) -> Result<CalcChoice, String> {
    if let Some(n) = text.strip_prefix("rot:") {
        let n: usize = n
            .parse()
            .map_err(|_| format!("bad rotation width in {text:?}"))?;
        if !(1..=16).contains(&n) {
            return Err(format!("rotation width must be 1..=16, got {n}"));
        }
        return Ok(CalcChoice::Rot(n));
    }
    match text {
        "pa" => Ok(CalcChoice::Pa),
        "bf" => Ok(CalcChoice::Bf),
        "wf" => Ok(CalcChoice::Sibling(SiblingCalculus::Waveform)),
        "belnap" => Ok(CalcChoice::Sibling(SiblingCalculus::Belnap)),
        other => Err(format!(
            "unknown calculus {other:?} (expected pa, bf, wf, belnap or rot:<n>)"
        )),
    }
}

fn parse_expr(text: &str) -> Result<Expr, String> {
    parse(text).map_err(|e| e.to_string())
}

fn split_assignment(text: &str) -> Result<(&str, &str), String> {
    text.split_once('=')
        .ok_or_else(|| format!("assignment {text:?} is not of the form VAR=VALUE"))
}

fn parse_pa_value(text: &str) -> Result<PaValue, String> {
    match text {
        "marked" | "m" | "1" => Ok(PaValue::Marked),
        "unmarked" | "u" | "0" => Ok(PaValue::Unmarked),
        other => Err(format!(
            "bad two-valued assignment {other:?} (expected marked/unmarked or 1/0)"
        )),
    }
}

fn parse_simple_value(text: &str) -> Result<SimpleValue, String> {
    match text {
        "0" => Ok(SimpleValue::new(0)),
        "1" => Ok(SimpleValue::new(1)),
        "2" => Ok(SimpleValue::new(2)),
        "3" => Ok(SimpleValue::new(3)),
        other => Err(format!("bad four-valued assignment {other:?} (expected 0..3)")),
    }
}

/// A value in both notations, e.g. `2 = {(),()}`.
fn residue_and_pair(v: SimpleValue) -> String {
    format!("{v} = {}", ground_pair(v.residue()))
}

fn pa_text(v: PaValue) -> &'static str {
    if v.is_marked() {
        "marked"
    } else {
        "unmarked"
    }
}

/// The variable names of an expression split by context: names used at the
/// top level and names used inside pair components.
fn split_var_contexts(exprs: &[&Expr]) -> (Vec<String>, Vec<String>) {
    let mut top = Vec::new();
    let mut pair = Vec::new();
    for e in exprs {
        e.visit_vars(&mut |name, in_pair| {
            let bucket = if in_pair { &mut pair } else { &mut top };
            if !bucket.iter().any(|n| n == name) {
                bucket.push(name.to_string());
            }
        });
    }
    (top, pair)
}

fn bf_valuation(exprs: &[&Expr], assigns: &[String]) -> Result<BfValuation, String> {
    let (_, pair_vars) = split_var_contexts(exprs);
    let mut v = BfValuation::new();
    for a in assigns {
        let (name, value) = split_assignment(a)?;
        if pair_vars.iter().any(|n| n == name) {
            v.pa.insert(name.to_string(), parse_pa_value(value)?);
        } else {
            v.bf.insert(name.to_string(), parse_simple_value(value)?);
        }
    }
    Ok(v)
}

fn eval_error(e: EvalError) -> String {
    e.to_string()
}

fn cmd_eval(
    expr: &str,
    assigns: &[String],
    calculus: &str,
    method: Method,
) -> Result<bool, String> {
    let choice = parse_calculus(calculus)?;
    let e = parse_expr(expr)?;
    if method == Method::Nms && !matches!(choice, CalcChoice::Bf) {
        return Err("--method nms applies to the bf calculus only".into());
    }
    match choice {
        CalcChoice::Pa => {
            let pa = PaExpr::try_from(e).map_err(eval_error)?;
            let mut v = PaValuation::new();
            for a in assigns {
                let (name, value) = split_assignment(a)?;
                v.insert(name.to_string(), parse_pa_value(value)?);
            }
            println!("{}", pa_text(pa_simplify(&pa, &v).map_err(eval_error)?));
        }
        CalcChoice::Bf => {
            let v = bf_valuation(&[&e], assigns)?;
            let value = match method {
                Method::Pair => bf_eval(&e, &v),
                Method::Nms => nms_eval(&e, &v),
            }
            .map_err(eval_error)?;
            println!("{}", residue_and_pair(value));
        }
        CalcChoice::Sibling(calc) => {
            let mut v = BTreeMap::new();
            for a in assigns {
                let (name, value) = split_assignment(a)?;
                v.insert(name.to_string(), parse_simple_value(value)?);
            }
            println!("{}", residue_and_pair(four_eval(&e, &v, calc).map_err(eval_error)?));
        }
        CalcChoice::Rot(n) => {
            let mut v = BTreeMap::new();
            for a in assigns {
                let (name, value) = split_assignment(a)?;
                let bits: u64 = value
                    .parse()
                    .map_err(|_| format!("bad tuple assignment {value:?} (expected a bitmask)"))?;
                if bits >> n != 0 {
                    return Err(format!("bitmask {bits} does not fit {n} components"));
                }
                v.insert(name.to_string(), TupleValue::from_bits(n, bits));
            }
            println!("{}", rot_eval(&e, &v, n).map_err(eval_error)?);
        }
    }
    Ok(true)
}

/// Exhaustive equivalence in the rotation calculus at width n.
fn rot_equivalent(
    f: &Expr,
    g: &Expr,
    n: usize,
) -> Result<Option<BTreeMap<String, TupleValue>>, String> {
    let mut names = f.var_names();
    for name in g.var_names() {
        if !names.contains(&name) {
            names.push(name);
        }
    }
    names.sort();
    let bits = names.len() * n;
    if bits > 20 {
        return Err(format!(
            "too many assignments to enumerate: {} variables of width {n}",
            names.len()
        ));
    }
    for index in 0..1u64 << bits {
        let v: BTreeMap<String, TupleValue> = names
            .iter()
            .enumerate()
            .map(|(k, name)| {
                (
                    name.clone(),
                    TupleValue::from_bits(n, index >> (k * n) & ((1 << n) - 1)),
                )
            })
            .collect();
        let fv = rot_eval(f, &v, n).map_err(eval_error)?;
        let gv = rot_eval(g, &v, n).map_err(eval_error)?;
        if fv != gv {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

fn cmd_equiv(left: &str, right: &str, calculus: &str) -> Result<bool, String> {
    let choice = parse_calculus(calculus)?;
    let f = parse_expr(left)?;
    let g = parse_expr(right)?;
    match choice {
        CalcChoice::Pa => {
            let pf = PaExpr::try_from(f).map_err(eval_error)?;
            let pg = PaExpr::try_from(g).map_err(eval_error)?;
            let r = pa_equivalent(&pf, &pg).map_err(eval_error)?;
            match r.countermodel {
                None => {
                    println!("equivalent");
                    Ok(true)
                }
                Some(cm) => {
                    println!("not equivalent; countermodel:");
                    for (name, value) in cm {
                        println!("  {name} = {}", pa_text(value));
                    }
                    Ok(false)
                }
            }
        }
        CalcChoice::Bf => {
            let r = bf_equivalent(&f, &g).map_err(eval_error)?;
            match r.countermodel {
                None => {
                    println!("equivalent");
                    Ok(true)
                }
                Some(cm) => {
                    println!("not equivalent; countermodel:");
                    for (name, value) in cm.bf {
                        println!("  {name} = {}", residue_and_pair(value));
                    }
                    for (name, value) in cm.pa {
                        println!("  {name} = {}", pa_text(value));
                    }
                    Ok(false)
                }
            }
        }
        CalcChoice::Sibling(calc) => {
            let r = four_equivalent(&f, &g, calc).map_err(eval_error)?;
            match r.countermodel {
                None => {
                    println!("equivalent");
                    Ok(true)
                }
                Some(cm) => {
                    println!("not equivalent; countermodel:");
                    for (name, value) in cm {
                        println!("  {name} = {}", residue_and_pair(value));
                    }
                    Ok(false)
                }
            }
        }
        CalcChoice::Rot(n) => match rot_equivalent(&f, &g, n)? {
            None => {
                println!("equivalent");
                Ok(true)
            }
            Some(cm) => {
                println!("not equivalent; countermodel:");
                for (name, value) in cm {
                    println!("  {name} = {value}");
                }
                Ok(false)
            }
        },
    }
}

fn cmd_table(op: &str, json: bool) -> Result<bool, String> {
    let op = match op {
        "or" | "or_t" => BinaryOp::OrT,
        "and" | "and_t" => BinaryOp::AndT,
        "oplus" | "oplus_k" => BinaryOp::OplusK,
        "otimes" | "otimes_k" => BinaryOp::OtimesK,
        other => {
            return Err(format!(
                "unknown operation {other:?} (expected or, and, oplus or otimes)"
            ))
        }
    };
    let table = op_table(op);
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&table).expect("table serializes")
        );
    } else {
        print!("{}", table.render_text());
    }
    Ok(true)
}

fn cmd_check_proof(file: &PathBuf) -> Result<bool, String> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
    let demo = Demonstration::from_json(&text).map_err(|e| format!("bad demonstration: {e}"))?;
    let report = check(&demo);
    if report.valid {
        println!(
            "valid: {} steps take {:?} to {:?}",
            demo.steps.len(),
            demo.start,
            demo.end
        );
        Ok(true)
    } else {
        match report.failing_step {
            Some(n) => println!(
                "invalid at step {n}: {}",
                report.reason.unwrap_or_default()
            ),
            None => println!("invalid: {}", report.reason.unwrap_or_default()),
        }
        Ok(false)
    }
}

fn cmd_search_proof(left: &str, right: &str, depth: usize, basis: &str) -> Result<bool, String> {
    let calculus = match basis {
        "pa" => Calculus::Pa,
        "bf" => Calculus::Bf,
        other => return Err(format!("unknown basis {other:?} (expected pa or bf)")),
    };
    let f = parse_expr(left)?;
    let g = parse_expr(right)?;
    match search(&f, &g, calculus, depth) {
        Some(demo) => {
            println!("{}", demo.to_json());
            Ok(true)
        }
        None => {
            println!("no demonstration found within depth {depth}");
            Ok(false)
        }
    }
}

fn cmd_verify(suite: &str, json: bool) -> Result<bool, String> {
    let checks = suites::run(suite)?;
    let pass = checks.iter().all(|c| c.pass);
    if json {
        let body: Vec<_> = checks
            .iter()
            .map(|c| {
                serde_json::json!({
                    "name": c.name,
                    "pass": c.pass,
                    "detail": c.detail,
                })
            })
            .collect();
        let doc = serde_json::json!({ "suite": suite, "pass": pass, "checks": body });
        println!("{}", serde_json::to_string_pretty(&doc).expect("report serializes"));
    } else {
        for c in &checks {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            if c.detail.is_empty() {
                println!("{mark} {}", c.name);
            } else {
                println!("{mark} {} — {}", c.name, c.detail);
            }
        }
        let passed = checks.iter().filter(|c| c.pass).count();
        println!("suite {suite}: {passed}/{} checks pass", checks.len());
    }
    Ok(pass)
}

fn run(cli: Cli) -> Result<bool, String> {
    match &cli.command {
        Command::Eval {
            expr,
            assign,
            calculus,
            method,
        } => cmd_eval(expr, assign, calculus, *method),
        Command::Equiv {
            left,
            right,
            calculus,
        } => cmd_equiv(left, right, calculus),
        Command::Table { op, json } => cmd_table(op, *json),
        Command::CheckProof { file } => cmd_check_proof(file),
        Command::SearchProof {
            left,
            right,
            depth,
            basis,
        } => cmd_search_proof(left, right, *depth, basis),
        Command::Verify { suite, json } => cmd_verify(suite, *json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
