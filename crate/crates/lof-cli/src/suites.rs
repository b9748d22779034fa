//! The `verify` subcommand's check suites. Every check re-derives the
//! claimed fact from the library by exhaustive enumeration and reports a
//! verdict line; countermodels are shown in residue and pair notation.

use std::collections::BTreeMap;

use lof::bf::{bf_equivalent, BfValuation, SimpleValue};
use lof::braid::{find_quaternions, generator, verify_relations, SignedPerm};
use lof::calculi::{
    cross_b, dihedral_maps, four_equivalent, marking_group, negation_group, op_table, unary,
    unary_map, verify_group, verify_wf, BinaryOp, SiblingCalculus, TupleValue, UnaryOp,
};
use lof::pa::pa_equivalent;
use lof::rewrite::{bf_rules, pa_rules, Rule};
use lof::syntax::{ground_pair, PaExpr};

pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

fn value_text(v: SimpleValue) -> String {
    format!("{v} = {}", ground_pair(v.residue()))
}

fn four_valuation_text(cm: &BTreeMap<String, SimpleValue>) -> String {
    cm.iter()
        .map(|(name, value)| format!("{name} = {}", value_text(*value)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn bf_valuation_text(cm: &BfValuation) -> String {
    let mut parts: Vec<String> = cm
        .bf
        .iter()
        .map(|(name, value)| format!("{name} = {}", value_text(*value)))
        .collect();
    parts.extend(cm.pa.iter().map(|(name, value)| {
        format!(
            "{name} = {}",
            if value.is_marked() { "marked" } else { "unmarked" }
        )
    }));
    parts.join(", ")
}

/// Distinct variable names of a rule, split into top-level and
/// pair-component occurrences.
fn rule_var_counts(rule: &Rule) -> (usize, usize) {
    let mut top = Vec::new();
    let mut pair = Vec::new();
    for side in [&rule.lhs, &rule.rhs] {
        side.visit_vars(&mut |name, in_pair| {
            let bucket = if in_pair { &mut pair } else { &mut top };
            if !bucket.iter().any(|n| n == name) {
                bucket.push(name.to_string());
            }
        });
    }
    (top.len(), pair.len())
}

fn pa_consequences() -> Vec<Check> {
    pa_rules()
        .iter()
        .map(|rule| {
            let name = format!("{} {}: {} = {}", rule.id, rule.title, rule.lhs, rule.rhs);
            let lhs = PaExpr::try_from(rule.lhs.clone()).expect("registry rules are primary");
            let rhs = PaExpr::try_from(rule.rhs.clone()).expect("registry rules are primary");
            match pa_equivalent(&lhs, &rhs) {
                Ok(r) if r.equal => {
                    let (top, _) = rule_var_counts(rule);
                    Check::new(name, true, format!("{} valuations", 1u64 << top))
                }
                Ok(r) => Check::new(name, false, format!("countermodel {:?}", r.countermodel)),
                Err(e) => Check::new(name, false, e.to_string()),
            }
        })
        .collect()
}

fn bf_consequences() -> Vec<Check> {
    bf_rules()
        .iter()
        .map(|rule| {
            let name = format!("{} {}: {} = {}", rule.id, rule.title, rule.lhs, rule.rhs);
            match bf_equivalent(&rule.lhs, &rule.rhs) {
                Ok(r) if r.equal => {
                    let (top, pair) = rule_var_counts(rule);
                    let cases = 4u64.pow(top as u32) * (1u64 << pair);
                    Check::new(name, true, format!("{cases} valuations"))
                }
                Ok(r) => Check::new(
                    name,
                    false,
                    format!("countermodel {}", bf_valuation_text(&r.countermodel.unwrap())),
                ),
                Err(e) => Check::new(name, false, e.to_string()),
            }
        })
        .collect()
}

fn wf() -> Vec<Check> {
    let report = verify_wf();
    let mut checks = vec![
        Check::new(
            "wave transposition ((A) (B)) C = ((A C) (B C))",
            report.transposition_holds,
            format!("{} valuations", report.transposition_cases),
        ),
        Check::new(
            "wave occultation ((A) B) A = A",
            report.occultation_holds,
            format!("{} valuations", report.occultation_cases),
        ),
    ];
    match report.generation_counterexample {
        Some(cx) => checks.push(Check::new(
            "generation (A) B = (A B) B fails in the wave calculus",
            true,
            format!(
                "{}: sides give {} and {}",
                four_valuation_text(&cx.valuation),
                value_text(cx.lhs),
                value_text(cx.rhs)
            ),
        )),
        None => checks.push(Check::new(
            "generation (A) B = (A B) B fails in the wave calculus",
            false,
            "no counterexample found",
        )),
    }
    match report.position_counterexample {
        Some(cx) => {
            let witness_ok = cx.valuation.get("A").map(|v| v.residue()) == Some(1);
            checks.push(Check::new(
                "position ((A) A) = (empty) fails in the wave calculus at A = 1",
                witness_ok,
                format!(
                    "{}: sides give {} and {}",
                    four_valuation_text(&cx.valuation),
                    value_text(cx.lhs),
                    value_text(cx.rhs)
                ),
            ));
        }
        None => checks.push(Check::new(
            "position ((A) A) = (empty) fails in the wave calculus at A = 1",
            false,
            "no counterexample found",
        )),
    }
    checks
}

fn belnap() -> Vec<Check> {
    let mut checks = Vec::new();
    for rule in pa_rules() {
        let name = format!(
            "doubled calculus satisfies {} {}: {} = {}",
            rule.id, rule.title, rule.lhs, rule.rhs
        );
        match four_equivalent(&rule.lhs, &rule.rhs, SiblingCalculus::Product) {
            Ok(r) if r.equal => checks.push(Check::new(name, true, "")),
            Ok(r) => checks.push(Check::new(
                name,
                false,
                format!("countermodel {}", four_valuation_text(&r.countermodel.unwrap())),
            )),
            Err(e) => checks.push(Check::new(name, false, e.to_string())),
        }
    }
    let swap_is_negation = SimpleValue::ALL
        .iter()
        .all(|&x| cross_b(x) == unary(UnaryOp::NegT, x));
    checks.push(Check::new(
        "swap cross equals truth negation on all four values",
        swap_is_negation,
        "",
    ));
    let involution = SimpleValue::ALL.iter().all(|&x| cross_b(cross_b(x)) == x);
    checks.push(Check::new("swap cross is an involution", involution, ""));
    let mut de_morgan = true;
    for x in SimpleValue::ALL {
        for y in SimpleValue::ALL {
            let neg = |v| cross_b(v);
            let or = |a, b| lof::calculi::bilattice_op(BinaryOp::OrT, a, b);
            let and = |a, b| lof::calculi::bilattice_op(BinaryOp::AndT, a, b);
            de_morgan &= neg(or(x, y)) == and(neg(x), neg(y));
            de_morgan &= neg(and(x, y)) == or(neg(x), neg(y));
        }
    }
    checks.push(Check::new(
        "De Morgan laws hold for join/meet under the swap cross",
        de_morgan,
        "16 value pairs",
    ));
    checks
}

fn bilattice_tables() -> Vec<Check> {
    let golden: [(BinaryOp, [[u8; 4]; 4]); 4] = [
        (
            BinaryOp::OrT,
            [[1, 0, 2, 3], [0, 0, 3, 3], [2, 3, 2, 3], [3, 3, 3, 3]],
        ),
        (
            BinaryOp::AndT,
            [[1, 1, 1, 1], [1, 0, 1, 0], [1, 1, 2, 2], [1, 0, 2, 3]],
        ),
        (
            BinaryOp::OplusK,
            [[0, 1, 3, 2], [1, 1, 2, 2], [3, 2, 3, 2], [2, 2, 2, 2]],
        ),
        (
            BinaryOp::OtimesK,
            [[0, 0, 0, 0], [0, 1, 0, 1], [0, 0, 3, 3], [0, 1, 3, 2]],
        ),
    ];
    let mut checks = Vec::new();
    for (op, want) in golden {
        let table = op_table(op);
        let mut bad = Vec::new();
        for (r, row) in want.iter().enumerate() {
            for (c, &cell) in row.iter().enumerate() {
                if table.entries[r][c].residue() != cell {
                    bad.push(format!(
                        "[{r}][{c}] = {}, want {cell}",
                        table.entries[r][c]
                    ));
                }
            }
        }
        checks.push(Check::new(
            format!("{} table from {}", op.short_name(), op.bf_form()),
            bad.is_empty(),
            if bad.is_empty() {
                "16 entries".to_string()
            } else {
                bad.join("; ")
            },
        ));
    }
    let unary_golden: [(UnaryOp, [u8; 4]); 8] = [
        (UnaryOp::Id, [0, 1, 2, 3]),
        (UnaryOp::Sqrt, [1, 2, 3, 0]),
        (UnaryOp::Tilde, [2, 3, 0, 1]),
        (UnaryOp::SqrtCubed, [3, 0, 1, 2]),
        (UnaryOp::NegT, [0, 3, 2, 1]),
        (UnaryOp::Conflate, [2, 1, 0, 3]),
        (UnaryOp::MarkRight, [3, 2, 1, 0]),
        (UnaryOp::MarkLeft, [1, 0, 3, 2]),
    ];
    for (op, want) in unary_golden {
        let got = SimpleValue::ALL.map(|x| unary(op, x).residue());
        checks.push(Check::new(
            format!("{} images from {}", op.id(), op.bf_form()),
            got == want,
            format!("{got:?}"),
        ));
    }
    checks
}

fn groups() -> Vec<Check> {
    let mut checks = Vec::new();
    for (name, maps) in [
        ("negation set {id, neg, conflate, tilde}", negation_group()),
        ("marking set {id, tilde, mark-right, mark-left}", marking_group()),
    ] {
        let report = verify_group(&maps);
        checks.push(Check::new(
            format!("{name} is a Klein four-group"),
            report.closed && report.order == 4 && report.isomorphism_class == "Klein four-group",
            format!("classified as {} of order {}", report.isomorphism_class, report.order),
        ));
    }
    let maps = dihedral_maps();
    let report = verify_group(&maps);
    let fours = maps.iter().filter(|m| m.order() == Some(4)).count();
    checks.push(Check::new(
        "all eight unary maps form the dihedral group of order 8",
        report.closed
            && report.order == 8
            && report.isomorphism_class == "dihedral group of order 8"
            && fours == 2,
        format!(
            "classified as {} of order {}, {fours} elements of order 4",
            report.isomorphism_class, report.order
        ),
    ));
    let sqrt_closure = verify_group(&[unary_map(UnaryOp::Sqrt)]);
    checks.push(Check::new(
        "the square root alone generates a cyclic group of order 4",
        sqrt_closure.order == 4 && sqrt_closure.isomorphism_class == "Z4",
        format!("classified as {}", sqrt_closure.isomorphism_class),
    ));
    checks
}

fn rotation() -> Vec<Check> {
    let mut checks = Vec::new();
    for n in 1..=6 {
        let all = TupleValue::all(n);
        let returns = all.iter().all(|t| {
            let mut cur = t.clone();
            for _ in 0..2 * n {
                cur = cur.rot_cross();
            }
            cur == *t
        });
        let full_orbit = {
            let start = TupleValue::unmarked(n);
            let mut cur = start.rot_cross();
            let mut steps = 1;
            while cur != start {
                cur = cur.rot_cross();
                steps += 1;
            }
            steps == 2 * n
        };
        checks.push(Check::new(
            format!("width-{n} rotation has order {}", 2 * n),
            returns && full_orbit,
            format!("{} tuples", all.len()),
        ));
    }
    let matches_sqrt = SimpleValue::ALL.iter().all(|&x| {
        let (a, b) = x.to_pa_pair();
        let (ra, rb) = x.sqrt().to_pa_pair();
        TupleValue(vec![a, b]).rot_cross() == TupleValue(vec![ra, rb])
    });
    checks.push(Check::new(
        "width-2 rotation is the square root of negation",
        matches_sqrt,
        "4 values",
    ));
    checks
}

fn braid() -> Vec<Check> {
    let mut checks = Vec::new();
    for n in 2..=6 {
        match verify_relations(n) {
            Ok(report) => {
                checks.push(Check::new(
                    format!("width-{n} generators satisfy the braid presentation"),
                    report.representation_holds(),
                    "braid relation, far commutation, fourth power, double-crossing symmetry",
                ));
                checks.push(Check::new(
                    format!(
                        "width-{n} generator squares {} the central -1",
                        if n == 2 { "give" } else { "do not give" }
                    ),
                    report.square_is_minus_identity == (n == 2),
                    "",
                ));
            }
            Err(e) => checks.push(Check::new(
                format!("width-{n} generators satisfy the braid presentation"),
                false,
                e.to_string(),
            )),
        }
    }
    let g = generator(2, 0).expect("two strands");
    let linkage = SimpleValue::ALL.iter().all(|&x| {
        let (a, b) = x.to_pa_pair();
        let (ra, rb) = x.sqrt().to_pa_pair();
        g.apply(&TupleValue(vec![a, b])).unwrap() == TupleValue(vec![ra, rb])
    });
    checks.push(Check::new(
        "the two-strand generator acts as the square root on value pairs",
        linkage,
        "4 values",
    ));
    checks
}

fn quaternions() -> Vec<Check> {
    let triples = find_quaternions();
    let minus = SignedPerm::minus_identity(4);
    let mut checks = vec![Check::new(
        "quaternion triples exist in the signed permutations of four strands",
        !triples.is_empty(),
        format!("{} ordered triples", triples.len()),
    )];
    let relations = triples.iter().all(|[i, j, k]| {
        let ij = j.compose(i).unwrap();
        i.pow(2) == minus
            && j.pow(2) == minus
            && k.pow(2) == minus
            && k.compose(&ij).unwrap() == minus
    });
    checks.push(Check::new(
        "every triple satisfies I*I = J*J = K*K = I*J*K = -1",
        relations,
        "",
    ));
    checks.push(Check::new(
        "triple count matches the frozen regression value",
        triples.len() == 48,
        format!("{} found, 48 expected", triples.len()),
    ));
    if let Some([i, j, k]) = triples.first() {
        checks.push(Check::new(
            "first triple in canonical order",
            true,
            format!("I = {i}, J = {j}, K = {k}"),
        ));
    }
    checks
}

pub fn run(suite: &str) -> Result<Vec<Check>, String> {
    let known: [(&str, fn() -> Vec<Check>); 9] = [
        ("pa-consequences", pa_consequences),
        ("bf-consequences", bf_consequences),
        ("wf", wf),
        ("belnap", belnap),
        ("bilattice-tables", bilattice_tables),
        ("groups", groups),
        ("rotation", rotation),
        ("braid", braid),
        ("quaternions", quaternions),
    ];
    if suite == "all" {
        let mut checks = Vec::new();
        for (name, f) in known {
            for mut c in f() {
                c.name = format!("[{name}] {}", c.name);
                checks.push(c);
            }
        }
        return Ok(checks);
    }
    known
        .iter()
        .find(|(name, _)| *name == suite)
        .map(|(_, f)| f())
        .ok_or_else(|| {
            format!(
                "unknown suite {suite:?} (expected one of pa-consequences, bf-consequences, wf, belnap, bilattice-tables, groups, rotation, braid, quaternions, all)"
            )
        })
}
