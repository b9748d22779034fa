//! Equational demonstrations: axiom schemas as bidirectional rewrite rules,
//! a replay checker for recorded step lists, and bounded breadth-first proof
//! search.
//!
//! Rules are stated over pattern variables and applied modulo the
//! commutative-associative reading of juxtaposition: a rule side matches a
//! sub-multiset of the members at the addressed position and the remaining
//! members are preserved. A pattern variable standing alone in a
//! juxtaposition may bind the empty expression, which is how integration
//! instantiates down to the bare mark.
//!
//! A [`Demonstration`] is a start expression, an end expression and a list
//! of [`Step`]s, each naming a rule, a path, a direction and a substitution.
//! [`check`] replays the steps; [`search`] looks for a demonstration from
//! the axiom basis alone and returns the first one found at minimal depth.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bf::bf_equivalent;
use crate::pa::pa_equivalent;
use crate::syntax::{parse, Expr, PaExpr};
use crate::EvalError;

/// Matching inside a juxtaposition gives up beyond this many members.
const MAX_JUXT_MATCH: usize = 16;

/// Default cap on search expansions.
const DEFAULT_NODE_CAP: usize = 100_000;

/// A named bidirectional rewrite rule over pattern variables.
#[derive(Debug, Clone)]
pub struct Rule {
    pub id: &'static str,
    pub title: &'static str,
    pub lhs: Expr,
    pub rhs: Expr,
}

impl Rule {
    fn new(id: &'static str, title: &'static str, lhs: &str, rhs: &str) -> Rule {
        Rule {
            id,
            title,
            lhs: parse(lhs).expect("rule lhs parses"),
            rhs: parse(rhs).expect("rule rhs parses"),
        }
    }
}

/// The rule set of the primary algebra: the three-axiom basis and the
/// derived consequences.
pub fn pa_rules() -> Vec<Rule> {
    vec![
        Rule::new("B1", "Integration", "() A", "()"),
        Rule::new("B2", "Reflexion", "((A))", "A"),
        Rule::new("B3", "Generation", "(A) B", "(A B) B"),
        Rule::new("B4", "Position", "((A) A)", ""),
        Rule::new("B5", "Transposition", "((A) (B)) C", "((A C) (B C))"),
        Rule::new("B6", "Occultation", "((A) B) A", "A"),
        Rule::new("B7", "Iteration", "A A", "A"),
        Rule::new("B8", "Extension", "((A) (B)) ((A) B)", "A"),
        Rule::new("B9", "Echelon", "(((A) B) C)", "(A C) ((B) C)"),
        Rule::new(
            "B10",
            "Cross Transposition",
            "((A C) (B (C)))",
            "((A) C) ((B) (C))",
        ),
    ]
}

/// The rule set of the BF calculus. Reflexion is stated through the
/// ordinary mark (two crosses, i.e. four square roots) and integration
/// through the ordinary mark as well, since a literal fourth power of the
/// imaginary mark has no canonical representative. The definitional rules
/// relate the mark to the doubled imaginary mark, unfold a square root on a
/// pair, and combine juxtaposed pairs.
pub fn bf_rules() -> Vec<Rule> {
    let mut rules = vec![
        Rule::new("B1", "Reflexion", "((A))", "A"),
        Rule::new("B2", "Integration", "() A", "()"),
        Rule::new("B3#", "Split Generation", "[[A] B] C", "[[A C] B] C"),
        Rule::new("B3", "Generation", "(A) B", "(A B) B"),
    ];
    rules.extend(pa_rules().into_iter().filter(|r| {
        matches!(r.id, "B4" | "B5" | "B6" | "B7" | "B8" | "B9" | "B10")
    }));
    rules.push(Rule::new(
        "B11",
        "Join Distribution",
        "[[[[A]]] [[[B]]]] C",
        "[[[[A C]]] [[[B C]]]]",
    ));
    rules.push(Rule::new(
        "B12",
        "Meet Distribution",
        "[[[[A] [B]]]] C",
        "[[[[A C] [B C]]]]",
    ));
    rules.push(Rule::new("def", "Mark Definition", "(A)", "[[A]]"));
    rules.push(Rule::new("sqrt", "Square Root on Pairs", "[{A,B}]", "{(B),A}"));
    rules.push(Rule::new("juxt", "Juxtaposition on Pairs", "{A,B} {C,D}", "{A C,B D}"));
    rules
}

/// Which calculus a demonstration lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Calculus {
    Pa,
    Bf,
}

/// The full rule registry for a calculus.
pub fn rules_for(calculus: Calculus) -> Vec<Rule> {
    match calculus {
        Calculus::Pa => pa_rules(),
        Calculus::Bf => bf_rules(),
    }
}

/// The axiom basis used by proof search: the three primary-algebra axioms,
/// or the BF basis plus the mark definition.
pub fn basis_for(calculus: Calculus) -> Vec<Rule> {
    let keep: &[&str] = match calculus {
        Calculus::Pa => &["B1", "B2", "B3"],
        Calculus::Bf => &["B1", "B2", "B3#", "def"],
    };
    rules_for(calculus)
        .into_iter()
        .filter(|r| keep.contains(&r.id))
        .collect()
}

/// Application direction of a bidirectional rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Lr,
    Rl,
}

/// One recorded rewrite: rule, subterm path, direction, substitution.
/// Paths index children of the canonical form: juxtaposition members in
/// sorted order, 0 for the body of a cross, 0 to peel one layer of an
/// imaginary cross, 0/1 for pair components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub rule: String,
    #[serde(default)]
    pub path: Vec<usize>,
    pub dir: Direction,
    #[serde(default)]
    pub subst: BTreeMap<String, String>,
}

/// A start expression, an end expression and the steps between them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Demonstration {
    pub calculus: Calculus,
    pub start: String,
    pub end: String,
    pub steps: Vec<Step>,
}

impl Demonstration {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("demonstration serializes")
    }

    pub fn from_json(text: &str) -> Result<Demonstration, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Why a single step failed to apply.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("unknown rule {0:?}")]
    UnknownRule(String),
    #[error("path addresses no subterm")]
    PathOutOfRange,
    #[error("pattern variable {0} is not bound by the substitution")]
    UnboundPatternVariable(String),
    #[error("substitution for {var} does not parse: {message}")]
    BadSubstitution { var: String, message: String },
    #[error("instantiated source is not contained at the addressed position")]
    SourceMismatch,
    #[error("step would place a non-primary expression inside a pair")]
    PairViolation,
}

fn sides(rule: &Rule, dir: Direction) -> (&Expr, &Expr) {
    match dir {
        Direction::Lr => (&rule.lhs, &rule.rhs),
        Direction::Rl => (&rule.rhs, &rule.lhs),
    }
}

/// Replaces pattern variables by their bindings. Variables missing from the
/// substitution are an error on the source side; on the destination side
/// they default to the empty expression.
fn instantiate(
    pattern: &Expr,
    subst: &BTreeMap<String, Expr>,
    default_empty: bool,
) -> Result<Expr, StepError> {
    Ok(match pattern {
        Expr::Var(x) => match subst.get(x) {
            Some(e) => e.clone(),
            None if default_empty => Expr::empty(),
            None => return Err(StepError::UnboundPatternVariable(x.clone())),
        },
        Expr::Juxt(cs) => Expr::juxt(
            cs.iter()
                .map(|c| instantiate(c, subst, default_empty))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        Expr::Cross(x) => Expr::cross(instantiate(x, subst, default_empty)?),
        Expr::CrossI(x, p) => Expr::cross_i(instantiate(x, subst, default_empty)?, *p as u32),
        Expr::Pair(l, r) => Expr::pair(
            instantiate(l, subst, default_empty)?,
            instantiate(r, subst, default_empty)?,
        ),
    })
}

fn get_at(e: &Expr, path: &[usize]) -> Option<Expr> {
    let Some((&i, rest)) = path.split_first() else {
        return Some(e.clone());
    };
    match e {
        Expr::Juxt(cs) if i < cs.len() => get_at(&cs[i], rest),
        Expr::Cross(x) if i == 0 => get_at(x, rest),
        Expr::CrossI(x, p) if i == 0 => {
            let peeled = Expr::cross_i((**x).clone(), *p as u32 - 1);
            get_at(&peeled, rest)
        }
        Expr::Pair(l, _) if i == 0 => get_at(l, rest),
        Expr::Pair(_, r) if i == 1 => get_at(r, rest),
        _ => None,
    }
}

fn replace_at(e: &Expr, path: &[usize], with: Expr) -> Result<Expr, StepError> {
    let Some((&i, rest)) = path.split_first() else {
        return Ok(with);
    };
    match e {
        Expr::Juxt(cs) if i < cs.len() => {
            let mut members = cs.clone();
            members[i] = replace_at(&cs[i], rest, with)?;
            Ok(Expr::juxt(members))
        }
        Expr::Cross(x) if i == 0 => Ok(Expr::cross(replace_at(x, rest, with)?)),
        Expr::CrossI(x, p) if i == 0 => {
            let peeled = Expr::cross_i((**x).clone(), *p as u32 - 1);
            Ok(Expr::cross_i(replace_at(&peeled, rest, with)?, 1))
        }
        Expr::Pair(l, r) if i == 0 => {
            Ok(Expr::pair(replace_at(l, rest, with)?, (**r).clone()))
        }
        Expr::Pair(l, r) if i == 1 => {
            Ok(Expr::pair((**l).clone(), replace_at(r, rest, with)?))
        }
        _ => Err(StepError::PathOutOfRange),
    }
}

/// Removes `needles` from `hay` as multisets; `None` if some needle is
/// missing.
fn multiset_subtract(hay: &[Expr], needles: &[Expr]) -> Option<Vec<Expr>> {
    let mut rest = hay.to_vec();
    for n in needles {
        let at = rest.iter().position(|e| e == n)?;
        rest.remove(at);
    }
    Some(rest)
}

/// Applies one step with an explicit substitution. The instantiated source
/// side must be contained in the members at the path; the remainder is kept
/// alongside the instantiated destination side.
pub fn apply_step(
    e: &Expr,
    rule: &Rule,
    dir: Direction,
    path: &[usize],
    subst: &BTreeMap<String, Expr>,
) -> Result<Expr, StepError> {
    let target = get_at(e, path).ok_or(StepError::PathOutOfRange)?;
    let (src, dst) = sides(rule, dir);
    let source = instantiate(src, subst, false)?;
    let dest = instantiate(dst, subst, true)?;
    let remainder =
        multiset_subtract(target.members(), source.members()).ok_or(StepError::SourceMismatch)?;
    let mut members = dest.members().to_vec();
    members.extend(remainder);
    let out = replace_at(e, path, Expr::juxt(members))?;
    if !out.pairs_are_primary() {
        return Err(StepError::PairViolation);
    }
    Ok(out)
}

type Bindings = BTreeMap<String, Expr>;

/// Matches a pattern term against a target term, extending `b`. All results
/// are returned in a deterministic order.
fn match_term(pattern: &Expr, target: &Expr, b: Bindings) -> Vec<Bindings> {
    match (pattern, target) {
        (Expr::Var(x), t) => match b.get(x) {
            Some(bound) if bound == t => vec![b],
            Some(_) => vec![],
            None => {
                let mut b2 = b;
                b2.insert(x.clone(), t.clone());
                vec![b2]
            }
        },
        (Expr::Juxt(ps), t) => match_multiset(ps, t.members(), b)
            .into_iter()
            .filter(|(_, remainder)| remainder.is_empty())
            .map(|(b2, _)| b2)
            .collect(),
        (Expr::Cross(p), Expr::Cross(t)) => match_term(p, t, b),
        (Expr::CrossI(p, k), Expr::CrossI(t, m)) if m >= k => {
            let peeled = Expr::cross_i((**t).clone(), (m - k) as u32);
            match_term(p, &peeled, b)
        }
        (Expr::Pair(pl, pr), Expr::Pair(tl, tr)) => match_term(pl, tl, b)
            .into_iter()
            .flat_map(|b2| match_term(pr, tr, b2))
            .collect(),
        _ => vec![],
    }
}

/// Matches a multiset of pattern terms against a multiset of target terms,
/// returning bindings together with the unmatched remainder. Non-variable
/// patterns are matched first; a variable pattern consumes a sub-multiset,
/// tried largest first.
fn match_multiset(patterns: &[Expr], targets: &[Expr], b: Bindings) -> Vec<(Bindings, Vec<Expr>)> {
    let mut ordered: Vec<&Expr> = patterns.iter().filter(|p| !matches!(p, Expr::Var(_))).collect();
    ordered.extend(patterns.iter().filter(|p| matches!(p, Expr::Var(_))));
    let mut out = Vec::new();
    go(&ordered, targets.to_vec(), b, &mut out);
    out
}

fn go(patterns: &[&Expr], targets: Vec<Expr>, b: Bindings, out: &mut Vec<(Bindings, Vec<Expr>)>) {
    let Some((&p, rest)) = patterns.split_first() else {
        out.push((b, targets));
        return;
    };
    match p {
        Expr::Var(x) => {
            if let Some(bound) = b.get(x) {
                if let Some(remaining) = multiset_subtract(&targets, bound.members()) {
                    go(rest, remaining, b, out);
                }
                return;
            }
            let n = targets.len();
            if n > MAX_JUXT_MATCH {
                return;
            }
            for mask in (0..1u32 << n).rev() {
                let mut chosen = Vec::new();
                let mut remaining = Vec::new();
                for (i, t) in targets.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        chosen.push(t.clone());
                    } else {
                        remaining.push(t.clone());
                    }
                }
                let mut b2 = b.clone();
                b2.insert(x.clone(), Expr::juxt(chosen));
                go(rest, remaining, b2, out);
            }
        }
        _ => {
            let mut tried: Vec<&Expr> = Vec::new();
            for j in 0..targets.len() {
                if tried.contains(&&targets[j]) {
                    continue;
                }
                tried.push(&targets[j]);
                for b2 in match_term(p, &targets[j], b.clone()) {
                    let mut remaining = targets.clone();
                    remaining.remove(j);
                    go(rest, remaining, b2, out);
                }
            }
        }
    }
}

/// Matches one side of a rule against a target subterm. The side's
/// top-level members may cover any sub-multiset of the target's members;
/// the remainder is returned alongside each binding.
pub fn match_against(side: &Expr, target: &Expr) -> Vec<(BTreeMap<String, Expr>, Vec<Expr>)> {
    match_multiset(side.members(), target.members(), Bindings::new())
}

/// Pre-order enumeration of all subterm paths.
fn positions(e: &Expr) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    match e {
        Expr::Juxt(cs) => {
            for (i, c) in cs.iter().enumerate() {
                for mut p in positions(c) {
                    p.insert(0, i);
                    out.push(p);
                }
            }
        }
        Expr::Cross(x) => {
            for mut p in positions(x) {
                p.insert(0, 0);
                out.push(p);
            }
        }
        Expr::CrossI(x, power) => {
            let peeled = Expr::cross_i((**x).clone(), *power as u32 - 1);
            for mut p in positions(&peeled) {
                p.insert(0, 0);
                out.push(p);
            }
        }
        Expr::Pair(l, r) => {
            for (i, side) in [l, r].into_iter().enumerate() {
                for mut p in positions(side) {
                    p.insert(0, i);
                    out.push(p);
                }
            }
        }
        Expr::Var(_) => {}
    }
    out
}

/// The verdict of replaying a demonstration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub valid: bool,
    /// 1-based index of the first step that failed to apply, if any.
    pub failing_step: Option<usize>,
    pub reason: Option<String>,
}

impl CheckReport {
    fn fail(failing_step: Option<usize>, reason: String) -> CheckReport {
        CheckReport {
            valid: false,
            failing_step,
            reason: Some(reason),
        }
    }
}

/// Replays a demonstration step by step. Valid when every step applies and
/// the final expression equals the declared end. When the variable count
/// permits, the start and end are additionally compared by the semantic
/// equivalence checker of the calculus; a demonstration the rules accept
/// but semantics reject is reported invalid.
pub fn check(d: &Demonstration) -> CheckReport {
    let rules = rules_for(d.calculus);
    let start = match parse(&d.start) {
        Ok(e) => e,
        Err(err) => return CheckReport::fail(None, format!("start: {err}")),
    };
    let end = match parse(&d.end) {
        Ok(e) => e,
        Err(err) => return CheckReport::fail(None, format!("end: {err}")),
    };
    let mut current = start.clone();
    for (index, step) in d.steps.iter().enumerate() {
        let number = index + 1;
        let Some(rule) = rules.iter().find(|r| r.id == step.rule) else {
            return CheckReport::fail(Some(number), StepError::UnknownRule(step.rule.clone()).to_string());
        };
        let mut subst = BTreeMap::new();
        for (var, text) in &step.subst {
            match parse(text) {
                Ok(e) => {
                    subst.insert(var.clone(), e);
                }
                Err(err) => {
                    return CheckReport::fail(
                        Some(number),
                        StepError::BadSubstitution {
                            var: var.clone(),
                            message: err.to_string(),
                        }
                        .to_string(),
                    )
                }
            }
        }
        match apply_step(&current, rule, step.dir, &step.path, &subst) {
            Ok(next) => current = next,
            Err(err) => return CheckReport::fail(Some(number), format!("step {number}: {err}")),
        }
    }
    if current != end {
        return CheckReport::fail(
            None,
            format!("steps end at {current} but the demonstration declares {end}"),
        );
    }
    match semantic_oracle(&start, &end, d.calculus) {
        Some(false) => CheckReport::fail(
            None,
            "steps replay but the equivalence oracle rejects start = end".into(),
        ),
        _ => CheckReport {
            valid: true,
            failing_step: None,
            reason: None,
        },
    }
}

/// Semantic equivalence of two expressions in a calculus, if decidable
/// within the variable limits.
fn semantic_oracle(f: &Expr, g: &Expr, calculus: Calculus) -> Option<bool> {
    let result = match calculus {
        Calculus::Pa => {
            let pf = PaExpr::try_from(f.clone()).ok()?;
            let pg = PaExpr::try_from(g.clone()).ok()?;
            pa_equivalent(&pf, &pg).map(|r| r.equal)
        }
        Calculus::Bf => bf_equivalent(f, g).map(|r| r.equal),
    };
    match result {
        Ok(equal) => Some(equal),
        Err(EvalError::TooManyVariables { .. }) => None,
        Err(_) => Some(false),
    }
}

/// All one-step successors of an expression under a rule set, in a
/// deterministic order: rules in registry order, left-to-right before
/// right-to-left, positions pre-order, matcher candidates in match order.
fn successors(e: &Expr, rules: &[Rule]) -> Vec<(Step, Expr)> {
    let mut out = Vec::new();
    for rule in rules {
        for dir in [Direction::Lr, Direction::Rl] {
            let (src, dst) = sides(rule, dir);
            for path in positions(e) {
                let target = get_at(e, &path).expect("enumerated path exists");
                for (mut bindings, remainder) in match_against(src, &target) {
                    for var in dst.var_names() {
                        bindings.entry(var).or_insert_with(Expr::empty);
                    }
                    let Ok(dest) = instantiate(dst, &bindings, false) else {
                        continue;
                    };
                    let mut members = dest.members().to_vec();
                    members.extend(remainder);
                    let Ok(next) = replace_at(e, &path, Expr::juxt(members)) else {
                        continue;
                    };
                    if !next.pairs_are_primary() {
                        continue;
                    }
                    let step = Step {
                        rule: rule.id.to_string(),
                        path: path.clone(),
                        dir,
                        subst: bindings
                            .iter()
                            .map(|(k, v)| (k.clone(), v.to_string()))
                            .collect(),
                    };
                    out.push((step, next));
                }
            }
        }
    }
    out
}

/// Breadth-first search for a demonstration from `start` to `end` using the
/// given rules, up to `max_depth` steps and `node_cap` expansions. The
/// search is deterministic and returns a minimal-length demonstration.
pub fn search_with(
    start: &Expr,
    end: &Expr,
    calculus: Calculus,
    rules: &[Rule],
    max_depth: usize,
    node_cap: usize,
) -> Option<Demonstration> {
    if semantic_oracle(start, end, calculus) == Some(false) {
        return None;
    }
    let start = start.canonical();
    let end = end.canonical();
    let goal = end.to_string();
    let origin = start.to_string();
    let demonstration = |parents: &HashMap<String, (String, Step)>| {
        let mut steps = Vec::new();
        let mut at = goal.clone();
        while at != origin {
            let (prev, step) = parents.get(&at).expect("parent chain reaches origin");
            steps.push(step.clone());
            at = prev.clone();
        }
        steps.reverse();
        Some(Demonstration {
            calculus,
            start: origin.clone(),
            end: goal.clone(),
            steps,
        })
    };
    if origin == goal {
        return demonstration(&HashMap::new());
    }
    let mut visited: HashSet<String> = [origin.clone()].into();
    let mut parents: HashMap<String, (String, Step)> = HashMap::new();
    let mut frontier: VecDeque<(Expr, usize)> = [(start, 0)].into();
    let mut expansions = 0usize;
    while let Some((node, depth)) = frontier.pop_front() {
        if depth == max_depth {
            continue;
        }
        expansions += 1;
        if expansions > node_cap {
            return None;
        }
        let from = node.to_string();
        for (step, next) in successors(&node, rules) {
            let key = next.to_string();
            if !visited.insert(key.clone()) {
                continue;
            }
            parents.insert(key.clone(), (from.clone(), step));
            if key == goal {
                return demonstration(&parents);
            }
            frontier.push_back((next, depth + 1));
        }
    }
    None
}

/// Searches with the axiom basis of the calculus and the default node cap.
pub fn search(
    start: &Expr,
    end: &Expr,
    calculus: Calculus,
    max_depth: usize,
) -> Option<Demonstration> {
    search_with(start, end, calculus, &basis_for(calculus), max_depth, DEFAULT_NODE_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subst(pairs: &[(&str, &str)]) -> BTreeMap<String, Expr> {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), parse(v).unwrap()))
            .collect()
    }

    fn step(rule: &str, path: &[usize], dir: Direction, subs: &[(&str, &str)]) -> Step {
        Step {
            rule: rule.to_string(),
            path: path.to_vec(),
            dir,
            subst: subs
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
        }
    }

    fn position_demo() -> Demonstration {
        Demonstration {
            calculus: Calculus::Pa,
            start: "((A) A)".into(),
            end: "".into(),
            steps: vec![
                step("B3", &[0], Direction::Rl, &[("A", ""), ("B", "A")]),
                step("B1", &[0], Direction::Lr, &[("A", "A")]),
                step("B2", &[], Direction::Lr, &[("A", "")]),
            ],
        }
    }

    fn imaginary_mark_demo() -> Demonstration {
        Demonstration {
            calculus: Calculus::Bf,
            start: "[] [[[]]]".into(),
            end: "()".into(),
            steps: vec![
                step("def", &[0], Direction::Rl, &[("A", "[]")]),
                step("B3", &[], Direction::Rl, &[("A", ""), ("B", "[]")]),
                step("B2", &[], Direction::Lr, &[("A", "[]")]),
            ],
        }
    }

    #[test]
    fn every_pa_rule_is_semantically_valid() {
        for rule in pa_rules() {
            let lhs = PaExpr::try_from(rule.lhs.clone()).unwrap();
            let rhs = PaExpr::try_from(rule.rhs.clone()).unwrap();
            let r = pa_equivalent(&lhs, &rhs).unwrap();
            assert!(r.equal, "{} fails: {:?}", rule.id, r.countermodel);
        }
    }

    #[test]
    fn every_bf_rule_is_semantically_valid() {
        for rule in bf_rules() {
            let r = bf_equivalent(&rule.lhs, &rule.rhs).unwrap();
            assert!(r.equal, "{} fails: {:?}", rule.id, r.countermodel);
        }
    }

    #[test]
    fn apply_step_examples() {
        let rules = pa_rules();
        let reflexion = rules.iter().find(|r| r.id == "B2").unwrap();
        let e = parse("(()) A").unwrap();
        let got = apply_step(&e, reflexion, Direction::Lr, &[0], &subst(&[("A", "")])).unwrap();
        assert_eq!(got.to_string(), "A");

        let generation = rules.iter().find(|r| r.id == "B3").unwrap();
        let e = parse("((A) A)").unwrap();
        let got = apply_step(
            &e,
            generation,
            Direction::Rl,
            &[0],
            &subst(&[("A", ""), ("B", "A")]),
        )
        .unwrap();
        assert_eq!(got.to_string(), "(() A)");

        let split = bf_rules().into_iter().find(|r| r.id == "B3#").unwrap();
        let e = parse("[[A] B] C").unwrap();
        let got = apply_step(
            &e,
            &split,
            Direction::Lr,
            &[],
            &subst(&[("A", "A"), ("B", "B"), ("C", "C")]),
        )
        .unwrap();
        assert_eq!(got, parse("[[A C] B] C").unwrap());
    }

    #[test]
    fn remainder_is_preserved_and_restored() {
        let rules = pa_rules();
        let generation = rules.iter().find(|r| r.id == "B3").unwrap();
        let e = parse("(X) Y Z").unwrap();
        let candidates = match_against(&generation.lhs, &e);
        assert!(candidates.iter().any(|(b, rem)| {
            b.get("A") == Some(&parse("X").unwrap())
                && b.get("B") == Some(&parse("Y Z").unwrap())
                && rem.is_empty()
        }));
        // A full binding round-trips through the rule and back.
        let s = subst(&[("A", "X"), ("B", "Y Z")]);
        let there = apply_step(&e, generation, Direction::Lr, &[], &s).unwrap();
        assert_eq!(there.to_string(), "(X Y Z) Y Z");
        let back = apply_step(&there, generation, Direction::Rl, &[], &s).unwrap();
        assert_eq!(back, e.canonical());
    }

    #[test]
    fn empty_source_inserts_alongside() {
        let rules = pa_rules();
        let position = rules.iter().find(|r| r.id == "B4").unwrap();
        let e = parse("X").unwrap();
        let got = apply_step(&e, position, Direction::Rl, &[], &subst(&[("A", "B")])).unwrap();
        assert_eq!(got.to_string(), "((B) B) X");
    }

    #[test]
    fn imaginary_powers_split_in_the_checker() {
        let rules = bf_rules();
        let def = rules.iter().find(|r| r.id == "def").unwrap();
        let e = parse("[[[]]]").unwrap();
        let got = apply_step(&e, def, Direction::Rl, &[], &subst(&[("A", "[]")])).unwrap();
        assert_eq!(got.to_string(), "([])");
    }

    #[test]
    fn rewriting_inside_pairs_stays_primary() {
        let rules = pa_rules();
        let reflexion = rules.iter().find(|r| r.id == "B2").unwrap();
        let e = parse("{(()) A,B}").unwrap();
        let got =
            apply_step(&e, reflexion, Direction::Lr, &[0, 0], &subst(&[("A", "")])).unwrap();
        assert_eq!(got.to_string(), "{A,B}");

        // Forcing an imaginary mark into a pair component is rejected.
        let def = bf_rules().into_iter().find(|r| r.id == "def").unwrap();
        let e = parse("{(A),B}").unwrap();
        let err = apply_step(&e, &def, Direction::Lr, &[0], &subst(&[("A", "A")]));
        assert_eq!(err, Err(StepError::PairViolation));
    }

    #[test]
    fn bad_paths_and_substitutions_are_rejected() {
        let rules = pa_rules();
        let integration = rules.iter().find(|r| r.id == "B1").unwrap();
        let e = parse("() X").unwrap();
        assert_eq!(
            apply_step(&e, integration, Direction::Lr, &[5], &subst(&[("A", "X")])),
            Err(StepError::PathOutOfRange)
        );
        assert_eq!(
            apply_step(&e, integration, Direction::Lr, &[], &BTreeMap::new()),
            Err(StepError::UnboundPatternVariable("A".into()))
        );
        assert_eq!(
            apply_step(&e, integration, Direction::Lr, &[], &subst(&[("A", "Y")])),
            Err(StepError::SourceMismatch)
        );
    }

    #[test]
    fn the_position_demonstration_replays() {
        let report = check(&position_demo());
        assert!(report.valid, "{:?}", report.reason);
    }

    #[test]
    fn a_mutated_demonstration_fails_at_the_right_step() {
        let mut d = position_demo();
        d.steps.remove(1);
        let report = check(&d);
        assert!(!report.valid);
        assert_eq!(report.failing_step, Some(2));
    }

    #[test]
    fn the_imaginary_mark_demonstration_replays() {
        let report = check(&imaginary_mark_demo());
        assert!(report.valid, "{:?}", report.reason);
    }

    #[test]
    fn wrong_end_is_reported_without_a_failing_step() {
        let mut d = position_demo();
        d.end = "()".into();
        let report = check(&d);
        assert!(!report.valid);
        assert_eq!(report.failing_step, None);
    }

    #[test]
    fn demonstrations_round_trip_through_json() {
        let d = imaginary_mark_demo();
        let json = d.to_json();
        assert!(json.contains("\"calculus\": \"bf\""));
        assert!(json.contains("\"dir\": \"rl\""));
        let back = Demonstration::from_json(&json).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn search_finds_position_from_the_pa_basis() {
        let start = parse("((A) A)").unwrap();
        let end = parse("").unwrap();
        let d = search(&start, &end, Calculus::Pa, 3).expect("found");
        assert!(d.steps.len() <= 3);
        assert!(check(&d).valid);
    }

    #[test]
    fn search_finds_generation_from_the_bf_basis() {
        let start = parse("(A) B").unwrap();
        let end = parse("(A B) B").unwrap();
        let d = search(&start, &end, Calculus::Bf, 3).expect("found");
        assert!(d.steps.len() <= 3);
        assert!(check(&d).valid);
    }

    #[test]
    fn search_is_deterministic() {
        let start = parse("((A) A)").unwrap();
        let end = parse("").unwrap();
        let a = search(&start, &end, Calculus::Pa, 3).unwrap();
        let b = search(&start, &end, Calculus::Pa, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn search_refuses_inequivalent_goals() {
        let start = parse("A").unwrap();
        let end = parse("(A)").unwrap();
        assert_eq!(search(&start, &end, Calculus::Pa, 6), None);
        assert_eq!(search(&start, &end, Calculus::Bf, 6), None);
    }

    #[test]
    fn trivial_search_returns_an_empty_demonstration() {
        let start = parse("A (B)").unwrap();
        let end = parse("(B) A").unwrap();
        let d = search(&start, &end, Calculus::Pa, 2).unwrap();
        assert!(d.steps.is_empty());
        assert!(check(&d).valid);
    }
}
