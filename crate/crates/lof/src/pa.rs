//! The two-valued primary arithmetic and primary algebra.
//!
//! A ground expression built from marks alone simplifies to exactly one of
//! the two simple values, marked or unmarked. [`pa_simplify`] computes that
//! value directly; [`reduce_ground`] and [`reduce_ground_with`] compute it by
//! stepwise rewriting with the two arithmetic rules (a repeated mark may be
//! dropped, a mark within a mark cancels), so different reduction orders can
//! be compared. [`pa_equivalent`] decides equivalence of algebraic
//! expressions by exhausting all valuations, and [`from_logic`] embeds
//! propositional logic.

use std::collections::BTreeMap;

use crate::syntax::{Expr, PaExpr};
use crate::EvalError;

/// Variable limit for exhaustive two-valued checks (2^20 valuations).
pub const PA_VAR_LIMIT: usize = 20;

/// One of the two simple values of the primary arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PaValue {
    Unmarked,
    Marked,
}

impl PaValue {
    pub fn is_marked(self) -> bool {
        self == PaValue::Marked
    }

    /// The value of a cross around this value.
    pub fn cross(self) -> PaValue {
        match self {
            PaValue::Unmarked => PaValue::Marked,
            PaValue::Marked => PaValue::Unmarked,
        }
    }

    /// The value of two values side by side: marked if either is marked.
    pub fn juxt(self, other: PaValue) -> PaValue {
        if self.is_marked() || other.is_marked() {
            PaValue::Marked
        } else {
            PaValue::Unmarked
        }
    }
}

impl std::fmt::Display for PaValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PaValue::Unmarked => f.write_str("unmarked"),
            PaValue::Marked => f.write_str("marked"),
        }
    }
}

/// An assignment of simple values to variables.
pub type PaValuation = BTreeMap<String, PaValue>;

/// Substitutes the valuation and simplifies to a simple value.
pub fn pa_simplify(e: &PaExpr, v: &PaValuation) -> Result<PaValue, EvalError> {
    eval_raw(e.as_expr(), v)
}

/// Evaluates a raw expression under the primary-algebra reading. Errors on
/// imaginary crosses, pairs and unbound variables.
pub(crate) fn eval_raw(e: &Expr, v: &PaValuation) -> Result<PaValue, EvalError> {
    match e {
        Expr::Juxt(cs) => {
            let mut acc = PaValue::Unmarked;
            for c in cs {
                acc = acc.juxt(eval_raw(c, v)?);
            }
            Ok(acc)
        }
        Expr::Cross(x) => Ok(eval_raw(x, v)?.cross()),
        Expr::Var(n) => v
            .get(n)
            .copied()
            .ok_or_else(|| EvalError::UnboundVariable(n.clone())),
        Expr::CrossI(..) | Expr::Pair(..) => Err(EvalError::NotPrimaryAlgebra),
    }
}

/// The result of an exhaustive equivalence check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaEquivalence {
    pub equal: bool,
    /// The first valuation (in counting order over sorted variables) under
    /// which the two expressions differ.
    pub countermodel: Option<PaValuation>,
}

/// Decides whether two expressions agree under every valuation of their
/// combined variables.
pub fn pa_equivalent(f: &PaExpr, g: &PaExpr) -> Result<PaEquivalence, EvalError> {
    let mut names = f.as_expr().var_names();
    for n in g.as_expr().var_names() {
        if !names.contains(&n) {
            names.push(n);
        }
    }
    names.sort();
    if names.len() > PA_VAR_LIMIT {
        return Err(EvalError::TooManyVariables {
            count: names.len(),
            limit: PA_VAR_LIMIT,
        });
    }
    for index in 0u32..(1u32 << names.len()) {
        let v = valuation_at(&names, index);
        if pa_simplify(f, &v)? != pa_simplify(g, &v)? {
            return Ok(PaEquivalence {
                equal: false,
                countermodel: Some(v),
            });
        }
    }
    Ok(PaEquivalence {
        equal: true,
        countermodel: None,
    })
}

fn valuation_at(names: &[String], index: u32) -> PaValuation {
    names
        .iter()
        .enumerate()
        .map(|(j, n)| {
            let v = if index >> j & 1 == 1 {
                PaValue::Marked
            } else {
                PaValue::Unmarked
            };
            (n.clone(), v)
        })
        .collect()
}

/// True when the expression is marked under every valuation.
pub fn is_tautology(e: &PaExpr) -> Result<bool, EvalError> {
    let names = e.as_expr().var_names();
    if names.len() > PA_VAR_LIMIT {
        return Err(EvalError::TooManyVariables {
            count: names.len(),
            limit: PA_VAR_LIMIT,
        });
    }
    for index in 0u32..(1u32 << names.len()) {
        if pa_simplify(e, &valuation_at(&names, index))? != PaValue::Marked {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A propositional formula, for translation into the primary algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropFormula {
    Atom(String),
    ConstTrue,
    ConstFalse,
    Not(Box<PropFormula>),
    Or(Box<PropFormula>, Box<PropFormula>),
    And(Box<PropFormula>, Box<PropFormula>),
    Implies(Box<PropFormula>, Box<PropFormula>),
}

impl PropFormula {
    pub fn atom(name: impl Into<String>) -> PropFormula {
        PropFormula::Atom(name.into())
    }

    pub fn not(f: PropFormula) -> PropFormula {
        PropFormula::Not(Box::new(f))
    }

    pub fn or(f: PropFormula, g: PropFormula) -> PropFormula {
        PropFormula::Or(Box::new(f), Box::new(g))
    }

    pub fn and(f: PropFormula, g: PropFormula) -> PropFormula {
        PropFormula::And(Box::new(f), Box::new(g))
    }

    pub fn implies(f: PropFormula, g: PropFormula) -> PropFormula {
        PropFormula::Implies(Box::new(f), Box::new(g))
    }
}

/// Translates a formula into the primary algebra: true is the mark, false is
/// the empty expression, `or` is juxtaposition, `not` is a cross, `and(a,b)`
/// is `((a)(b))` and `implies(a,b)` is `(a) b`.
pub fn from_logic(p: &PropFormula) -> PaExpr {
    fn go(p: &PropFormula) -> Expr {
        match p {
            PropFormula::Atom(n) => Expr::Var(n.clone()),
            PropFormula::ConstTrue => Expr::cross(Expr::empty()),
            PropFormula::ConstFalse => Expr::empty(),
            PropFormula::Not(f) => Expr::cross(go(f)),
            PropFormula::Or(f, g) => Expr::juxt(vec![go(f), go(g)]),
            PropFormula::And(f, g) => {
                Expr::cross(Expr::juxt(vec![Expr::cross(go(f)), Expr::cross(go(g))]))
            }
            PropFormula::Implies(f, g) => Expr::juxt(vec![Expr::cross(go(f)), go(g)]),
        }
    }
    PaExpr::from_expr_unchecked(go(p))
}

/// A redex in a ground expression: either a cancelling mark pair `(())` or a
/// repeated mark within one juxtaposition.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Redex {
    /// Path to a `Cross` whose content is exactly a mark; rewrites to empty.
    Cancel(Vec<usize>),
    /// Path to a `Juxt` holding at least two marks; one mark is dropped.
    Condense(Vec<usize>),
}

/// Reduces a ground primary-arithmetic expression by repeatedly applying one
/// of the two arithmetic rules. `pick` chooses among the current redexes
/// (listed innermost first, left to right) by index; it receives the number
/// of redexes and must return a value below it.
pub fn reduce_ground_with(
    e: &PaExpr,
    mut pick: impl FnMut(usize) -> usize,
) -> Result<PaValue, EvalError> {
    if let Some(name) = e.as_expr().var_names().first() {
        return Err(EvalError::UnboundVariable(name.clone()));
    }
    let mut cur = e.as_expr().canonical();
    loop {
        let redexes = find_redexes(&cur);
        if redexes.is_empty() {
            break;
        }
        let choice = pick(redexes.len());
        assert!(choice < redexes.len(), "redex choice out of range");
        cur = apply_redex(&cur, &redexes[choice]);
    }
    if cur.is_empty() {
        Ok(PaValue::Unmarked)
    } else if is_mark(&cur) {
        Ok(PaValue::Marked)
    } else {
        unreachable!("ground reduction stuck at `{cur}`")
    }
}

/// Reduces a ground expression innermost-leftmost.
pub fn reduce_ground(e: &PaExpr) -> Result<PaValue, EvalError> {
    reduce_ground_with(e, |_| 0)
}

fn is_mark(e: &Expr) -> bool {
    matches!(e, Expr::Cross(x) if x.is_empty())
}

fn find_redexes(e: &Expr) -> Vec<Redex> {
    let mut out = Vec::new();
    fn walk(e: &Expr, path: &mut Vec<usize>, out: &mut Vec<Redex>) {
        match e {
            Expr::Juxt(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    path.push(i);
                    walk(c, path, out);
                    path.pop();
                }
                if cs.iter().filter(|c| is_mark(c)).count() >= 2 {
                    out.push(Redex::Condense(path.clone()));
                }
            }
            Expr::Cross(x) => {
                path.push(0);
                walk(x, path, out);
                path.pop();
                if is_mark(x) {
                    out.push(Redex::Cancel(path.clone()));
                }
            }
            _ => unreachable!("ground reduction over non-arithmetic expression"),
        }
    }
    let mut path = Vec::new();
    walk(e, &mut path, &mut out);
    out
}

fn apply_redex(e: &Expr, r: &Redex) -> Expr {
    fn replace(e: &Expr, path: &[usize], r: &Redex) -> Expr {
        if let Some((&head, rest)) = path.split_first() {
            return match e {
                Expr::Juxt(cs) => {
                    let mut cs = cs.clone();
                    cs[head] = replace(&cs[head], rest, r);
                    Expr::juxt(cs)
                }
                Expr::Cross(x) => {
                    assert_eq!(head, 0);
                    Expr::cross(replace(x, rest, r))
                }
                _ => unreachable!(),
            };
        }
        match r {
            Redex::Cancel(_) => Expr::empty(),
            Redex::Condense(_) => {
                let Expr::Juxt(cs) = e else { unreachable!() };
                let mut cs = cs.clone();
                let first_mark = cs.iter().position(is_mark).unwrap();
                cs.remove(first_mark);
                Expr::juxt(cs)
            }
        }
    }
    let path = match r {
        Redex::Cancel(p) | Redex::Condense(p) => p,
    };
    replace(e, path, r)
}
