//! The four-valued BF calculus.
//!
//! A value is a pair of primary-arithmetic values, written as a residue
//! `0..3`: `0 = (unmarked, unmarked)`, `1 = (marked, unmarked)`,
//! `2 = (marked, marked)`, `3 = (unmarked, marked)`. The imaginary mark
//! `[...]` advances the residue by one, so it is a square root of the
//! ordinary mark `(...)`, which advances it by two. Juxtaposition acts
//! componentwise.
//!
//! Three evaluators are implemented independently and agree on every ground
//! expression:
//!
//! * [`bf_eval`] — structural recursion through [`SimpleValue::sqrt`] and
//!   [`SimpleValue::juxt`];
//! * [`nms_eval`] — the nested marking scheme, which labels every space of
//!   the expression from the inside out using its own combination rules;
//! * [`flatten`] followed by componentwise primary-algebra evaluation.
//!
//! Variables occurring at top level range over the four values. Variables
//! occurring inside a pair component are primary-algebra variables and range
//! over the two values; a name may not be used both ways.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::pa::{self, PaValuation, PaValue};
use crate::syntax::{ground_pair, Expr, PaExpr};
use crate::EvalError;

/// Variable limit for exhaustive four-valued checks.
pub const BF_VAR_LIMIT: usize = 10;

/// One of the four simple values, stored as a residue mod 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleValue(u8);

impl SimpleValue {
    pub const ALL: [SimpleValue; 4] = [
        SimpleValue(0),
        SimpleValue(1),
        SimpleValue(2),
        SimpleValue(3),
    ];

    /// Builds a value from any residue, reducing mod 4.
    pub fn new(residue: u8) -> SimpleValue {
        SimpleValue(residue % 4)
    }

    pub fn residue(self) -> u8 {
        self.0
    }

    /// The pair form of the value.
    pub fn to_pa_pair(self) -> (PaValue, PaValue) {
        use PaValue::{Marked, Unmarked};
        match self.0 {
            0 => (Unmarked, Unmarked),
            1 => (Marked, Unmarked),
            2 => (Marked, Marked),
            _ => (Unmarked, Marked),
        }
    }

    pub fn from_pa_pair(first: PaValue, second: PaValue) -> SimpleValue {
        use PaValue::{Marked, Unmarked};
        match (first, second) {
            (Unmarked, Unmarked) => SimpleValue(0),
            (Marked, Unmarked) => SimpleValue(1),
            (Marked, Marked) => SimpleValue(2),
            (Unmarked, Marked) => SimpleValue(3),
        }
    }

    /// The value of one imaginary cross around this value: advance the
    /// residue by one. Componentwise this is `(a, b) -> (cross b, a)`.
    pub fn sqrt(self) -> SimpleValue {
        SimpleValue::new(self.0 + 1)
    }

    /// The value of two values side by side, componentwise on pair forms.
    pub fn juxt(self, other: SimpleValue) -> SimpleValue {
        let (a1, a2) = self.to_pa_pair();
        let (b1, b2) = other.to_pa_pair();
        SimpleValue::from_pa_pair(a1.juxt(b1), a2.juxt(b2))
    }

    /// The ground pair expression denoting this value, e.g. `{(),}` for 1.
    pub fn pair_literal(self) -> Expr {
        ground_pair(self.0)
    }
}

impl fmt::Display for SimpleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for SimpleValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.0)
    }
}

impl<'de> Deserialize<'de> for SimpleValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = u8::deserialize(d)?;
        if r > 3 {
            return Err(serde::de::Error::custom(format!(
                "residue out of range: {r}"
            )));
        }
        Ok(SimpleValue(r))
    }
}

/// An assignment for BF evaluation: four-valued bindings for top-level
/// variables and two-valued bindings for variables inside pair components.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BfValuation {
    pub bf: BTreeMap<String, SimpleValue>,
    pub pa: PaValuation,
}

impl BfValuation {
    pub fn new() -> BfValuation {
        BfValuation::default()
    }

    pub fn of(pairs: &[(&str, SimpleValue)]) -> BfValuation {
        BfValuation {
            bf: pairs.iter().map(|(n, v)| (n.to_string(), *v)).collect(),
            pa: PaValuation::new(),
        }
    }
}

/// Evaluates an expression to a simple value by structural recursion.
pub fn bf_eval(e: &Expr, v: &BfValuation) -> Result<SimpleValue, EvalError> {
    match e {
        Expr::Juxt(cs) => {
            let mut acc = SimpleValue::new(0);
            for c in cs {
                acc = acc.juxt(bf_eval(c, v)?);
            }
            Ok(acc)
        }
        Expr::Cross(x) => Ok(bf_eval(x, v)?.sqrt().sqrt()),
        Expr::CrossI(x, p) => {
            let mut val = bf_eval(x, v)?;
            for _ in 0..*p {
                val = val.sqrt();
            }
            Ok(val)
        }
        Expr::Pair(l, r) => Ok(SimpleValue::from_pa_pair(
            pa::eval_raw(l, &v.pa)?,
            pa::eval_raw(r, &v.pa)?,
        )),
        Expr::Var(n) => v
            .bf
            .get(n)
            .copied()
            .ok_or_else(|| EvalError::UnboundVariable(n.clone())),
    }
}

/// Evaluates via the nested marking scheme. Every pair constant is labelled
/// with its residue, an imaginary cross advances the label of its contents by
/// one, and labels side by side combine by the marking rules: label 2
/// dominates, 1 and 3 together make 2, repeated labels merge, and 0 is
/// neutral. The outermost label is the value.
pub fn nms_eval(e: &Expr, v: &BfValuation) -> Result<SimpleValue, EvalError> {
    let ground = substitute(e, v)?;
    label(&ground).map(SimpleValue::new)
}

/// Replaces top-level variables by their value's pair literal and
/// pair-component variables by their two-valued binding.
fn substitute(e: &Expr, v: &BfValuation) -> Result<Expr, EvalError> {
    match e {
        Expr::Juxt(cs) => Ok(Expr::juxt(
            cs.iter()
                .map(|c| substitute(c, v))
                .collect::<Result<_, _>>()?,
        )),
        Expr::Cross(x) => Ok(Expr::cross(substitute(x, v)?)),
        Expr::CrossI(x, p) => Ok(Expr::cross_i(substitute(x, v)?, u32::from(*p))),
        Expr::Pair(l, r) => Ok(Expr::pair(
            substitute_pa(l, &v.pa)?,
            substitute_pa(r, &v.pa)?,
        )),
        Expr::Var(n) => v
            .bf
            .get(n)
            .map(|sv| sv.pair_literal())
            .ok_or_else(|| EvalError::UnboundVariable(n.clone())),
    }
}

fn substitute_pa(e: &Expr, v: &PaValuation) -> Result<Expr, EvalError> {
    match e {
        Expr::Juxt(cs) => Ok(Expr::juxt(
            cs.iter()
                .map(|c| substitute_pa(c, v))
                .collect::<Result<_, _>>()?,
        )),
        Expr::Cross(x) => Ok(Expr::cross(substitute_pa(x, v)?)),
        Expr::Var(n) => match v.get(n) {
            Some(PaValue::Marked) => Ok(Expr::cross(Expr::empty())),
            Some(PaValue::Unmarked) => Ok(Expr::empty()),
            None => Err(EvalError::UnboundVariable(n.clone())),
        },
        Expr::CrossI(..) | Expr::Pair(..) => Err(EvalError::NotPrimaryAlgebra),
    }
}

/// The label of a ground expression's outermost space.
fn label(e: &Expr) -> Result<u8, EvalError> {
    match e {
        Expr::Juxt(cs) => {
            let mut acc = 0;
            for c in cs {
                acc = combine_labels(acc, label(c)?);
            }
            Ok(acc)
        }
        Expr::CrossI(x, p) => Ok((label(x)? + p) % 4),
        // The ordinary mark is two imaginary crosses.
        Expr::Cross(x) => Ok((label(x)? + 2) % 4),
        Expr::Pair(l, r) => {
            let first = pa::eval_raw(l, &PaValuation::new())?;
            let second = pa::eval_raw(r, &PaValuation::new())?;
            Ok(SimpleValue::from_pa_pair(first, second).residue())
        }
        Expr::Var(n) => Err(EvalError::UnboundVariable(n.clone())),
    }
}

/// The marking-scheme combination rules, stated directly.
fn combine_labels(x: u8, y: u8) -> u8 {
    match (x, y) {
        (2, _) | (_, 2) => 2,
        (1, 3) | (3, 1) => 2,
        _ if x == y => x,
        (0, other) => other,
        (other, 0) => other,
        _ => unreachable!("labels out of range: {x}, {y}"),
    }
}

/// An expression flattened to its two primary-algebra components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlattenedExpr {
    pub first: PaExpr,
    pub second: PaExpr,
}

impl fmt::Display for FlattenedExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.first, self.second)
    }
}

/// Flattens an expression into a pair of primary-algebra expressions. A
/// variable `X` becomes the component variables `X1` and `X2`, a pair is its
/// components, juxtaposition acts componentwise, and one imaginary cross maps
/// components `(f, g)` to `((g), f)`.
pub fn flatten(e: &Expr) -> Result<FlattenedExpr, EvalError> {
    fn sqrt_flat((first, second): (Expr, Expr)) -> (Expr, Expr) {
        (Expr::cross(second), first)
    }
    fn go(e: &Expr) -> Result<(Expr, Expr), EvalError> {
        match e {
            Expr::Juxt(cs) => {
                let mut firsts = Vec::with_capacity(cs.len());
                let mut seconds = Vec::with_capacity(cs.len());
                for c in cs {
                    let (f, s) = go(c)?;
                    firsts.push(f);
                    seconds.push(s);
                }
                Ok((Expr::juxt(firsts), Expr::juxt(seconds)))
            }
            Expr::Cross(x) => Ok(sqrt_flat(sqrt_flat(go(x)?))),
            Expr::CrossI(x, p) => {
                let mut acc = go(x)?;
                for _ in 0..*p {
                    acc = sqrt_flat(acc);
                }
                Ok(acc)
            }
            Expr::Pair(l, r) => {
                if !l.is_primary_algebra() || !r.is_primary_algebra() {
                    return Err(EvalError::NotPrimaryAlgebra);
                }
                Ok((l.as_ref().clone(), r.as_ref().clone()))
            }
            Expr::Var(n) => Ok((Expr::Var(format!("{n}1")), Expr::Var(format!("{n}2")))),
        }
    }
    let (first, second) = go(e)?;
    Ok(FlattenedExpr {
        first: PaExpr::from_expr_unchecked(first),
        second: PaExpr::from_expr_unchecked(second),
    })
}

/// The two-valued valuation matching a BF valuation after flattening: each
/// top-level binding `X = v` becomes `X1`, `X2` bound to the components of
/// `v`, and pair-component bindings carry over unchanged.
pub fn doubled_valuation(v: &BfValuation) -> PaValuation {
    let mut out = v.pa.clone();
    for (name, sv) in &v.bf {
        let (a, b) = sv.to_pa_pair();
        out.insert(format!("{name}1"), a);
        out.insert(format!("{name}2"), b);
    }
    out
}

/// Evaluates by flattening and simplifying both components.
pub fn flatten_eval(e: &Expr, v: &BfValuation) -> Result<SimpleValue, EvalError> {
    let flat = flatten(e)?;
    let doubled = doubled_valuation(v);
    Ok(SimpleValue::from_pa_pair(
        pa::pa_simplify(&flat.first, &doubled)?,
        pa::pa_simplify(&flat.second, &doubled)?,
    ))
}

/// The result of an exhaustive four-valued equivalence check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfEquivalence {
    pub equal: bool,
    pub countermodel: Option<BfValuation>,
}

/// Splits the variables of an expression set into top-level and
/// pair-component names, rejecting names used both ways.
pub(crate) fn classify_vars(exprs: &[&Expr]) -> Result<(Vec<String>, Vec<String>), EvalError> {
    let mut top = Vec::new();
    let mut pairc = Vec::new();
    for e in exprs {
        e.visit_vars(&mut |n, in_pair| {
            let bucket = if in_pair { &mut pairc } else { &mut top };
            if !bucket.iter().any(|m: &String| m == n) {
                bucket.push(n.to_string());
            }
        });
    }
    top.sort();
    pairc.sort();
    if let Some(n) = top.iter().find(|n| pairc.contains(n)) {
        return Err(EvalError::MixedVariableUse(n.clone()));
    }
    Ok((top, pairc))
}

/// Decides whether two expressions have the same value under every valuation:
/// top-level variables range over the four values, pair-component variables
/// over the two.
pub fn bf_equivalent(f: &Expr, g: &Expr) -> Result<BfEquivalence, EvalError> {
    let (top, pairc) = classify_vars(&[f, g])?;
    let count = top.len() + pairc.len();
    if count > BF_VAR_LIMIT {
        return Err(EvalError::TooManyVariables {
            count,
            limit: BF_VAR_LIMIT,
        });
    }
    let total: u64 = 4u64.pow(top.len() as u32) * 2u64.pow(pairc.len() as u32);
    for index in 0..total {
        let v = bf_valuation_at(&top, &pairc, index);
        if bf_eval(f, &v)? != bf_eval(g, &v)? {
            return Ok(BfEquivalence {
                equal: false,
                countermodel: Some(v),
            });
        }
    }
    Ok(BfEquivalence {
        equal: true,
        countermodel: None,
    })
}

fn bf_valuation_at(top: &[String], pairc: &[String], mut index: u64) -> BfValuation {
    let mut v = BfValuation::new();
    for name in top {
        v.bf.insert(name.clone(), SimpleValue::new((index % 4) as u8));
        index /= 4;
    }
    for name in pairc {
        let val = if index % 2 == 1 {
            PaValue::Marked
        } else {
            PaValue::Unmarked
        };
        v.pa.insert(name.clone(), val);
        index /= 2;
    }
    v
}
