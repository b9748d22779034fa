//! The sibling four-valued calculi and the bilattice structure on FOUR.
//!
//! Three further calculi share the BF juxtaposition but read the cross
//! differently: the product calculus crosses both components, the waveform
//! calculus crosses and swaps, and the swap calculus (Belnap negation) swaps
//! only. [`four_eval`] and [`four_equivalent`] evaluate and compare
//! expressions under any of them.
//!
//! The four values form a bilattice with a truth ordering (1 below 0 and 2,
//! which are below 3) and a knowledge ordering (0 below 1 and 3, which are
//! below 2). Each of the four lattice operations is expressible inside BF;
//! [`bilattice_op`] evaluates the defining BF expression and checks it
//! against the lattice computation. The unary operations generate two
//! four-element groups and one eight-element dihedral group, examined with
//! [`verify_group`].
//!
//! [`TupleValue`] generalizes the two-component values to width-n tuples,
//! where the rotation cross [`TupleValue::rot_cross`] has order 2n.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::bf::SimpleValue;
use crate::pa::{self, PaValuation, PaValue};
use crate::syntax::Expr;
use crate::EvalError;

/// Variable limit for exhaustive checks in the sibling calculi.
pub const FOUR_VAR_LIMIT: usize = 10;

/// The componentwise cross of the product calculus: `(a, b) -> ((a), (b))`.
pub fn cross_product(x: SimpleValue) -> SimpleValue {
    let (a, b) = x.to_pa_pair();
    SimpleValue::from_pa_pair(a.cross(), b.cross())
}

/// The waveform cross: `(a, b) -> ((b), (a))`.
pub fn cross_w(x: SimpleValue) -> SimpleValue {
    let (a, b) = x.to_pa_pair();
    SimpleValue::from_pa_pair(b.cross(), a.cross())
}

/// The swap cross (Belnap negation): `(a, b) -> (b, a)`.
pub fn cross_b(x: SimpleValue) -> SimpleValue {
    let (a, b) = x.to_pa_pair();
    SimpleValue::from_pa_pair(b, a)
}

/// A four-valued calculus that shares BF juxtaposition but reinterprets the
/// cross.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SiblingCalculus {
    /// Cross acts componentwise (two primary algebras in parallel).
    Product,
    /// Cross crosses and swaps the components.
    Waveform,
    /// Cross swaps the components.
    Belnap,
}

impl SiblingCalculus {
    pub fn name(self) -> &'static str {
        match self {
            SiblingCalculus::Product => "product",
            SiblingCalculus::Waveform => "wf",
            SiblingCalculus::Belnap => "belnap",
        }
    }

    pub fn cross(self, x: SimpleValue) -> SimpleValue {
        match self {
            SiblingCalculus::Product => cross_product(x),
            SiblingCalculus::Waveform => cross_w(x),
            SiblingCalculus::Belnap => cross_b(x),
        }
    }
}

/// Evaluates an expression in a sibling calculus. Pairs must be ground;
/// imaginary crosses do not belong to these calculi.
pub fn four_eval(
    e: &Expr,
    v: &BTreeMap<String, SimpleValue>,
    calculus: SiblingCalculus,
) -> Result<SimpleValue, EvalError> {
    match e {
        Expr::Juxt(cs) => {
            let mut acc = SimpleValue::new(0);
            for c in cs {
                acc = acc.juxt(four_eval(c, v, calculus)?);
            }
            Ok(acc)
        }
        Expr::Cross(x) => Ok(calculus.cross(four_eval(x, v, calculus)?)),
        Expr::CrossI(..) => Err(EvalError::ForeignConstruct {
            construct: "the imaginary mark",
            calculus: calculus.name(),
        }),
        Expr::Pair(l, r) => Ok(SimpleValue::from_pa_pair(
            pa::eval_raw(l, &PaValuation::new())?,
            pa::eval_raw(r, &PaValuation::new())?,
        )),
        Expr::Var(n) => v
            .get(n)
            .copied()
            .ok_or_else(|| EvalError::UnboundVariable(n.clone())),
    }
}

/// The result of an exhaustive equivalence check in a sibling calculus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourEquivalence {
    pub equal: bool,
    pub countermodel: Option<BTreeMap<String, SimpleValue>>,
}

/// Decides equivalence in a sibling calculus over all `4^k` valuations.
pub fn four_equivalent(
    f: &Expr,
    g: &Expr,
    calculus: SiblingCalculus,
) -> Result<FourEquivalence, EvalError> {
    let mut names = f.var_names();
    for n in g.var_names() {
        if !names.contains(&n) {
            names.push(n);
        }
    }
    names.sort();
    if names.len() > FOUR_VAR_LIMIT {
        return Err(EvalError::TooManyVariables {
            count: names.len(),
            limit: FOUR_VAR_LIMIT,
        });
    }
    for index in 0..4u64.pow(names.len() as u32) {
        let mut rest = index;
        let v: BTreeMap<String, SimpleValue> = names
            .iter()
            .map(|n| {
                let val = SimpleValue::new((rest % 4) as u8);
                rest /= 4;
                (n.clone(), val)
            })
            .collect();
        if four_eval(f, &v, calculus)? != four_eval(g, &v, calculus)? {
            return Ok(FourEquivalence {
                equal: false,
                countermodel: Some(v),
            });
        }
    }
    Ok(FourEquivalence {
        equal: true,
        countermodel: None,
    })
}

/// A counterexample to a law, with the values both sides took.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub valuation: BTreeMap<String, SimpleValue>,
    pub lhs: SimpleValue,
    pub rhs: SimpleValue,
}

/// What holds and what fails in the waveform calculus: transposition and
/// occultation hold, while generation and position fail.
#[derive(Debug, Clone)]
pub struct WfReport {
    pub transposition_holds: bool,
    pub transposition_cases: usize,
    pub occultation_holds: bool,
    pub occultation_cases: usize,
    pub generation_counterexample: Option<Counterexample>,
    pub position_counterexample: Option<Counterexample>,
}

impl WfReport {
    /// True when the report shows exactly the expected pattern.
    pub fn as_expected(&self) -> bool {
        self.transposition_holds
            && self.occultation_holds
            && self.generation_counterexample.is_some()
            && self.position_counterexample.is_some()
    }
}

fn counterexample_for(lhs: &str, rhs: &str, calculus: SiblingCalculus) -> Option<Counterexample> {
    let f = crate::syntax::parse(lhs).unwrap();
    let g = crate::syntax::parse(rhs).unwrap();
    let r = four_equivalent(&f, &g, calculus).unwrap();
    r.countermodel.map(|v| Counterexample {
        lhs: four_eval(&f, &v, calculus).unwrap(),
        rhs: four_eval(&g, &v, calculus).unwrap(),
        valuation: v,
    })
}

/// Checks the waveform calculus: its own transposition and occultation laws
/// hold exhaustively, while the primary-algebra generation and position laws
/// fail with concrete counterexamples.
pub fn verify_wf() -> WfReport {
    let wf = SiblingCalculus::Waveform;
    let holds = |l: &str, r: &str| {
        let f = crate::syntax::parse(l).unwrap();
        let g = crate::syntax::parse(r).unwrap();
        four_equivalent(&f, &g, wf).unwrap().equal
    };
    WfReport {
        transposition_holds: holds("((A) (B)) C", "((A C) (B C))"),
        transposition_cases: 64,
        occultation_holds: holds("((A) B) A", "A"),
        occultation_cases: 16,
        generation_counterexample: counterexample_for("(A) B", "(A B) B", wf),
        position_counterexample: counterexample_for("((A) A)", "", wf),
    }
}

/// The pair form of a value as marked-flags `(first, second)`.
fn flags(x: SimpleValue) -> (bool, bool) {
    let (a, b) = x.to_pa_pair();
    (a.is_marked(), b.is_marked())
}

fn from_flags(first: bool, second: bool) -> SimpleValue {
    let v = |b: bool| if b { PaValue::Marked } else { PaValue::Unmarked };
    SimpleValue::from_pa_pair(v(first), v(second))
}

/// The truth ordering: 1 at the bottom, 0 and 2 in the middle, 3 on top.
pub fn t_le(x: SimpleValue, y: SimpleValue) -> bool {
    let (fx, sx) = flags(x);
    let (fy, sy) = flags(y);
    fx >= fy && sx <= sy
}

/// The knowledge ordering: 0 at the bottom, 1 and 3 in the middle, 2 on top.
pub fn k_le(x: SimpleValue, y: SimpleValue) -> bool {
    let (fx, sx) = flags(x);
    let (fy, sy) = flags(y);
    fx <= fy && sx <= sy
}

/// One of the four bilattice lattice operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryOp {
    /// Join in the truth ordering.
    OrT,
    /// Meet in the truth ordering.
    AndT,
    /// Join in the knowledge ordering (plain juxtaposition).
    OplusK,
    /// Meet in the knowledge ordering.
    OtimesK,
}

impl BinaryOp {
    pub const ALL: [BinaryOp; 4] = [
        BinaryOp::OrT,
        BinaryOp::AndT,
        BinaryOp::OplusK,
        BinaryOp::OtimesK,
    ];

    pub fn id(self) -> &'static str {
        match self {
            BinaryOp::OrT => "or_t",
            BinaryOp::AndT => "and_t",
            BinaryOp::OplusK => "oplus_k",
            BinaryOp::OtimesK => "otimes_k",
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            BinaryOp::OrT => "or",
            BinaryOp::AndT => "and",
            BinaryOp::OplusK => "oplus",
            BinaryOp::OtimesK => "otimes",
        }
    }

    /// The defining BF expression, over the variables `A` and `B`.
    pub fn bf_form(self) -> &'static str {
        match self {
            BinaryOp::OrT => "[[[[A]]] [[[B]]]]",
            BinaryOp::AndT => "[[[[A] [B]]]]",
            BinaryOp::OplusK => "A B",
            BinaryOp::OtimesK => "((A) (B))",
        }
    }

    /// The same operation computed from the lattice orderings.
    fn lattice(self, x: SimpleValue, y: SimpleValue) -> SimpleValue {
        let (fx, sx) = flags(x);
        let (fy, sy) = flags(y);
        match self {
            BinaryOp::OrT => from_flags(fx && fy, sx || sy),
            BinaryOp::AndT => from_flags(fx || fy, sx && sy),
            BinaryOp::OplusK => from_flags(fx || fy, sx || sy),
            BinaryOp::OtimesK => from_flags(fx && fy, sx && sy),
        }
    }

    /// The row/column order used when the operation is tabulated: truth
    /// operations list 1, 0, 2, 3 (bottom to top), knowledge operations list
    /// 0, 1, 3, 2.
    pub fn table_order(self) -> [SimpleValue; 4] {
        let order = match self {
            BinaryOp::OrT | BinaryOp::AndT => [1, 0, 2, 3],
            BinaryOp::OplusK | BinaryOp::OtimesK => [0, 1, 3, 2],
        };
        order.map(SimpleValue::new)
    }
}

/// Applies a bilattice operation. The value is computed by evaluating the
/// operation's BF expression and must coincide with the lattice computation.
pub fn bilattice_op(op: BinaryOp, x: SimpleValue, y: SimpleValue) -> SimpleValue {
    let form = crate::syntax::parse(op.bf_form()).unwrap();
    let v = crate::bf::BfValuation::of(&[("A", x), ("B", y)]);
    let via_bf = crate::bf::bf_eval(&form, &v).unwrap();
    let via_lattice = op.lattice(x, y);
    assert_eq!(
        via_bf,
        via_lattice,
        "BF form and lattice disagree for {}({x}, {y})",
        op.id()
    );
    via_bf
}

/// A tabulated binary operation on the four values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FourOpTable {
    pub name: String,
    pub order: Vec<SimpleValue>,
    pub entries: Vec<Vec<SimpleValue>>,
}

impl FourOpTable {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let w = self.name.len().max(2);
        out.push_str(&format!("{:>w$} |", self.name));
        for v in &self.order {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
        out.push_str(&format!("{:->w$}-+", ""));
        out.push_str(&"-".repeat(2 * self.order.len()));
        out.push('\n');
        for (row, x) in self.order.iter().enumerate() {
            out.push_str(&format!("{:>w$} |", x.to_string()));
            for cell in &self.entries[row] {
                out.push_str(&format!(" {cell}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Tabulates a bilattice operation in its conventional row order.
pub fn op_table(op: BinaryOp) -> FourOpTable {
    let order = op.table_order();
    let entries = order
        .iter()
        .map(|&x| order.iter().map(|&y| bilattice_op(op, x, y)).collect())
        .collect();
    FourOpTable {
        name: op.short_name().to_string(),
        order: order.to_vec(),
        entries,
    }
}

/// A unary operation on the four values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    Id,
    /// One imaginary cross.
    Sqrt,
    /// The ordinary cross (two imaginary crosses).
    Tilde,
    /// Three imaginary crosses.
    SqrtCubed,
    /// Truth negation: swaps the pair components.
    NegT,
    /// Conflation: swaps and crosses the pair components.
    Conflate,
    /// Crosses the second pair component only.
    MarkRight,
    /// Crosses the first pair component only.
    MarkLeft,
}

impl UnaryOp {
    pub const ALL: [UnaryOp; 8] = [
        UnaryOp::Id,
        UnaryOp::Sqrt,
        UnaryOp::Tilde,
        UnaryOp::SqrtCubed,
        UnaryOp::NegT,
        UnaryOp::Conflate,
        UnaryOp::MarkRight,
        UnaryOp::MarkLeft,
    ];

    pub fn id(self) -> &'static str {
        match self {
            UnaryOp::Id => "id",
            UnaryOp::Sqrt => "sqrt",
            UnaryOp::Tilde => "tilde",
            UnaryOp::SqrtCubed => "sqrt3",
            UnaryOp::NegT => "neg_t",
            UnaryOp::Conflate => "conflate",
            UnaryOp::MarkRight => "mark_right",
            UnaryOp::MarkLeft => "mark_left",
        }
    }

    /// The defining BF expression, over the variable `A`.
    pub fn bf_form(self) -> &'static str {
        match self {
            UnaryOp::Id => "A",
            UnaryOp::Sqrt => "[A]",
            UnaryOp::Tilde => "(A)",
            UnaryOp::SqrtCubed => "[[[A]]]",
            UnaryOp::NegT => "([A] [[[]]]) ([[[A]]] [])",
            UnaryOp::Conflate => "([A] []) ([[[A]]] [[[]]])",
            UnaryOp::MarkRight => "((A) [[[]]]) (A [])",
            UnaryOp::MarkLeft => "(A [[[]]]) ((A) [])",
        }
    }

    /// The operation on pair forms, stated directly.
    fn pair_formula(self, x: SimpleValue) -> SimpleValue {
        let (a, b) = x.to_pa_pair();
        let (first, second) = match self {
            UnaryOp::Id => (a, b),
            UnaryOp::Sqrt => (b.cross(), a),
            UnaryOp::Tilde => (a.cross(), b.cross()),
            UnaryOp::SqrtCubed => (b, a.cross()),
            UnaryOp::NegT => (b, a),
            UnaryOp::Conflate => (b.cross(), a.cross()),
            UnaryOp::MarkRight => (a, b.cross()),
            UnaryOp::MarkLeft => (a.cross(), b),
        };
        SimpleValue::from_pa_pair(first, second)
    }
}

/// Applies a unary operation. The value is computed by evaluating the
/// operation's BF expression and must coincide with the pair formula.
pub fn unary(op: UnaryOp, x: SimpleValue) -> SimpleValue {
    let form = crate::syntax::parse(op.bf_form()).unwrap();
    let v = crate::bf::BfValuation::of(&[("A", x)]);
    let via_bf = crate::bf::bf_eval(&form, &v).unwrap();
    let via_pair = op.pair_formula(x);
    assert_eq!(
        via_bf,
        via_pair,
        "BF form and pair formula disagree for {}({x})",
        op.id()
    );
    via_bf
}

/// A unary operation given by its table of images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnaryMap {
    pub name: String,
    pub images: [SimpleValue; 4],
}

impl UnaryMap {
    pub fn of(name: impl Into<String>, f: impl Fn(SimpleValue) -> SimpleValue) -> UnaryMap {
        UnaryMap {
            name: name.into(),
            images: SimpleValue::ALL.map(f),
        }
    }

    pub fn identity() -> UnaryMap {
        UnaryMap::of("id", |x| x)
    }

    pub fn apply(&self, x: SimpleValue) -> SimpleValue {
        self.images[x.residue() as usize]
    }

    /// `self` after `inner`.
    pub fn compose(&self, inner: &UnaryMap) -> UnaryMap {
        UnaryMap {
            name: format!("{}*{}", self.name, inner.name),
            images: SimpleValue::ALL.map(|x| self.apply(inner.apply(x))),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images == SimpleValue::ALL
    }

    /// The least k >= 1 with the k-fold composite equal to the identity, if
    /// one exists (it does exactly when the map is a bijection).
    pub fn order(&self) -> Option<usize> {
        let mut acc = self.clone();
        for k in 1..=256 {
            if acc.is_identity() {
                return Some(k);
            }
            acc = self.compose(&acc);
        }
        None
    }
}

/// The table of a named unary operation.
pub fn unary_map(op: UnaryOp) -> UnaryMap {
    UnaryMap::of(op.id(), |x| unary(op, x))
}

/// Closure, order and isomorphism class of a set of unary maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupReport {
    pub closed: bool,
    pub order: usize,
    pub isomorphism_class: String,
}

/// Closes a set of unary maps under composition (up to 256 elements) and
/// classifies the result.
pub fn verify_group(maps: &[UnaryMap]) -> GroupReport {
    let key = |m: &UnaryMap| m.images.map(|v| v.residue());
    let mut seen: BTreeSet<[u8; 4]> = maps.iter().map(key).collect();
    let mut elems: Vec<UnaryMap> = Vec::new();
    for m in maps {
        if elems.iter().all(|e| key(e) != key(m)) {
            elems.push(m.clone());
        }
    }
    let mut grew = true;
    while grew {
        grew = false;
        let snapshot = elems.clone();
        for a in &snapshot {
            for b in &snapshot {
                let c = a.compose(b);
                if seen.insert(key(&c)) {
                    elems.push(c);
                    grew = true;
                }
            }
        }
        if elems.len() > 256 {
            return GroupReport {
                closed: false,
                order: elems.len(),
                isomorphism_class: "closure exceeds bound".into(),
            };
        }
    }
    let order = elems.len();
    let has_identity = elems.iter().any(UnaryMap::is_identity);
    let all_invertible = elems.iter().all(|e| e.order().is_some());
    if !has_identity || !all_invertible {
        return GroupReport {
            closed: true,
            order,
            isomorphism_class: format!("monoid of order {order} (not a group)"),
        };
    }
    let orders: Vec<usize> = elems.iter().map(|e| e.order().unwrap()).collect();
    let abelian = elems.iter().enumerate().all(|(i, a)| {
        elems[i + 1..]
            .iter()
            .all(|b| key(&a.compose(b)) == key(&b.compose(a)))
    });
    let class = match order {
        1 => "trivial group".to_string(),
        2 => "Z2".to_string(),
        3 => "Z3".to_string(),
        4 if orders.iter().all(|&k| k <= 2) => "Klein four-group".to_string(),
        4 => "Z4".to_string(),
        8 if !abelian => {
            let fours = orders.iter().filter(|&&k| k == 4).count();
            match fours {
                2 => "dihedral group of order 8".to_string(),
                6 => "quaternion group".to_string(),
                _ => "non-abelian group of order 8".to_string(),
            }
        }
        n => format!("{}group of order {n}", if abelian { "abelian " } else { "" }),
    };
    GroupReport {
        closed: true,
        order,
        isomorphism_class: class,
    }
}

/// The negation Klein group: identity, truth negation, conflation, tilde.
pub fn negation_group() -> Vec<UnaryMap> {
    [UnaryOp::Id, UnaryOp::NegT, UnaryOp::Conflate, UnaryOp::Tilde]
        .map(unary_map)
        .to_vec()
}

/// The marking Klein group: identity, tilde, mark right, mark left.
pub fn marking_group() -> Vec<UnaryMap> {
    [UnaryOp::Id, UnaryOp::Tilde, UnaryOp::MarkRight, UnaryOp::MarkLeft]
        .map(unary_map)
        .to_vec()
}

/// All eight unary operations: the dihedral group of the value square.
pub fn dihedral_maps() -> Vec<UnaryMap> {
    UnaryOp::ALL.map(unary_map).to_vec()
}

/// A width-n tuple of primary-arithmetic values.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TupleValue(pub Vec<PaValue>);

impl TupleValue {
    pub fn arity(&self) -> usize {
        self.0.len()
    }

    /// The all-unmarked tuple, the juxtaposition identity.
    pub fn unmarked(arity: usize) -> TupleValue {
        TupleValue(vec![PaValue::Unmarked; arity])
    }

    /// Builds a tuple from a bitmask: bit i set means component i+1 marked.
    pub fn from_bits(arity: usize, bits: u64) -> TupleValue {
        TupleValue(
            (0..arity)
                .map(|i| {
                    if bits >> i & 1 == 1 {
                        PaValue::Marked
                    } else {
                        PaValue::Unmarked
                    }
                })
                .collect(),
        )
    }

    /// All `2^arity` tuples, in bitmask order.
    pub fn all(arity: usize) -> Vec<TupleValue> {
        (0..1u64 << arity)
            .map(|bits| TupleValue::from_bits(arity, bits))
            .collect()
    }

    /// The rotation cross: the last component is crossed and moved to the
    /// front, every other component shifts right.
    pub fn rot_cross(&self) -> TupleValue {
        let n = self.arity();
        let mut out = Vec::with_capacity(n);
        out.push(self.0[n - 1].cross());
        out.extend_from_slice(&self.0[..n - 1]);
        TupleValue(out)
    }

    /// Componentwise juxtaposition.
    pub fn rot_juxt(&self, other: &TupleValue) -> Result<TupleValue, EvalError> {
        if self.arity() != other.arity() {
            return Err(EvalError::ArityMismatch {
                left: self.arity(),
                right: other.arity(),
            });
        }
        Ok(TupleValue(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.juxt(*b))
                .collect(),
        ))
    }
}

impl fmt::Display for TupleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(if v.is_marked() { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}

/// Evaluates an expression in the width-n rotation calculus: the cross
/// rotates, juxtaposition is componentwise. Pairs are accepted as literals
/// only at width 2.
pub fn rot_eval(
    e: &Expr,
    v: &BTreeMap<String, TupleValue>,
    arity: usize,
) -> Result<TupleValue, EvalError> {
    match e {
        Expr::Juxt(cs) => {
            let mut acc = TupleValue::unmarked(arity);
            for c in cs {
                acc = acc.rot_juxt(&rot_eval(c, v, arity)?)?;
            }
            Ok(acc)
        }
        Expr::Cross(x) => Ok(rot_eval(x, v, arity)?.rot_cross()),
        Expr::CrossI(..) => Err(EvalError::ForeignConstruct {
            construct: "the imaginary mark",
            calculus: "rot",
        }),
        Expr::Pair(l, r) if arity == 2 => {
            let a = pa::eval_raw(l, &PaValuation::new())?;
            let b = pa::eval_raw(r, &PaValuation::new())?;
            Ok(TupleValue(vec![a, b]))
        }
        Expr::Pair(..) => Err(EvalError::ForeignConstruct {
            construct: "a pair literal",
            calculus: "rot",
        }),
        Expr::Var(n) => {
            let t = v
                .get(n)
                .ok_or_else(|| EvalError::UnboundVariable(n.clone()))?;
            if t.arity() != arity {
                return Err(EvalError::ArityMismatch {
                    left: t.arity(),
                    right: arity,
                });
            }
            Ok(t.clone())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn sv(r: u8) -> SimpleValue {
        SimpleValue::new(r)
    }

    #[test]
    fn product_cross_is_tilde() {
        let images: Vec<u8> = SimpleValue::ALL
            .map(cross_product)
            .iter()
            .map(|v| v.residue())
            .collect();
        assert_eq!(images, [2, 3, 0, 1]);
        for x in SimpleValue::ALL {
            assert_eq!(cross_product(x), unary(UnaryOp::Tilde, x));
        }
    }

    #[test]
    fn waveform_cross_is_conflation() {
        let images: Vec<u8> = SimpleValue::ALL
            .map(cross_w)
            .iter()
            .map(|v| v.residue())
            .collect();
        assert_eq!(images, [2, 1, 0, 3]);
        for x in SimpleValue::ALL {
            assert_eq!(cross_w(x), unary(UnaryOp::Conflate, x));
        }
    }

    #[test]
    fn swap_cross_is_truth_negation() {
        let images: Vec<u8> = SimpleValue::ALL
            .map(cross_b)
            .iter()
            .map(|v| v.residue())
            .collect();
        assert_eq!(images, [0, 3, 2, 1]);
        for x in SimpleValue::ALL {
            assert_eq!(cross_b(x), unary(UnaryOp::NegT, x));
        }
    }

    #[test]
    fn waveform_report_is_as_expected() {
        let report = verify_wf();
        assert!(report.as_expected());
        let pos = report.position_counterexample.unwrap();
        assert_eq!(pos.valuation["A"], sv(1));
        assert_eq!(pos.lhs, sv(1));
        assert_eq!(pos.rhs, sv(0));
    }

    #[test]
    fn unary_tables_are_correct() {
        let table = |op: UnaryOp| SimpleValue::ALL.map(|x| unary(op, x).residue());
        assert_eq!(table(UnaryOp::Id), [0, 1, 2, 3]);
        assert_eq!(table(UnaryOp::Sqrt), [1, 2, 3, 0]);
        assert_eq!(table(UnaryOp::Tilde), [2, 3, 0, 1]);
        assert_eq!(table(UnaryOp::SqrtCubed), [3, 0, 1, 2]);
        assert_eq!(table(UnaryOp::NegT), [0, 3, 2, 1]);
        assert_eq!(table(UnaryOp::Conflate), [2, 1, 0, 3]);
        assert_eq!(table(UnaryOp::MarkRight), [3, 2, 1, 0]);
        assert_eq!(table(UnaryOp::MarkLeft), [1, 0, 3, 2]);
    }

    #[test]
    fn negations_commute_and_compose_to_tilde() {
        for x in SimpleValue::ALL {
            let a = unary(UnaryOp::NegT, unary(UnaryOp::Conflate, x));
            let b = unary(UnaryOp::Conflate, unary(UnaryOp::NegT, x));
            assert_eq!(a, b);
            assert_eq!(a, unary(UnaryOp::Tilde, x));
            assert_eq!(a, x.sqrt().sqrt());
        }
    }

    #[test]
    fn de_morgan_laws_hold() {
        use BinaryOp::{AndT, OplusK, OrT, OtimesK};
        for x in SimpleValue::ALL {
            for y in SimpleValue::ALL {
                let neg = |v| unary(UnaryOp::NegT, v);
                let conf = |v| unary(UnaryOp::Conflate, v);
                assert_eq!(
                    neg(bilattice_op(OrT, x, y)),
                    bilattice_op(AndT, neg(x), neg(y))
                );
                assert_eq!(
                    neg(bilattice_op(AndT, x, y)),
                    bilattice_op(OrT, neg(x), neg(y))
                );
                assert_eq!(
                    conf(bilattice_op(OplusK, x, y)),
                    bilattice_op(OtimesK, conf(x), conf(y))
                );
                assert_eq!(
                    conf(bilattice_op(OtimesK, x, y)),
                    bilattice_op(OplusK, conf(x), conf(y))
                );
            }
        }
    }

    #[test]
    fn lattice_orders_have_the_right_shape() {
        // Truth: 1 bottom, 3 top, 0 and 2 incomparable.
        assert!(t_le(sv(1), sv(0)) && t_le(sv(1), sv(2)) && t_le(sv(1), sv(3)));
        assert!(t_le(sv(0), sv(3)) && t_le(sv(2), sv(3)));
        assert!(!t_le(sv(0), sv(2)) && !t_le(sv(2), sv(0)));
        // Knowledge: 0 bottom, 2 top, 1 and 3 incomparable.
        assert!(k_le(sv(0), sv(1)) && k_le(sv(0), sv(3)) && k_le(sv(0), sv(2)));
        assert!(k_le(sv(1), sv(2)) && k_le(sv(3), sv(2)));
        assert!(!k_le(sv(1), sv(3)) && !k_le(sv(3), sv(1)));
    }

    #[test]
    fn joins_and_meets_bound_their_arguments() {
        for x in SimpleValue::ALL {
            for y in SimpleValue::ALL {
                let join = bilattice_op(BinaryOp::OrT, x, y);
                assert!(t_le(x, join) && t_le(y, join));
                let meet = bilattice_op(BinaryOp::AndT, x, y);
                assert!(t_le(meet, x) && t_le(meet, y));
                let kjoin = bilattice_op(BinaryOp::OplusK, x, y);
                assert!(k_le(x, kjoin) && k_le(y, kjoin));
                assert_eq!(kjoin, x.juxt(y));
                let kmeet = bilattice_op(BinaryOp::OtimesK, x, y);
                assert!(k_le(kmeet, x) && k_le(kmeet, y));
            }
        }
    }

    #[test]
    fn example_table_entries() {
        assert_eq!(bilattice_op(BinaryOp::AndT, sv(1), sv(0)), sv(1));
        assert_eq!(bilattice_op(BinaryOp::OrT, sv(0), sv(2)), sv(3));
        assert_eq!(bilattice_op(BinaryOp::OplusK, sv(1), sv(3)), sv(2));
        assert_eq!(bilattice_op(BinaryOp::OtimesK, sv(1), sv(3)), sv(0));
    }

    #[test]
    fn tables_render_and_serialize() {
        let t = op_table(BinaryOp::OplusK);
        assert_eq!(t.order, [0, 1, 3, 2].map(sv).to_vec());
        let text = t.render_text();
        assert!(text.starts_with("oplus | 0 1 3 2"));
        let json = serde_json::to_value(&t).unwrap();
        assert_eq!(json["name"], "oplus");
        assert_eq!(json["entries"][0], serde_json::json!([0, 1, 3, 2]));
    }

    #[test]
    fn the_two_klein_groups() {
        for maps in [negation_group(), marking_group()] {
            let report = verify_group(&maps);
            assert!(report.closed);
            assert_eq!(report.order, 4);
            assert_eq!(report.isomorphism_class, "Klein four-group");
        }
    }

    #[test]
    fn the_eight_unary_maps_form_a_dihedral_group() {
        let report = verify_group(&dihedral_maps());
        assert!(report.closed);
        assert_eq!(report.order, 8);
        assert_eq!(report.isomorphism_class, "dihedral group of order 8");
    }

    #[test]
    fn an_incomplete_set_reports_larger_closure() {
        // sqrt alone closes to the cyclic group it generates.
        let report = verify_group(&[unary_map(UnaryOp::Sqrt)]);
        assert!(report.closed);
        assert_eq!(report.order, 4);
        assert_eq!(report.isomorphism_class, "Z4");
    }

    #[test]
    fn product_calculus_satisfies_position() {
        let f = parse("((A) A)").unwrap();
        let g = parse("").unwrap();
        assert!(four_equivalent(&f, &g, SiblingCalculus::Product)
            .unwrap()
            .equal);
    }

    #[test]
    fn rotation_cross_has_order_two_n() {
        for n in 1..=6 {
            for t in TupleValue::all(n) {
                let mut cur = t.clone();
                for _ in 0..2 * n {
                    cur = cur.rot_cross();
                }
                assert_eq!(cur, t);
            }
            // Some tuple realizes the full order.
            let start = TupleValue::unmarked(n);
            let mut cur = start.rot_cross();
            let mut steps = 1;
            while cur != start {
                cur = cur.rot_cross();
                steps += 1;
            }
            assert_eq!(steps, 2 * n);
        }
    }

    #[test]
    fn rotation_at_width_two_is_sqrt() {
        for x in SimpleValue::ALL {
            let (a, b) = x.to_pa_pair();
            let t = TupleValue(vec![a, b]);
            let (ra, rb) = x.sqrt().to_pa_pair();
            assert_eq!(t.rot_cross(), TupleValue(vec![ra, rb]));
        }
    }

    #[test]
    fn rot_eval_works() {
        let v: BTreeMap<String, TupleValue> =
            [("X".to_string(), TupleValue::from_bits(3, 0b001))].into();
        let e = parse("(X) X").unwrap();
        let got = rot_eval(&e, &v, 3).unwrap();
        // (X) rotates (1,0,0) to ((0),1,0) = (1,1,0); juxt with (1,0,0).
        assert_eq!(got, TupleValue::from_bits(3, 0b011));
        assert!(matches!(
            rot_eval(&parse("[X]").unwrap(), &v, 3),
            Err(EvalError::ForeignConstruct { .. })
        ));
    }
}
