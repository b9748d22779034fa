//! Expression syntax: abstract terms, a parser, a printer and a canonical form.
//!
//! The concrete grammar, with insignificant whitespace between terms:
//!
//! ```text
//! expr  := term*
//! term  := "(" expr ")"             cross (the mark)
//!        | "[" expr "]" ("^" INT)?  imaginary cross, optionally iterated
//!        | "{" expr "," expr "}"    ordered pair; components are primary-algebra only
//!        | VAR                      [A-Z][0-9]*
//!        | DIGIT                    0|1|2|3, sugar for the four ground pairs
//! ```
//!
//! The empty string is the empty (unmarked) expression. The digits abbreviate
//! `{,}`, `{(),}`, `{(),()}` and `{,()}` in that order.
//!
//! Canonical form:
//!
//! * juxtaposition is a multiset: a [`Expr::Juxt`] is flattened (it never
//!   directly contains another `Juxt`), its members are sorted by printed
//!   form, and a singleton collapses to its member;
//! * iterated imaginary crosses merge and their power is reduced mod 4, so the
//!   power stored in [`Expr::CrossI`] is always 1, 2 or 3 (power 4 is the
//!   identity);
//! * `(E)` and `[[E]]` are *not* identified syntactically even though every
//!   evaluator treats them as equal; a demonstration converts between them
//!   with an explicit definitional step.
//!
//! The parser only produces canonical expressions, and the printer is a right
//! inverse of the parser on canonical expressions. Non-canonical trees can be
//! built directly from the enum and normalized with [`Expr::canonical`].

use std::fmt;

use thiserror::Error;

use crate::EvalError;

/// A boundary expression.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    /// A multiset of juxtaposed terms. Empty means the unmarked state.
    Juxt(Vec<Expr>),
    /// The mark `(...)` enclosing its contents.
    Cross(Box<Expr>),
    /// The imaginary mark `[...]`, iterated `power` times (1..=3 when canonical).
    CrossI(Box<Expr>, u8),
    /// An ordered pair `{left,right}` of primary-algebra expressions.
    Pair(Box<Expr>, Box<Expr>),
    /// A variable.
    Var(String),
}

impl Expr {
    /// The empty (unmarked) expression.
    pub fn empty() -> Expr {
        Expr::Juxt(Vec::new())
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Expr::Juxt(cs) if cs.is_empty())
    }

    pub fn var(name: impl Into<String>) -> Expr {
        Expr::Var(name.into())
    }

    pub fn cross(e: Expr) -> Expr {
        Expr::Cross(Box::new(e))
    }

    /// Wraps `e` in `power` imaginary crosses, merging with an outermost
    /// `CrossI` of `e` and reducing the total power mod 4.
    pub fn cross_i(e: Expr, power: u32) -> Expr {
        let add = (power % 4) as u8;
        let (base, old) = match e {
            Expr::CrossI(inner, q) => (*inner, q),
            other => (other, 0),
        };
        match (old + add) % 4 {
            0 => base,
            p => Expr::CrossI(Box::new(base), p),
        }
    }

    pub fn pair(left: Expr, right: Expr) -> Expr {
        Expr::Pair(Box::new(left), Box::new(right))
    }

    /// Builds a canonical juxtaposition from canonical members: flattens
    /// nested juxtapositions, sorts by printed form and collapses singletons.
    pub fn juxt(members: Vec<Expr>) -> Expr {
        let mut flat = Vec::with_capacity(members.len());
        for m in members {
            match m {
                Expr::Juxt(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        if flat.len() == 1 {
            return flat.pop().unwrap();
        }
        flat.sort_by_cached_key(|e| e.to_string());
        Expr::Juxt(flat)
    }

    /// Rebuilds the expression bottom-up through the canonicalizing
    /// constructors. Evaluation is invariant under this normalization.
    pub fn canonical(&self) -> Expr {
        match self {
            Expr::Juxt(cs) => Expr::juxt(cs.iter().map(Expr::canonical).collect()),
            Expr::Cross(e) => Expr::cross(e.canonical()),
            Expr::CrossI(e, p) => Expr::cross_i(e.canonical(), u32::from(*p)),
            Expr::Pair(l, r) => Expr::pair(l.canonical(), r.canonical()),
            Expr::Var(n) => Expr::Var(n.clone()),
        }
    }

    /// The members of this expression seen as a juxtaposition multiset.
    pub fn members(&self) -> &[Expr] {
        match self {
            Expr::Juxt(cs) => cs,
            other => std::slice::from_ref(other),
        }
    }

    /// True when the expression stays inside the primary algebra: no
    /// imaginary crosses and no pairs.
    pub fn is_primary_algebra(&self) -> bool {
        match self {
            Expr::Juxt(cs) => cs.iter().all(Expr::is_primary_algebra),
            Expr::Cross(e) => e.is_primary_algebra(),
            Expr::CrossI(..) | Expr::Pair(..) => false,
            Expr::Var(_) => true,
        }
    }

    /// True when every pair component is a primary-algebra expression.
    pub fn pairs_are_primary(&self) -> bool {
        match self {
            Expr::Juxt(cs) => cs.iter().all(Expr::pairs_are_primary),
            Expr::Cross(e) | Expr::CrossI(e, _) => e.pairs_are_primary(),
            Expr::Pair(l, r) => l.is_primary_algebra() && r.is_primary_algebra(),
            Expr::Var(_) => true,
        }
    }

    /// Visits every variable occurrence; `in_pair` tells whether the
    /// occurrence sits inside a pair component.
    pub fn visit_vars<F: FnMut(&str, bool)>(&self, f: &mut F) {
        fn walk<F: FnMut(&str, bool)>(e: &Expr, in_pair: bool, f: &mut F) {
            match e {
                Expr::Juxt(cs) => cs.iter().for_each(|c| walk(c, in_pair, f)),
                Expr::Cross(x) | Expr::CrossI(x, _) => walk(x, in_pair, f),
                Expr::Pair(l, r) => {
                    walk(l, true, f);
                    walk(r, true, f);
                }
                Expr::Var(n) => f(n, in_pair),
            }
        }
        walk(self, false, f)
    }

    /// All variable names, sorted.
    pub fn var_names(&self) -> Vec<String> {
        let mut names = Vec::new();
        self.visit_vars(&mut |n, _| {
            if !names.iter().any(|m| m == n) {
                names.push(n.to_string());
            }
        });
        names.sort();
        names
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Juxt(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{c}")?;
                }
                Ok(())
            }
            Expr::Cross(e) => write!(f, "({e})"),
            Expr::CrossI(e, p) => {
                for _ in 0..*p {
                    f.write_str("[")?;
                }
                write!(f, "{e}")?;
                for _ in 0..*p {
                    f.write_str("]")?;
                }
                Ok(())
            }
            Expr::Pair(l, r) => write!(f, "{{{l},{r}}}"),
            Expr::Var(n) => f.write_str(n),
        }
    }
}

/// A primary-algebra expression: an [`Expr`] with no imaginary crosses and no
/// pairs. The wrapper is the precondition for the two-valued engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaExpr(Expr);

impl PaExpr {
    pub fn as_expr(&self) -> &Expr {
        &self.0
    }

    pub fn into_expr(self) -> Expr {
        self.0
    }

    /// Wraps without checking; callers must guarantee the invariant.
    pub(crate) fn from_expr_unchecked(e: Expr) -> PaExpr {
        debug_assert!(e.is_primary_algebra());
        PaExpr(e)
    }
}

impl TryFrom<Expr> for PaExpr {
    type Error = EvalError;

    fn try_from(e: Expr) -> Result<PaExpr, EvalError> {
        if e.is_primary_algebra() {
            Ok(PaExpr(e))
        } else {
            Err(EvalError::NotPrimaryAlgebra)
        }
    }
}

impl fmt::Display for PaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A parse failure, with the byte offset of the offending input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    fn new(offset: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            offset,
            message: message.into(),
        }
    }
}

const PAIR_COMPONENT_MSG: &str = "pair components must be primary-algebra expressions";

/// Parses the concrete grammar into a canonical expression.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let members = p.parse_terms()?;
    p.skip_ws();
    if let Some(b) = p.peek() {
        return Err(ParseError::new(
            p.pos,
            format!("unexpected `{}`", char::from(b)),
        ));
    }
    Ok(Expr::juxt(members))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == b => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(ParseError::new(
                self.pos,
                format!("expected `{}`, found `{}`", char::from(b), char::from(c)),
            )),
            None => Err(ParseError::new(
                self.pos,
                format!("expected `{}`, found end of input", char::from(b)),
            )),
        }
    }

    /// Parses terms until a closing delimiter, a comma or end of input.
    fn parse_terms(&mut self) -> Result<Vec<Expr>, ParseError> {
        let mut members = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(b')' | b']' | b'}' | b',') => return Ok(members),
                Some(_) => members.push(self.parse_term()?),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        match self.peek().expect("parse_term called at end of input") {
            b'(' => {
                self.pos += 1;
                let inner = self.parse_terms()?;
                self.expect(b')')?;
                Ok(Expr::cross(Expr::juxt(inner)))
            }
            b'[' => {
                self.pos += 1;
                let inner = self.parse_terms()?;
                self.expect(b']')?;
                let power = self.parse_power()?;
                Ok(Expr::cross_i(Expr::juxt(inner), power))
            }
            b'{' => {
                self.pos += 1;
                let left = Expr::juxt(self.parse_terms()?);
                self.expect(b',')?;
                let right = Expr::juxt(self.parse_terms()?);
                self.expect(b'}')?;
                if !left.is_primary_algebra() || !right.is_primary_algebra() {
                    return Err(ParseError::new(start, PAIR_COMPONENT_MSG));
                }
                Ok(Expr::pair(left, right))
            }
            b @ b'A'..=b'Z' => {
                self.pos += 1;
                let mut name = String::from(char::from(b));
                while let Some(d @ b'0'..=b'9') = self.peek() {
                    name.push(char::from(d));
                    self.pos += 1;
                }
                Ok(Expr::Var(name))
            }
            d @ b'0'..=b'3' => {
                self.pos += 1;
                Ok(ground_pair(d - b'0'))
            }
            b => Err(ParseError::new(
                self.pos,
                format!("unexpected `{}`", char::from(b)),
            )),
        }
    }

    /// Parses an optional `^ INT` suffix after a `[...]` term.
    fn parse_power(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(ParseError::new(self.pos, "expected a power after `^`"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        digits
            .parse::<u32>()
            .map_err(|_| ParseError::new(start, "power too large"))
    }
}

/// The ground pair named by a digit: `0 = {,}`, `1 = {(),}`, `2 = {(),()}`,
/// `3 = {,()}`.
pub fn ground_pair(digit: u8) -> Expr {
    let mark = || Expr::cross(Expr::empty());
    match digit {
        0 => Expr::pair(Expr::empty(), Expr::empty()),
        1 => Expr::pair(mark(), Expr::empty()),
        2 => Expr::pair(mark(), mark()),
        3 => Expr::pair(Expr::empty(), mark()),
        _ => panic!("ground_pair digit out of range: {digit}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Expr {
        parse(text).unwrap()
    }

    #[test]
    fn parses_the_empty_expression() {
        assert_eq!(p(""), Expr::empty());
        assert_eq!(p("   "), Expr::empty());
    }

    #[test]
    fn parses_crosses_and_variables() {
        assert_eq!(p("()"), Expr::cross(Expr::empty()));
        assert_eq!(
            p("(A)"),
            Expr::cross(Expr::Var("A".into())),
        );
        assert_eq!(p("A12"), Expr::Var("A12".into()));
    }

    #[test]
    fn parses_iterated_imaginary_crosses() {
        let e = p("[{(),}]^3");
        assert_eq!(e, Expr::cross_i(ground_pair(1), 3));
        assert_eq!(p("[[X]]"), Expr::cross_i(Expr::var("X"), 2));
    }

    #[test]
    fn power_reduces_mod_four() {
        assert_eq!(p("[X]^4"), Expr::var("X"));
        assert_eq!(p("[X]^5"), Expr::cross_i(Expr::var("X"), 1));
        assert_eq!(p("[X]^0"), Expr::var("X"));
        assert_eq!(p("[[[[X]]]]"), Expr::var("X"));
    }

    #[test]
    fn nested_imaginary_crosses_merge() {
        let raw = Expr::CrossI(Box::new(Expr::CrossI(Box::new(Expr::var("X")), 3)), 1);
        assert_eq!(raw.canonical(), Expr::var("X"));
        let raw = Expr::CrossI(Box::new(Expr::CrossI(Box::new(Expr::var("X")), 2)), 3);
        assert_eq!(raw.canonical(), Expr::cross_i(Expr::var("X"), 1));
    }

    #[test]
    fn digits_abbreviate_ground_pairs() {
        assert_eq!(p("0"), p("{,}"));
        assert_eq!(p("1"), p("{(),}"));
        assert_eq!(p("2"), p("{(),()}"));
        assert_eq!(p("3"), p("{,()}"));
    }

    #[test]
    fn juxtaposition_is_sorted_by_printed_form() {
        let e = Expr::juxt(vec![Expr::var("A"), Expr::cross(Expr::var("B"))]);
        assert_eq!(e.to_string(), "(B) A");
        assert_eq!(p("A (B)"), e);
    }

    #[test]
    fn juxtaposition_keeps_duplicates() {
        let e = p("A A");
        assert_eq!(e, Expr::Juxt(vec![Expr::var("A"), Expr::var("A")]));
    }

    #[test]
    fn singleton_juxtaposition_collapses() {
        let raw = Expr::Juxt(vec![Expr::Juxt(vec![Expr::var("A")])]);
        assert_eq!(raw.canonical(), Expr::var("A"));
    }

    #[test]
    fn nested_juxtapositions_flatten() {
        let raw = Expr::Juxt(vec![
            Expr::Juxt(vec![Expr::var("A"), Expr::var("B")]),
            Expr::var("C"),
        ]);
        assert_eq!(raw.canonical(), p("A B C"));
    }

    #[test]
    fn printer_inverts_parser() {
        for text in [
            "",
            "()",
            "(()) A",
            "[[{(),()}] [[[{(),}]]]]",
            "{((()) ()),()}",
            "(A B) B",
            "[[[[A] [B]]]] C",
            "{A,B} {C,D}",
        ] {
            let e = p(text);
            assert_eq!(p(&e.to_string()), e, "round trip failed for `{text}`");
        }
    }

    #[test]
    fn reports_byte_offsets() {
        let err = parse("(A").unwrap_err();
        assert_eq!(err.offset, 2);
        let err = parse("(A) )").unwrap_err();
        assert_eq!(err.offset, 4);
        let err = parse("A $").unwrap_err();
        assert_eq!(err.offset, 2);
        let err = parse("4").unwrap_err();
        assert_eq!(err.offset, 0);
    }

    #[test]
    fn rejects_non_primary_pair_components() {
        let err = parse("{[],}").unwrap_err();
        assert_eq!(err.message, PAIR_COMPONENT_MSG);
        assert_eq!(err.offset, 0);
        let err = parse("A {(),{,}}").unwrap_err();
        assert_eq!(err.offset, 2);
        let err = parse("{0,}").unwrap_err();
        assert_eq!(err.message, PAIR_COMPONENT_MSG);
    }

    #[test]
    fn pair_components_may_hold_variables() {
        let e = p("{A B,(C)}");
        assert_eq!(
            e,
            Expr::pair(
                Expr::juxt(vec![Expr::var("A"), Expr::var("B")]),
                Expr::cross(Expr::var("C")),
            )
        );
    }

    #[test]
    fn pa_expr_rejects_imaginary_content() {
        assert!(PaExpr::try_from(p("(A) B")).is_ok());
        assert!(PaExpr::try_from(p("[A]")).is_err());
        assert!(PaExpr::try_from(p("{,}")).is_err());
    }

    #[test]
    fn var_visits_distinguish_pair_context() {
        let e = p("A {B,(C)}");
        let mut top = Vec::new();
        let mut inner = Vec::new();
        e.visit_vars(&mut |n, in_pair| {
            if in_pair {
                inner.push(n.to_string());
            } else {
                top.push(n.to_string());
            }
        });
        assert_eq!(top, ["A"]);
        assert_eq!(inner, ["B", "C"]);
    }
}
