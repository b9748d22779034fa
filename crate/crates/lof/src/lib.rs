//! A toolkit for boundary algebra and its four-valued extensions.
//!
//! The crate covers five layers, one per module:
//!
//! * [`syntax`] — expressions built from the mark `(...)`, the imaginary mark
//!   `[...]`, ordered pairs `{...,...}` and variables, with a parser, printer
//!   and canonical form.
//! * [`pa`] — the two-valued primary arithmetic and algebra: simplification,
//!   exhaustive equivalence, and the embedding of propositional logic.
//! * [`bf`] — the four-valued BF calculus, where the imaginary mark is a
//!   square root of the ordinary mark: three independent evaluators and an
//!   exhaustive equivalence checker.
//! * [`calculi`] — the sibling four-valued calculi (componentwise, waveform,
//!   swap), the bilattice operations on FOUR with their operation tables, the
//!   unary-operation groups, and the width-n rotation calculus.
//! * [`rewrite`] — equational rules, step-by-step demonstrations, a replay
//!   checker and a bounded search, with a JSON interchange format.
//! * [`braid`] — signed permutations representing braid generators, the braid
//!   relations, and quaternion triples among four strands.

pub mod bf;
pub mod braid;
pub mod calculi;
mod error;
pub mod pa;
pub mod rewrite;
pub mod syntax;

pub use error::EvalError;
