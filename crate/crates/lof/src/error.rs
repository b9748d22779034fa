use thiserror::Error;

/// Errors raised while evaluating or exhaustively checking expressions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("variable `{0}` is used both at top level and inside a pair component")]
    MixedVariableUse(String),
    #[error("too many variables for an exhaustive check: {count} exceeds the limit of {limit}")]
    TooManyVariables { count: usize, limit: usize },
    #[error("not a primary-algebra expression: contains an imaginary mark or a pair")]
    NotPrimaryAlgebra,
    #[error("{construct} is not part of the {calculus} calculus")]
    ForeignConstruct {
        construct: &'static str,
        calculus: &'static str,
    },
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
}
