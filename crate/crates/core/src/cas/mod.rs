//! Symbolic algebra for the scalar electrodynamics Lagrangians of the
//! abelian Higgs model.
//!
//! Expressions are trees ([`FieldExpr`]) that are expanded into exact
//! polynomials ([`NormalForm`]) after eliminating derived quantities with a
//! [`RewriteSystem`]. Two expressions are equal iff their difference
//! normalizes to the zero polynomial; [`numeric_eval`] is an independent
//! floating-point check of that decision.

pub mod atom;
pub mod expr;
pub mod higgs;
pub mod lexer;
pub mod numeric;
pub mod oracle;
pub mod parse;
pub mod poly;

use thiserror::Error;

pub use atom::Atom;
pub use expr::{FieldExpr, Node};
pub use higgs::{verify_higgs_chain, DerivationRecord, Step, StepVerdict};
pub use numeric::{numeric_eval, Assignment};
pub use parse::parse_expr;
pub use poly::{normalize, normalize_with, Monomial, NormalForm, RewriteSystem};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CasError {
    #[error("parse error at {pos}: expected {expected}, found {found}")]
    Parse {
        pos: usize,
        expected: String,
        found: String,
    },
    #[error("exponent {0} is out of range")]
    ExponentTooLarge(i32),
    #[error("`{0}` has no inverse; negative powers apply to couplings only")]
    NotInvertible(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("nested derivative")]
    SecondDerivative,
    #[error("cannot differentiate `{0}`")]
    UnsupportedDerivative(Atom),
    #[error("no value assigned to `{0}`")]
    Unassigned(&'static str),
    #[error("bad assignment: {0}")]
    Assignment(String),
}

/// Outcome of comparing two expressions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    /// Carries the nonzero normal form of `lhs - rhs`.
    Mismatch(NormalForm),
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::Verified)
    }
}

/// Decides `lhs == rhs` under the full rewrite system.
pub fn verify_step(lhs: &FieldExpr, rhs: &FieldExpr) -> Verdict {
    let residual = normalize(&FieldExpr::difference(lhs.clone(), rhs.clone()));
    if residual.is_zero() {
        Verdict::Verified
    } else {
        Verdict::Mismatch(residual)
    }
}
