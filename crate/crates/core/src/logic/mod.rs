//! Finite-model semantics for the gauge and symmetry-breaking schemas, and
//! the definability arguments run as machine checks.
//!
//! Expressibility is not proof search: which arithmetic facts hold is
//! supplied as a [`FactBase`], and the arguments consult it.

mod checks;
mod demos;
mod formulas;
mod interp;
mod report;

use num_bigint::BigUint;
use thiserror::Error;

use crate::codec::CodecError;
use crate::syntax::{SyntaxError, Var};

pub use checks::{
    check_massiveness_definable, check_massiveness_definable_with, check_massiveness_indefinable,
    check_nonequivalence, NonEquivalenceWitness,
};
pub use demos::{goedel_sentence_demo, tarski_sentence_demo, GoedelDemoReport, NarrativeStep, StepStatus};
pub use formulas::{
    build_breaking_formula, build_gauge_formula, close_over_x, diagonal_instance, instantiate_breaking,
    instantiate_breaking_with, instantiate_gauge, ArgumentOrder, BREAKING_SCHEMA, GAUGE_SCHEMA,
    UNPROVABILITY_SCHEMA, UNTRUTH_SCHEMA,
};
pub use interp::{eval, FactBase, Interpretation};
pub use report::{DefinabilityReport, FixedPoint, ModelVerdict, TraceStep, Witness};

#[derive(Debug, Error)]
pub enum LogicError {
    #[error("predicate `{0}` has no extension")]
    UnknownPredicate(String),
    #[error("variable `{}` is free", .0.name())]
    FreeVariable(Var),
    #[error("bracketed formulas have no truth value")]
    OpaqueFormula,
    #[error("extension of `{0}` mixes arities")]
    ArityMismatch(String),
    #[error("{0} is not in the domain")]
    OutsideDomain(BigUint),
    #[error("the fact base records G({i},{j}), so the argument does not apply")]
    PreconditionViolated { i: BigUint, j: BigUint },
    #[error("the derivation record does not verify")]
    UnverifiedDerivation,
    #[error("no interpretation distinguishes the two closures")]
    NoCounterexample,
    #[error("bad fact base: {0}")]
    Facts(String),
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}
