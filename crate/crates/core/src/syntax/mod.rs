//! First-order alphabet, formulas and derivations.

mod derivation;
mod formula;
mod parse;
mod symbols;

use num_bigint::BigUint;
use thiserror::Error;

pub use derivation::{Derivation, DerivationKind, VerificationCertificate};
pub use formula::{Formula, Node, Numeral, NumeralMode, Term, Var, MAX_SUCCESSOR_TOKENS};
pub use parse::{parse_formula, parse_symbol_names};
pub use symbols::{canonical_name, Symbol, SymbolEntry, SymbolKind, SymbolTable, BUILTIN};

/// Canonical text of a formula; [`parse_formula`] reads it back.
pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}

#[derive(Debug, Error)]
pub enum SyntaxError {
    #[error("symbol `{0}` is already registered")]
    DuplicateSymbol(String),
    #[error("`{0}` is not a valid symbol name")]
    InvalidSymbolName(String),
    #[error("parse error at {pos}: expected one of {expected:?}, found `{found}`")]
    Parse {
        pos: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("predicate `{0}` applied to no arguments")]
    EmptyArguments(String),
    #[error("empty bracketed expression")]
    EmptyOpaque,
    #[error("variable `{0}` does not occur free")]
    NoFreeOccurrence(Var),
    #[error("numeral {0} is too large for successor form")]
    NumeralTooLarge(BigUint),
    #[error("a derivation needs at least one formula")]
    EmptyDerivation,
    #[error("certificate does not cover the derivation's steps")]
    CertificateMismatch,
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<SyntaxError>,
    },
}
