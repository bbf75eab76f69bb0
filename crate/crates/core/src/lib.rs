//! Arithmetized first-order syntax next to a small polynomial CAS for an
//! abelian Higgs Lagrangian.
//!
//! - [`syntax`]: formulas over the predicates G, M, D, T and a symbol table.
//! - [`codec`]: prime-power codes for symbols, formulas and derivations.
//!   Derivation codes never leave factored form.
//! - [`cas`]: field expressions, normal forms, and the four-step chain
//!   checked both exactly and against a seeded floating-point oracle.
//! - [`logic`]: finite interpretations, the (in)definability checks and the
//!   two self-reference demos.
//! - [`cli`]: the `gauge-logic` command line.

pub mod cas;
pub mod cli;
pub mod codec;
pub mod logic;
pub mod syntax;
