//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use gauge_logic::cas::{Atom, FieldExpr};
use gauge_logic::syntax::{Formula, Node, SymbolTable, Term, Var};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::Rng;

const VARS: [Var; 3] = [Var::X, Var::Y, Var::Z];

pub fn random_term(rng: &mut impl Rng) -> Term {
    match rng.gen_range(0..4) {
        0 | 1 => Term::Var(*VARS.choose(rng).unwrap()),
        2 => {
            let mut t = Term::Zero;
            for _ in 0..rng.gen_range(0..3) {
                t = Term::Succ(Box::new(t));
            }
            t
        }
        _ => Term::Abbrev(BigUint::from(rng.gen_range(0u32..500))),
    }
}

pub fn random_node(rng: &mut impl Rng, depth: u32) -> Node {
    let leaf = depth == 0 || rng.gen_bool(0.35);
    if leaf {
        return match rng.gen_range(0..4) {
            0 => Node::pred("G", vec![random_term(rng), random_term(rng)]),
            1 => Node::pred("D", vec![random_term(rng), random_term(rng)]),
            2 => Node::pred("M", vec![random_term(rng)]),
            _ => Node::pred("T", vec![random_term(rng)]),
        };
    }
    match rng.gen_range(0..3) {
        0 => Node::not(random_node(rng, depth - 1)),
        1 => Node::implies(random_node(rng, depth - 1), random_node(rng, depth - 1)),
        _ => Node::forall(*VARS.choose(rng).unwrap(), random_node(rng, depth - 1)),
    }
}

/// A well-formed formula with at most `max_len` symbols.
pub fn random_formula(rng: &mut impl Rng, table: &SymbolTable, max_len: usize) -> Formula {
    loop {
        let f = Formula::from_tree(random_node(rng, 3), table).expect("built-in predicates");
        if f.len() <= max_len {
            return f;
        }
    }
}

/// Atoms that can be differentiated.
pub const SMOOTH_ATOMS: [Atom; 12] = [
    Atom::Rho,
    Atom::Chi,
    Atom::Theta,
    Atom::Phase,
    Atom::PhaseBar,
    Atom::Phi,
    Atom::Coupling,
    Atom::Mu,
    Atom::Lambda,
    Atom::Vev,
    Atom::Sqrt2,
    Atom::I,
];

/// Atoms that may not appear under a derivative.
pub const ROUGH_ATOMS: [Atom; 7] = [Atom::A, Atom::B, Atom::F, Atom::DChi, Atom::DRho, Atom::DTheta, Atom::Mass];

const INVERTIBLE: [Atom; 7] = [
    Atom::Coupling,
    Atom::Mu,
    Atom::Lambda,
    Atom::SqrtLambda,
    Atom::Vev,
    Atom::Mass,
    Atom::Sqrt2,
];

/// Random expression; `smooth` restricts to differentiable atoms and
/// leaves out nested derivatives.
pub fn random_expr(rng: &mut impl Rng, depth: u32, smooth: bool) -> FieldExpr {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..6) {
            0 => FieldExpr::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3)),
            1 if !smooth => FieldExpr::atom(*ROUGH_ATOMS.choose(rng).unwrap()),
            2 => FieldExpr::pow(FieldExpr::atom(*INVERTIBLE.choose(rng).unwrap()), -rng.gen_range(1..=2)).unwrap(),
            _ => FieldExpr::atom(*SMOOTH_ATOMS.choose(rng).unwrap()),
        };
    }
    let sub = |rng: &mut _| random_expr(rng, depth - 1, smooth);
    match rng.gen_range(0..7) {
        0 | 1 => {
            let n = rng.gen_range(2..=3);
            FieldExpr::add((0..n).map(|_| sub(rng)).collect())
        }
        2 | 3 => {
            let n = rng.gen_range(2..=3);
            FieldExpr::mul((0..n).map(|_| sub(rng)).collect())
        }
        4 => FieldExpr::neg(sub(rng)),
        5 => FieldExpr::pow(sub(rng), rng.gen_range(0..=3)).unwrap(),
        _ => {
            let inner = sub(rng);
            if !smooth && rng.gen_bool(0.5) {
                FieldExpr::derivative_of(inner.clone()).unwrap_or(inner)
            } else {
                FieldExpr::dagger_of(inner)
            }
        }
    }
}
