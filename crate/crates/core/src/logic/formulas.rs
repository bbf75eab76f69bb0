//! The universally quantified schemas and their numeral instances.

use num_bigint::BigUint;

use crate::syntax::{parse_formula, Formula, Node, Numeral, SymbolTable, Term, Var};

/// No derivation leads to anything massive: `forall y. forall z. (!G(x,y) -> !M(z))`.
pub const GAUGE_SCHEMA: &str = "forall y. forall z. (!G(x,y) -> !M(z))";
/// A derivation makes something massive: `forall y. forall z. (D(x,y) -> M(z))`.
pub const BREAKING_SCHEMA: &str = "forall y. forall z. (D(x,y) -> M(z))";
/// Self-reference through unprovability: `forall y. !G(x,y)`.
pub const UNPROVABILITY_SCHEMA: &str = "forall y. !G(x,y)";
/// Self-reference through truth: `forall y. (D(x,y) -> !T(y))`.
pub const UNTRUTH_SCHEMA: &str = "forall y. (D(x,y) -> !T(y))";

fn schema(text: &str, table: &SymbolTable) -> Formula {
    parse_formula(text, table).expect("schema texts parse")
}

/// The gauge schema, free in `x`.
pub fn build_gauge_formula(table: &SymbolTable) -> Formula {
    schema(GAUGE_SCHEMA, table)
}

/// The symmetry-breaking schema, free in `x`.
pub fn build_breaking_formula(table: &SymbolTable) -> Formula {
    schema(BREAKING_SCHEMA, table)
}

fn abbrev(n: &BigUint) -> Term {
    Term::Abbrev(n.clone())
}

fn closed(tree: Node, table: &SymbolTable) -> Formula {
    Formula::from_tree(tree, table).expect("G, D and M are built-in predicates")
}

/// `(!G(#i,#j) -> !M(#k))`.
pub fn instantiate_gauge(i: &BigUint, j: &BigUint, k: &BigUint, table: &SymbolTable) -> Formula {
    let tree = Node::implies(
        Node::not(Node::pred("G", vec![abbrev(i), abbrev(j)])),
        Node::not(Node::pred("M", vec![abbrev(k)])),
    );
    closed(tree, table)
}

/// Which numeral lands in the mass predicate of the breaking instance.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ArgumentOrder {
    /// `D(#i,#k) -> M(#j)`: the mass predicate applies to the derivation code.
    #[default]
    Literal,
    /// `D(#i,#j) -> M(#k)`: the same positions as the gauge instance.
    Swapped,
}

/// `(D(#i,#k) -> M(#j))` in the default order.
pub fn instantiate_breaking(i: &BigUint, k: &BigUint, j: &BigUint, table: &SymbolTable) -> Formula {
    instantiate_breaking_with(i, k, j, ArgumentOrder::Literal, table)
}

pub fn instantiate_breaking_with(
    i: &BigUint,
    k: &BigUint,
    j: &BigUint,
    order: ArgumentOrder,
    table: &SymbolTable,
) -> Formula {
    let (second, massive) = match order {
        ArgumentOrder::Literal => (k, j),
        ArgumentOrder::Swapped => (j, k),
    };
    let tree = Node::implies(
        Node::pred("D", vec![abbrev(i), abbrev(second)]),
        Node::pred("M", vec![abbrev(massive)]),
    );
    closed(tree, table)
}

/// Universal closure over `x`.
pub fn close_over_x(formula: &Formula, table: &SymbolTable) -> Formula {
    closed(Node::forall(Var::X, formula.tree().clone()), table)
}

/// Replaces `x` by the abbreviated numeral of `n`.
pub fn diagonal_instance(formula: &Formula, n: &BigUint, table: &SymbolTable) -> Formula {
    formula
        .substitute(Var::X, &Numeral::abbreviated(n.clone()), table)
        .expect("schemas are free in x")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{CodeClass, Codec};
    use crate::syntax::print_formula;

    fn n(v: u32) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn schemas_print_canonically() {
        let table = SymbolTable::new();
        let gauge = build_gauge_formula(&table);
        let breaking = build_breaking_formula(&table);
        assert_eq!(print_formula(&gauge), GAUGE_SCHEMA);
        assert_eq!(print_formula(&breaking), BREAKING_SCHEMA);
        assert_eq!(gauge.free_vars().into_iter().collect::<Vec<_>>(), [Var::X]);
        assert_ne!(gauge, breaking);
        let codec = Codec::new(&table);
        let (g1, g2) = (codec.encode_formula(&gauge), codec.encode_formula(&breaking));
        assert_eq!(codec.classify(&g1), CodeClass::FormulaCode);
        assert_ne!(g1, g2);
    }

    #[test]
    fn instances() {
        let table = SymbolTable::new();
        let g = instantiate_gauge(&n(2), &n(4), &n(6), &table);
        assert_eq!(print_formula(&g), "(!G(#2,#4) -> !M(#6))");
        assert!(g.is_closed());
        let b = instantiate_breaking(&n(2), &n(6), &n(4), &table);
        assert_eq!(print_formula(&b), "(D(#2,#6) -> M(#4))");
        let s = instantiate_breaking_with(&n(2), &n(6), &n(4), ArgumentOrder::Swapped, &table);
        assert_eq!(print_formula(&s), "(D(#2,#4) -> M(#6))");
    }

    #[test]
    fn diagonalization() {
        let table = SymbolTable::new();
        let p = parse_formula(UNPROVABILITY_SCHEMA, &table).unwrap();
        assert_eq!(print_formula(&diagonal_instance(&p, &n(9), &table)), "forall y. !G(#9,y)");
    }
}
