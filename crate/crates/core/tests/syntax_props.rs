mod common;

use gauge_logic::syntax::{
    parse_formula, parse_symbol_names, print_formula, Numeral, SymbolKind, SymbolTable, SyntaxError, Var,
};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn fixed_printing() {
    let table = SymbolTable::new();
    let f = parse_formula("(!G(x, y) -> !M(z))", &table).unwrap();
    assert_eq!(f.symbol_string(), "( ¬ G ( x , y ) → ¬ M ( z ) )");
    assert_eq!(parse_formula(&print_formula(&f), &table).unwrap(), f);
    let numerals = parse_formula("M(0'')", &table).unwrap();
    assert_eq!(numerals.len(), 6);
}

#[test]
fn parse_errors_carry_positions() {
    let table = SymbolTable::new();
    for (text, pos) in [("G(x,", 4), ("(M(x) M(y))", 6), ("Q(x)", 0)] {
        match parse_formula(text, &table) {
            Err(SyntaxError::Parse { pos: p, .. }) => assert_eq!(p, pos, "{text}"),
            Err(SyntaxError::UnknownPredicate(name)) => assert_eq!(name, "Q"),
            other => panic!("{text}: {other:?}"),
        }
    }
}

#[test]
fn registered_predicates_parse() {
    let table = SymbolTable::new();
    table.register("H", SymbolKind::Predicate).unwrap();
    let f = parse_formula("H(x)", &table).unwrap();
    assert_eq!(f.codes(), [37, 7, 15, 9]);
    assert!(matches!(table.register("H", SymbolKind::Predicate), Err(SyntaxError::DuplicateSymbol(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1200))]

    #[test]
    fn print_then_parse(seed in any::<u64>()) {
        let table = SymbolTable::new();
        let f = common::random_formula(&mut ChaCha8Rng::seed_from_u64(seed), &table, 24);
        prop_assert_eq!(&parse_formula(&print_formula(&f), &table).unwrap(), &f);
        let names: Vec<&str> = f.symbols().iter().map(|s| s.name.as_str()).collect();
        prop_assert_eq!(parse_symbol_names(&names, &table).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn substitution_removes_the_variable(seed in any::<u64>(), n in 0u32..6) {
        let table = SymbolTable::new();
        let f = common::random_formula(&mut ChaCha8Rng::seed_from_u64(seed), &table, 16);
        for var in Var::ALL {
            let short = f.substitute(var, &Numeral::abbreviated(BigUint::from(n + 7)), &table);
            if !f.free_vars().contains(&var) {
                prop_assert!(matches!(short, Err(SyntaxError::NoFreeOccurrence(v)) if v == var));
                continue;
            }
            let short = short.unwrap();
            prop_assert!(!short.free_vars().contains(&var));
            let mut rest = f.free_vars();
            rest.remove(&var);
            prop_assert_eq!(short.free_vars(), rest);
            // an abbreviated numeral is one symbol, so only the substituted positions change
            prop_assert_eq!(short.len(), f.len());
            let replaced = f.symbols().iter().zip(short.symbols()).filter(|(a, b)| a != b).count();
            prop_assert!(replaced > 0);
            // successor form spells 0 followed by n marks
            let long = f.substitute(var, &Numeral::successor(BigUint::from(n)), &table).unwrap();
            prop_assert_eq!(long.len(), f.len() + replaced * n as usize);
            prop_assert_eq!(parse_formula(&print_formula(&long), &table).unwrap(), long);
        }
    }
}
