//! Runs the null-model argument for the mass predicate on small codes.
use gauge_logic::logic::{check_massiveness_indefinable, FactBase};
use gauge_logic::syntax::SymbolTable;
use num_bigint::BigUint;

fn main() {
    let table = SymbolTable::new();
    let [i, j, k] = [2u32, 4, 6].map(BigUint::from);
    let report = check_massiveness_indefinable(&i, &j, &k, &FactBase::default(), &table).unwrap();
    println!("{report}");

    // a recorded proof of i by j removes the premise
    let facts = FactBase::from_json(r#"{"g_facts":[["2","4"]]}"#).unwrap();
    let refused = check_massiveness_indefinable(&i, &j, &k, &facts, &table);
    println!("with G(2,4) recorded: {}", refused.unwrap_err());
}
