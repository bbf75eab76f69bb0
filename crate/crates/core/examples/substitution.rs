//! Builds the gauge and breaking schemas and substitutes numerals for `x`.
use gauge_logic::logic::{build_breaking_formula, build_gauge_formula, diagonal_instance, instantiate_gauge};
use gauge_logic::syntax::{Numeral, SymbolTable, Var};
use num_bigint::BigUint;

fn main() {
    let table = SymbolTable::new();
    let gauge = build_gauge_formula(&table);
    let breaking = build_breaking_formula(&table);
    println!("gauge:    {gauge}   free {:?}", gauge.free_vars());
    println!("breaking: {breaking}");
    let two = Numeral::successor(BigUint::from(2u32));
    println!("x := 0'':  {}", gauge.substitute(Var::X, &two, &table).unwrap());
    println!("x := #7:   {}", diagonal_instance(&gauge, &BigUint::from(7u32), &table));
    let (i, j, k) = (BigUint::from(2u32), BigUint::from(4u32), BigUint::from(6u32));
    println!("instance:  {}", instantiate_gauge(&i, &j, &k, &table));
}
