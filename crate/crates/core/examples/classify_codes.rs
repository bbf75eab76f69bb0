//! Sorts a handful of numbers into symbol, formula, derivation and invalid codes.
use gauge_logic::codec::{Codec, GoedelNumber};
use gauge_logic::syntax::{parse_formula, Derivation, SymbolTable};

fn main() {
    let table = SymbolTable::new();
    let codec = Codec::new(&table);
    for n in [5u64, 6, 10, 18, 20_662_426_080] {
        println!("{n:>12}  {}", codec.classify(&GoedelNumber::from(n)));
    }
    let steps = ["M(0)", "(M(0) -> T(0))", "T(0)"].map(|s| parse_formula(s, &table).unwrap());
    let code = codec.encode_derivation(&Derivation::new(steps.to_vec()).unwrap());
    // far too large to materialize; it stays factored
    println!("a three-step derivation: {}\n  {code}", codec.classify(&code));
}
