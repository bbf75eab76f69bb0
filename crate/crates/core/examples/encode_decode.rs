//! Numbers a formula, reads it back, and shows the same code in factored form.
use gauge_logic::codec::{Codec, DEFAULT_PRIME_INDEX_CEILING};
use gauge_logic::syntax::{parse_formula, SymbolTable};

fn main() {
    let table = SymbolTable::new();
    let codec = Codec::new(&table);
    let formula = parse_formula("forall y. !G(x, y)", &table).unwrap();
    let code = codec.encode_formula(&formula);
    println!("{formula}  ->  {code}");
    println!("factored: {}", code.to_factored(DEFAULT_PRIME_INDEX_CEILING).unwrap());
    let back = codec.decode(&code).unwrap().to_formula(&table).unwrap();
    println!("decoded:  {}", back.symbol_string());
}
