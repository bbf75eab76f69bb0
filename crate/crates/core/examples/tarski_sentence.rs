//! The untruth fixed point drives the truth predicate to an empty model.
use gauge_logic::logic::tarski_sentence_demo;
use gauge_logic::syntax::SymbolTable;

fn main() {
    let table = SymbolTable::new();
    println!("{}", tarski_sentence_demo(&table).unwrap());
}
