//! The unprovability fixed point and the narrative of why it is undecidable.
use gauge_logic::logic::goedel_sentence_demo;
use gauge_logic::syntax::SymbolTable;

fn main() {
    let table = SymbolTable::new();
    let demo = goedel_sentence_demo(&table).unwrap();
    let fp = &demo.fixed_point;
    println!("schema {}\nm = {}\nsentence {}\nn has {:.0} bits", fp.schema, fp.m, fp.sentence, fp.n.log2());
    for step in &demo.narrative {
        println!("[{:?}] {}: {}", step.status, step.label, step.statement);
    }
}
