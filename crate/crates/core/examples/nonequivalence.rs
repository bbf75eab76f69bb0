//! Finds a one-element interpretation separating the gauge and breaking closures.
use gauge_logic::logic::check_nonequivalence;
use gauge_logic::syntax::SymbolTable;

fn main() {
    let table = SymbolTable::new();
    let w = check_nonequivalence(&table).unwrap();
    println!("{}", serde_json::to_string_pretty(&w.interpretation).unwrap());
    println!(
        "gauge closure {}, breaking closure {}, after {} candidates",
        w.gauge_closure, w.breaking_closure, w.candidates_visited
    );
}
