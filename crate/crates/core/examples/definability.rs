//! Numbers the verified Lagrangian chain and exhibits its code as a massive object.
use gauge_logic::cas::verify_higgs_chain;
use gauge_logic::codec::GoedelNumber;
use gauge_logic::logic::{check_massiveness_definable_with, ArgumentOrder, Witness};
use gauge_logic::syntax::SymbolTable;

fn main() {
    let table = SymbolTable::new();
    let record = verify_higgs_chain();
    for order in [ArgumentOrder::Literal, ArgumentOrder::Swapped] {
        let report = check_massiveness_definable_with(&record, order, &table).unwrap();
        println!("{order:?}: {:?}", report.verdict);
        if let Witness::Member { code: GoedelNumber::Factored(factors), .. } = &report.witness {
            println!("  witness is a product of {} prime powers", factors.len());
        }
    }
    println!("\n{}", check_massiveness_definable_with(&record, ArgumentOrder::Literal, &table).unwrap());
}
