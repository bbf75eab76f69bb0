//! Verifies the four-step Lagrangian chain symbolically and cross-checks it numerically.
use gauge_logic::cas::oracle::max_gap;
use gauge_logic::cas::verify_higgs_chain;

fn main() {
    let record = verify_higgs_chain();
    for step in &record.steps {
        println!("{}: {}", step.label, step.expr);
    }
    for v in &record.step_verdicts {
        let (from, to) = (&record.steps[v.from], &record.steps[v.to]);
        let gap = max_gap(&from.expr, &to.expr, 7, 20).unwrap();
        let status = if v.verdict.is_verified() { "verified" } else { "MISMATCH" };
        println!("{} -> {}: {status}, numeric gap {gap:.1e}", from.label, to.label);
    }
}
