mod common;

use std::collections::BTreeMap;

use gauge_logic::cas::higgs::{Step, H1, SIGN_FLIPPED_H1};
use gauge_logic::cas::{parse_expr, verify_higgs_chain, DerivationRecord};
use gauge_logic::logic::{
    build_gauge_formula, check_massiveness_definable_with, check_massiveness_indefinable, eval, goedel_sentence_demo,
    instantiate_breaking, instantiate_breaking_with, instantiate_gauge, tarski_sentence_demo, ArgumentOrder,
    FactBase, Interpretation, LogicError, ModelVerdict, StepStatus, Witness,
};
use gauge_logic::syntax::{parse_formula, Formula, Node, SymbolTable, Term, Var};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Formulas over the unary predicates M and T whose constants lie in {0, 1}.
fn unary_node(rng: &mut impl Rng, depth: u32) -> Node {
    if depth == 0 || rng.gen_bool(0.3) {
        let term = match rng.gen_range(0..4) {
            0 => Term::Zero,
            1 => Term::Succ(Box::new(Term::Zero)),
            _ => Term::Var(*Var::ALL.choose(rng).unwrap()),
        };
        return Node::pred(if rng.gen_bool(0.5) { "M" } else { "T" }, vec![term]);
    }
    match rng.gen_range(0..3) {
        0 => Node::not(unary_node(rng, depth - 1)),
        1 => Node::implies(unary_node(rng, depth - 1), unary_node(rng, depth - 1)),
        _ => Node::forall(*Var::ALL.choose(rng).unwrap(), unary_node(rng, depth - 1)),
    }
}

fn closed(mut node: Node) -> Node {
    for var in node.free_vars() {
        node = Node::forall(var, node);
    }
    node
}

/// Truth-table semantics over the domain {0, 1}; each predicate is a two-bit mask.
fn oracle(node: &Node, masks: &BTreeMap<&str, u8>, env: &mut BTreeMap<Var, u8>) -> bool {
    match node {
        Node::Not(b) => !oracle(b, masks, env),
        Node::Implies(a, b) => !oracle(a, masks, env) || oracle(b, masks, env),
        Node::Forall(v, b) => {
            let saved = env.get(v).copied();
            let all = (0..2).all(|value| {
                env.insert(*v, value);
                oracle(b, masks, env)
            });
            match saved {
                Some(s) => env.insert(*v, s),
                None => env.remove(v),
            };
            all
        }
        Node::Pred(name, args) => {
            let value = match &args[0] {
                Term::Var(v) => env[v],
                Term::Zero => 0,
                Term::Succ(_) => 1,
                Term::Abbrev(_) => unreachable!(),
            };
            masks[name.as_str()] & (1 << value) != 0
        }
        Node::Opaque(_) => unreachable!(),
    }
}

fn members(mask: u8) -> Vec<BigUint> {
    (0..2u32).filter(|b| mask & (1 << b) != 0).map(BigUint::from).collect()
}

fn nat(n: u64) -> BigUint {
    BigUint::from(n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn eval_matches_truth_tables(seed in any::<u64>()) {
        let table = SymbolTable::new();
        let node = closed(unary_node(&mut ChaCha8Rng::seed_from_u64(seed), 4));
        let formula = Formula::from_tree(node.clone(), &table).unwrap();
        for m in 0..4u8 {
            for t in 0..4u8 {
                let itp = Interpretation::new([nat(0), nat(1)])
                    .with_unary("M", members(m)).unwrap()
                    .with_unary("T", members(t)).unwrap();
                let masks = BTreeMap::from([("M", m), ("T", t)]);
                prop_assert_eq!(eval(&formula, &itp).unwrap(), oracle(&node, &masks, &mut BTreeMap::new()));
            }
        }
    }

    #[test]
    fn indefinability_for_any_k(i in 1u64.., j in 1u64.., k in 1u64..) {
        let table = SymbolTable::new();
        let (i, j, k) = (nat(i), nat(j), nat(k));
        let report = check_massiveness_indefinable(&i, &j, &k, &FactBase::default(), &table).unwrap();
        prop_assert_eq!(report.verdict, ModelVerdict::NullModel);
        prop_assert_eq!(report.trace.len(), 4);
        let hit = matches!(&report.witness, Witness::Contradiction { element, .. } if *element == k);
        prop_assert!(hit, "witness is not the contradiction on k");
        prop_assert_eq!(report.bindings["k"].as_exact(), Some(&k));

        let facts = FactBase { g_facts: [(i.clone(), j.clone())].into(), d_facts: Default::default() };
        let refused = check_massiveness_indefinable(&i, &j, &k, &facts, &table);
        let violated = matches!(refused, Err(LogicError::PreconditionViolated { .. }));
        prop_assert!(violated, "recorded proof was not refused");
    }
}

#[test]
fn instances_print_as_expected() {
    let table = SymbolTable::new();
    let (i, j, k) = (nat(2), nat(4), nat(6));
    assert_eq!(instantiate_gauge(&i, &j, &k, &table).to_string(), "(!G(#2,#4) -> !M(#6))");
    assert_eq!(instantiate_breaking(&i, &k, &j, &table).to_string(), "(D(#2,#6) -> M(#4))");
    assert_eq!(
        instantiate_breaking_with(&i, &k, &j, ArgumentOrder::Swapped, &table).to_string(),
        "(D(#2,#4) -> M(#6))"
    );
    assert!(!build_gauge_formula(&table).is_closed());
}

#[test]
fn gauge_instance_is_material_implication() {
    let table = SymbolTable::new();
    let (i, j, k) = (nat(3), nat(5), nat(7));
    let instance = instantiate_gauge(&i, &j, &k, &table);
    let domain = [i.clone(), j.clone(), k.clone()];
    for proved in [false, true] {
        for massive in [false, true] {
            let itp = Interpretation::new(domain.clone())
                .with_binary("G", proved.then(|| (i.clone(), j.clone())))
                .unwrap()
                .with_unary("M", massive.then(|| k.clone()))
                .unwrap();
            assert_eq!(eval(&instance, &itp).unwrap(), proved || !massive);
        }
    }
}

#[test]
fn eval_errors() {
    let table = SymbolTable::new();
    let itp = Interpretation::new([nat(0)]).with_unary("M", []).unwrap();
    let open = parse_formula("M(x)", &table).unwrap();
    assert!(matches!(eval(&open, &itp), Err(LogicError::FreeVariable(Var::X))));
    let unknown = parse_formula("T(0)", &table).unwrap();
    assert!(matches!(eval(&unknown, &itp), Err(LogicError::UnknownPredicate(_))));
    let opaque = parse_formula("[rho^2]", &table).unwrap();
    assert!(matches!(eval(&opaque, &itp), Err(LogicError::OpaqueFormula)));
}

#[test]
fn definability_in_both_orders() {
    let table = SymbolTable::new();
    let record = verify_higgs_chain();
    for order in [ArgumentOrder::Literal, ArgumentOrder::Swapped] {
        let report = check_massiveness_definable_with(&record, order, &table).unwrap();
        assert_eq!(report.verdict, ModelVerdict::NonNullModel);
        assert_eq!(report.trace.len(), 5);
        assert!(matches!(report.witness, Witness::Member { .. }));
    }
}

#[test]
fn unverified_chain_is_refused() {
    let table = SymbolTable::new();
    let record = DerivationRecord::verify(vec![
        Step::new("H1", parse_expr(H1).unwrap()),
        Step::new("flipped", parse_expr(SIGN_FLIPPED_H1).unwrap()),
    ]);
    assert!(!record.is_verified());
    let refused = check_massiveness_definable_with(&record, ArgumentOrder::Literal, &table);
    assert!(matches!(refused, Err(LogicError::UnverifiedDerivation)));
}

#[test]
fn fact_base_json() {
    let facts = FactBase::from_json(r#"{"g_facts":[[1,"2"]]}"#).unwrap();
    assert!(facts.g_facts.contains(&(nat(1), nat(2))));
    assert!(facts.d_facts.is_empty());
    assert_eq!(serde_json::to_string(&facts).unwrap(), r#"{"g_facts":[["1","2"]],"d_facts":[]}"#);
    assert!(matches!(FactBase::from_json("{"), Err(LogicError::Facts(_))));
}

#[test]
fn self_reference_demos() {
    let table = SymbolTable::new();
    let goedel = goedel_sentence_demo(&table).unwrap();
    assert!(goedel.fixed_point.decodes_to_instance);
    assert_eq!(goedel.narrative.len(), 9);
    let unverified = goedel.narrative.iter().filter(|s| s.status == StepStatus::AssumptionNotVerified).count();
    // consistency, omega-consistency and both uses of expressibility
    assert_eq!(unverified, 4);
    let tarski = tarski_sentence_demo(&table).unwrap();
    assert_eq!(tarski.verdict, ModelVerdict::NullModel);
    assert_eq!(tarski.trace.len(), 4);
    let fp = tarski.fixed_point.unwrap();
    assert!(fp.decodes_to_instance);
    assert!(matches!(tarski.witness, Witness::Contradiction { element, .. } if Some(&element) == fp.n.as_exact()));
}
