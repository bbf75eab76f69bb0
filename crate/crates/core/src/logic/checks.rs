use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::Serialize;

use super::formulas::{
    build_breaking_formula, build_gauge_formula, close_over_x, instantiate_gauge, ArgumentOrder,
};
use super::interp::{eval, FactBase, Interpretation};
use super::report::{DefinabilityReport, ModelVerdict, TraceStep, Witness};
use super::LogicError;
use crate::cas::DerivationRecord;
use crate::codec::{CodeClass, Codec, CodecError, GoedelNumber, InvalidReason};
use crate::syntax::SymbolTable;

/// Runs the argument that the mass predicate has only the empty model when
/// no derivation with code `j` proves the formula with code `i`.
///
/// Besides the four-step trace, the key semantic fact is checked by
/// evaluation: over the domain `{i, j, k}` with the recorded proof facts, the
/// gauge instance is false once `k` is massive and true when nothing is.
pub fn check_massiveness_indefinable(
    i: &BigUint,
    j: &BigUint,
    k: &BigUint,
    facts: &FactBase,
    table: &SymbolTable,
) -> Result<DefinabilityReport, LogicError> {
    if facts.g_facts.contains(&(i.clone(), j.clone())) {
        return Err(LogicError::PreconditionViolated { i: i.clone(), j: j.clone() });
    }
    let instance = instantiate_gauge(i, j, k, table);
    let domain = [i.clone(), j.clone(), k.clone()];
    let proofs: Vec<(BigUint, BigUint)> = facts
        .g_facts
        .iter()
        .filter(|(a, b)| domain.contains(a) && domain.contains(b))
        .cloned()
        .collect();
    let base = Interpretation::new(domain.clone()).with_binary("G", proofs)?;
    let with_k = eval(&instance, &base.clone().with_unary("M", [k.clone()])?)?;
    let with_none = eval(&instance, &base.with_unary("M", [])?)?;
    debug_assert!(!with_k && with_none, "material implication with a true antecedent");

    let trace = vec![
        TraceStep::new(
            "expressibility",
            "G(i,j) is not among the recorded facts, so !G(#i,#j) is provable",
        ),
        TraceStep::new(
            "modus-ponens",
            "the instance (!G(#i,#j) -> !M(#k)) with !G(#i,#j) yields !M(#k)",
        ),
        TraceStep::new(
            "model-assumption",
            "suppose X models M; the massive Lagrangian with code k satisfies M, so k is in X",
        ),
        TraceStep::new(
            "contradiction",
            format!(
                "!M(#k) puts k outside X; evaluation agrees: the instance is {with_k} when X = {{k}} and {with_none} when X is empty, so X is null"
            ),
        ),
    ];
    Ok(DefinabilityReport {
        verdict: ModelVerdict::NullModel,
        witness: Witness::Contradiction { predicate: "M".into(), element: k.clone() },
        trace,
        bindings: bindings([("i", i), ("j", j), ("k", k)]),
        fixed_point: None,
    })
}

fn bindings<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a BigUint)>) -> BTreeMap<String, GoedelNumber> {
    pairs
        .into_iter()
        .map(|(name, v)| (name.to_owned(), GoedelNumber::Exact(v.clone())))
        .collect()
}

/// [`check_massiveness_definable_with`] in the default argument order.
pub fn check_massiveness_definable(
    record: &DerivationRecord,
    table: &SymbolTable,
) -> Result<DefinabilityReport, LogicError> {
    check_massiveness_definable_with(record, ArgumentOrder::Literal, table)
}

/// Re-verifies the chain, numbers it, and exhibits its code `j` as a member
/// of the mass predicate's model.
///
/// The witness is the factored derivation code; it is checked to classify
/// as a derivation and to decode to the certified steps.
pub fn check_massiveness_definable_with(
    record: &DerivationRecord,
    order: ArgumentOrder,
    table: &SymbolTable,
) -> Result<DefinabilityReport, LogicError> {
    let checked = record.reverify();
    if !checked.is_verified() {
        return Err(LogicError::UnverifiedDerivation);
    }
    let derivation = checked.to_derivation(table)?;
    let codec = Codec::new(table);
    let j = codec.encode_derivation(&derivation);
    match codec.classify(&j) {
        CodeClass::DerivationCode => {}
        CodeClass::Invalid(reason) => return Err(CodecError::InvalidCode(reason).into()),
        _ => return Err(CodecError::InvalidCode(InvalidReason::NestedDerivation).into()),
    }
    let decoded = codec.decode(&j)?.to_derivation(table)?;
    if decoded.steps() != derivation.steps() {
        return Err(LogicError::UnverifiedDerivation);
    }
    let steps = derivation.steps();
    let i = codec.encode_formula(&steps[0]);
    let k = codec.encode_formula(&steps[steps.len() - 1]);
    let labels: Vec<&str> = checked.steps.iter().map(|s| s.label.as_str()).collect();
    let pairs: Vec<String> = checked
        .step_verdicts
        .iter()
        .map(|v| format!("{} -> {}", labels[v.from], labels[v.to]))
        .collect();
    let (instance, target) = match order {
        ArgumentOrder::Literal => ("(D(#i,#k) -> M(#j))", "j"),
        ArgumentOrder::Swapped => ("(D(#i,#j) -> M(#k))", "k"),
    };
    let trace = vec![
        TraceStep::new("certificate", format!("zero residual for {}", pairs.join(", "))),
        TraceStep::new(
            "derivation-code",
            format!(
                "j, the code of the whole chain, is the product of the first {} primes raised to the step codes; it classifies as a derivation code and decodes to the certified steps",
                steps.len()
            ),
        ),
        TraceStep::new(
            "diagonal-relation",
            format!("the chain leads from i = g({}) to k = g({}), so D(#i,#k) holds", labels[0], labels[labels.len() - 1]),
        ),
        TraceStep::new("modus-ponens", format!("the instance {instance} with D(#i,#k) yields M(#{target})")),
        TraceStep::new("model", format!("X = {{{target}}} models M, so the model is not null")),
    ];
    let member = match order {
        ArgumentOrder::Literal => j.clone(),
        ArgumentOrder::Swapped => k.clone(),
    };
    let mut names = BTreeMap::new();
    names.insert("i".to_owned(), i);
    names.insert("j".to_owned(), j);
    names.insert("k".to_owned(), k);
    Ok(DefinabilityReport {
        verdict: ModelVerdict::NonNullModel,
        witness: Witness::Member { predicate: "M".into(), code: member },
        trace,
        bindings: names,
        fixed_point: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonEquivalenceWitness {
    pub interpretation: Interpretation,
    /// Truth of the universal closure of the gauge schema.
    pub gauge_closure: bool,
    /// Truth of the universal closure of the breaking schema.
    pub breaking_closure: bool,
    pub candidates_visited: usize,
}

/// Searches the eight interpretations over the domain `{0}`, varying `G`,
/// then `D`, then `M` fastest, for one where the two closures disagree.
pub fn check_nonequivalence(table: &SymbolTable) -> Result<NonEquivalenceWitness, LogicError> {
    let gauge = close_over_x(&build_gauge_formula(table), table);
    let breaking = close_over_x(&build_breaking_formula(table), table);
    let zero = BigUint::default();
    let pair = || vec![(zero.clone(), zero.clone())];
    for (idx, bits) in (0u8..8).enumerate() {
        let pick_pair = |bit: u8| if bits & bit != 0 { pair() } else { Vec::new() };
        let itp = Interpretation::new([zero.clone()])
            .with_binary("G", pick_pair(4))?
            .with_binary("D", pick_pair(2))?
            .with_unary("M", if bits & 1 != 0 { vec![zero.clone()] } else { Vec::new() })?;
        let (g, b) = (eval(&gauge, &itp)?, eval(&breaking, &itp)?);
        if g != b {
            return Ok(NonEquivalenceWitness {
                interpretation: itp,
                gauge_closure: g,
                breaking_closure: b,
                candidates_visited: idx + 1,
            });
        }
    }
    Err(LogicError::NoCounterexample)
}
