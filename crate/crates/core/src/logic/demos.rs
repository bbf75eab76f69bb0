use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::formulas::{diagonal_instance, UNPROVABILITY_SCHEMA, UNTRUTH_SCHEMA};
use super::interp::{eval, Interpretation};
use super::report::{DefinabilityReport, FixedPoint, ModelVerdict, TraceStep, Witness};
use super::LogicError;
use crate::codec::{Codec, GoedelNumber, DEFAULT_MATERIALIZE_BITS};
use crate::syntax::{parse_formula, print_formula, Formula, SymbolTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepStatus {
    /// Computed and checked by this program.
    Checked,
    /// Supposed for the sake of contradiction.
    Hypothesis,
    /// Follows from earlier steps.
    Derived,
    /// A property of the theory that is taken on trust.
    AssumptionNotVerified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NarrativeStep {
    pub label: String,
    pub statement: String,
    pub status: StepStatus,
}

fn step(label: &str, status: StepStatus, statement: &str) -> NarrativeStep {
    NarrativeStep { label: label.to_owned(), statement: statement.to_owned(), status }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoedelDemoReport {
    pub fixed_point: FixedPoint,
    /// Pairs `(m, n)` recorded for the diagonal relation.
    pub d_facts: Vec<(GoedelNumber, GoedelNumber)>,
    pub narrative: Vec<NarrativeStep>,
}

/// Builds the schema, numbers it, substitutes its own code for `x`, numbers
/// the result and checks that decoding gives the instance back.
fn fixed_point(schema_text: &str, table: &SymbolTable) -> Result<(FixedPoint, Formula, BigUint, BigUint), LogicError> {
    let codec = Codec::new(table);
    let schema = parse_formula(schema_text, table)?;
    let m = codec.encode_formula(&schema).to_exact(DEFAULT_MATERIALIZE_BITS)?;
    let sentence = diagonal_instance(&schema, &m, table);
    let n_code = codec.encode_formula(&sentence);
    let decoded = codec.decode(&n_code)?.to_formula(table)?;
    let n = n_code.to_exact(DEFAULT_MATERIALIZE_BITS)?;
    let record = FixedPoint {
        schema: print_formula(&schema),
        m: GoedelNumber::Exact(m.clone()),
        sentence: print_formula(&sentence),
        n: GoedelNumber::Exact(n.clone()),
        decodes_to_instance: decoded == sentence,
    };
    Ok((record, sentence, m, n))
}

/// The self-referential sentence `forall y. !G(#m,y)` and the two halves of
/// the undecidability sketch, with the properties of the theory that the
/// argument leans on marked as unverified.
pub fn goedel_sentence_demo(table: &SymbolTable) -> Result<GoedelDemoReport, LogicError> {
    use StepStatus::*;
    let (fixed_point, _, m, n) = fixed_point(UNPROVABILITY_SCHEMA, table)?;
    let narrative = vec![
        step("fixed-point", Checked, "S is the schema with x replaced by #m, where m is the schema's own code; n = g(S) and decode(n) = S"),
        step("hypothesis", Hypothesis, "S is provable, with a proof whose code is j"),
        step("expressibility", AssumptionNotVerified, "G(m,j) then holds arithmetically, so G(#m,#j) is provable"),
        step("instance", Derived, "S specializes to !G(#m,#j); both are provable, so S is not provable"),
        step("hypothesis", Hypothesis, "!S is provable"),
        step("consistency", AssumptionNotVerified, "exactly one of a sentence and its negation is provable (a definition that bundles completeness with consistency); !S is, so S is not, and no j codes a proof of S"),
        step("expressibility", AssumptionNotVerified, "so !G(#m,#j) is provable for every numeral j"),
        step("omega-consistency", AssumptionNotVerified, "from every instance !G(#m,#j) pass to forall y. !G(#m,y), which is S; S is provable, a contradiction"),
        step("conclusion", Derived, "neither S nor !S is provable, relative to the unverified assumptions above"),
    ];
    Ok(GoedelDemoReport {
        fixed_point,
        d_facts: vec![(GoedelNumber::Exact(m), GoedelNumber::Exact(n))],
        narrative,
    })
}

/// The sentence `forall y. (D(#m,y) -> !T(y))` and the argument that the
/// truth predicate has only the empty model, in the same four-step shape as
/// [`check_massiveness_indefinable`](super::check_massiveness_indefinable).
pub fn tarski_sentence_demo(table: &SymbolTable) -> Result<DefinabilityReport, LogicError> {
    let (fixed_point, sentence, m, lg) = fixed_point(UNTRUTH_SCHEMA, table)?;
    let base = Interpretation::new([m.clone(), lg.clone()]).with_binary("D", [(m.clone(), lg.clone())])?;
    let with_lg = eval(&sentence, &base.clone().with_unary("T", [lg.clone()])?)?;
    let with_none = eval(&sentence, &base.with_unary("T", [])?)?;
    let trace = vec![
        TraceStep::new("diagonal-relation", "d(m,Lg) holds with Lg = g(B(#m)), so D(#m,#Lg) is provable"),
        TraceStep::new("modus-ponens", "B(#m) at y = #Lg gives (D(#m,#Lg) -> !T(#Lg)), which yields !T(#Lg)"),
        TraceStep::new("model-assumption", "suppose X models T; B(#m) is presupposed true, so Lg is in X"),
        TraceStep::new(
            "contradiction",
            format!(
                "!T(#Lg) puts Lg outside X; evaluation agrees: B(#m) is {with_lg} when X = {{Lg}} and {with_none} when X is empty, so X is null"
            ),
        ),
    ];
    let mut bindings = BTreeMap::new();
    bindings.insert("m".to_owned(), GoedelNumber::Exact(m));
    bindings.insert("Lg".to_owned(), GoedelNumber::Exact(lg.clone()));
    Ok(DefinabilityReport {
        verdict: ModelVerdict::NullModel,
        witness: Witness::Contradiction { predicate: "T".into(), element: lg },
        trace,
        bindings,
        fixed_point: Some(fixed_point),
    })
}
