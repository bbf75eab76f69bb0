use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::codec::decimal;
use crate::codec::GoedelNumber;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModelVerdict {
    /// The predicate's extension is forced to be empty.
    NullModel,
    /// The predicate has a member.
    NonNullModel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// `element` would have to be both in and out of the extension.
    Contradiction {
        predicate: String,
        #[serde(with = "decimal")]
        element: BigUint,
    },
    /// `code` is in the extension.
    Member { predicate: String, code: GoedelNumber },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    /// The role of the step in the argument, e.g. `modus-ponens`.
    pub label: String,
    pub statement: String,
}

impl TraceStep {
    pub(crate) fn new(label: &str, statement: impl Into<String>) -> Self {
        TraceStep { label: label.to_owned(), statement: statement.into() }
    }
}

/// A schema, its code, the diagonal sentence and that sentence's code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPoint {
    pub schema: String,
    pub m: GoedelNumber,
    pub sentence: String,
    pub n: GoedelNumber,
    /// Whether decoding `n` gives back exactly the substitution instance.
    pub decodes_to_instance: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefinabilityReport {
    pub verdict: ModelVerdict,
    pub witness: Witness,
    pub trace: Vec<TraceStep>,
    /// Values of the names used in the trace statements.
    pub bindings: BTreeMap<String, GoedelNumber>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_point: Option<FixedPoint>,
}

impl fmt::Display for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "schema:   {}", self.schema)?;
        writeln!(f, "m:        {}", self.m)?;
        writeln!(f, "sentence: {}", self.sentence)?;
        writeln!(f, "n:        {}", self.n)?;
        write!(f, "decode(n) is the sentence: {}", self.decodes_to_instance)
    }
}

impl fmt::Display for DefinabilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict: {:?}", self.verdict)?;
        match &self.witness {
            Witness::Contradiction { predicate, element } => {
                writeln!(f, "witness: {element} would be both in and out of the extension of {predicate}")?
            }
            Witness::Member { predicate, code } => writeln!(f, "witness: {code} is in the extension of {predicate}")?,
        }
        if let Some(fp) = &self.fixed_point {
            writeln!(f, "{fp}")?;
        }
        for (name, value) in &self.bindings {
            writeln!(f, "{name} = {value}")?;
        }
        writeln!(f, "trace:")?;
        for (idx, step) in self.trace.iter().enumerate() {
            writeln!(f, "  {}. [{}] {}", idx + 1, step.label, step.statement)?;
        }
        Ok(())
    }
}
