use serde::{Deserialize, Serialize};

use super::formula::Formula;
use super::parse::parse_formula;
use super::symbols::SymbolTable;
use super::SyntaxError;

/// Evidence that every adjacent pair of a derivation was checked equal by
/// the field-algebra engine.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VerificationCertificate {
    /// Step index pairs whose residual normalized to zero.
    pub checked_pairs: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DerivationKind {
    /// Adjacency is taken on trust (e.g. a derivation read from a file).
    OpaqueJustified,
    CasVerified(VerificationCertificate),
}

/// A non-empty finite sequence of formulas.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Derivation {
    steps: Vec<Formula>,
    kind: DerivationKind,
}

impl Derivation {
    pub fn new(steps: Vec<Formula>) -> Result<Self, SyntaxError> {
        if steps.is_empty() {
            return Err(SyntaxError::EmptyDerivation);
        }
        Ok(Derivation {
            steps,
            kind: DerivationKind::OpaqueJustified,
        })
    }

    pub fn verified(
        steps: Vec<Formula>,
        certificate: VerificationCertificate,
    ) -> Result<Self, SyntaxError> {
        let mut d = Self::new(steps)?;
        let n = d.steps.len();
        if certificate.checked_pairs.iter().any(|&(a, b)| a >= n || b >= n) {
            return Err(SyntaxError::CertificateMismatch);
        }
        // every adjacent pair must be covered
        for idx in 1..n {
            if !certificate.checked_pairs.contains(&(idx - 1, idx)) {
                return Err(SyntaxError::CertificateMismatch);
            }
        }
        d.kind = DerivationKind::CasVerified(certificate);
        Ok(d)
    }

    pub fn steps(&self) -> &[Formula] {
        &self.steps
    }

    pub fn kind(&self) -> &DerivationKind {
        &self.kind
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Reads one formula per line; blank lines and lines starting with `#`
    /// are skipped.
    pub fn parse(text: &str, table: &SymbolTable) -> Result<Self, SyntaxError> {
        let mut steps = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let formula = parse_formula(line, table).map_err(|e| SyntaxError::AtLine {
                line: lineno + 1,
                source: Box::new(e),
            })?;
            steps.push(formula);
        }
        Self::new(steps)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for step in &self.steps {
            out.push_str(&step.to_string());
            out.push('\n');
        }
        out
    }
}
