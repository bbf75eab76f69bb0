//! The four Lagrangians of the abelian Higgs mechanism and their checked
//! chain of equalities.

use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::expr::{FieldExpr, Node};
use super::lexer::tokenize;
use super::parse::parse_expr;
use super::poly::NormalForm;
use super::{verify_step, Verdict};
use crate::syntax::{Derivation, Formula, Node as FormulaNode, SymbolTable, SyntaxError, VerificationCertificate};

/// Covariant derivative of the scalar field.
pub const COVARIANT_DERIVATIVE: &str = "d(phi) - i*e*A*phi";
/// Its conjugate, acting on `dagger(phi)`.
pub const CONJUGATE_COVARIANT_DERIVATIVE: &str = "d(dagger(phi)) + i*e*A*dagger(phi)";

/// Complex scalar field minimally coupled to the gauge field.
pub const H1: &str = "-1/4*F + (d(dagger(phi)) + i*e*A*dagger(phi))*(d(phi) - i*e*A*phi) \
                      + mu^2*dagger(phi)*phi - lambda*(dagger(phi)*phi)^2";
/// Polar decomposition `phi = rho*E`.
pub const H2: &str = "-1/4*F + rho^2*(dtheta - e*A)^2 + drho^2 + mu^2*rho^2 - lambda*rho^4";
/// Shifted gauge field and the radial fluctuation around the vacuum.
pub const H3: &str = "-1/4*F + 1/2*M^2*B^2 + e^2*v*chi*B^2 + 1/2*e^2*chi^2*B^2 + 1/2*dchi^2 \
                      + mu^2*rho^2 - lambda*rho^4";
/// Potential expanded in the fluctuation; the gauge boson carries `1/2*M^2*B^2`.
pub const H4: &str = "-1/4*F + 1/2*M^2*B^2 + e^2*v*chi*B^2 + 1/2*e^2*chi^2*B^2 + 1/2*dchi^2 \
                      + mu^4/(4*lambda) - lambda/4*chi^4 - sqrtlambda*mu*chi^3 - mu^2*chi^2";

/// The same Lagrangian as [`H1`] with the opposite sign convention for the
/// potential; kept as a formula for numbering, never as a chain step.
pub const SIGN_FLIPPED_H1: &str = "-1/4*F + (d(dagger(phi)) + i*e*A*dagger(phi))*(d(phi) - i*e*A*phi) \
                                   - mu^2*(dagger(phi)*phi) + lambda*(dagger(phi)*phi)^2";

pub const CHAIN: [(&str, &str); 4] = [("H1", H1), ("H2", H2), ("H3", H3), ("H4", H4)];

/// Parses the four chain texts.
pub fn chain_exprs() -> Vec<(String, FieldExpr)> {
    CHAIN
        .iter()
        .map(|(label, text)| ((*label).to_owned(), parse_expr(text).expect("chain texts parse")))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub label: String,
    pub expr: FieldExpr,
    /// Lexer tokens of the printed expression; the symbols of the exported formula.
    pub tokens: Vec<String>,
}

impl Step {
    pub fn new(label: impl Into<String>, expr: FieldExpr) -> Self {
        let tokens = tokenize(&expr.to_string())
            .expect("printed expressions tokenize")
            .into_iter()
            .map(|t| t.text)
            .collect();
        Step { label: label.into(), expr, tokens }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepVerdict {
    pub from: usize,
    pub to: usize,
    pub verdict: Verdict,
}

/// A chain of expressions with one verdict per adjacent pair plus the
/// first-to-last pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationRecord {
    pub steps: Vec<Step>,
    pub step_verdicts: Vec<StepVerdict>,
}

impl DerivationRecord {
    /// Checks the pairs concurrently; each check is independent.
    pub fn verify(steps: Vec<Step>) -> DerivationRecord {
        let mut pairs: Vec<(usize, usize)> = (1..steps.len()).map(|i| (i - 1, i)).collect();
        if steps.len() > 2 {
            pairs.push((0, steps.len() - 1));
        }
        let step_verdicts = std::thread::scope(|scope| {
            let handles: Vec<_> = pairs
                .iter()
                .map(|&(from, to)| {
                    let (lhs, rhs) = (&steps[from].expr, &steps[to].expr);
                    scope.spawn(move || StepVerdict { from, to, verdict: verify_step(lhs, rhs) })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("step check panicked")).collect()
        });
        DerivationRecord { steps, step_verdicts }
    }

    /// Recomputes every verdict from the steps alone.
    pub fn reverify(&self) -> DerivationRecord {
        DerivationRecord::verify(self.steps.clone())
    }

    pub fn is_verified(&self) -> bool {
        !self.steps.is_empty() && self.step_verdicts.iter().all(|v| v.verdict.is_verified())
    }

    pub fn certificate(&self) -> Option<VerificationCertificate> {
        self.is_verified().then(|| VerificationCertificate {
            checked_pairs: self.step_verdicts.iter().map(|v| (v.from, v.to)).collect(),
        })
    }

    /// Each step as a bracketed formula of its printed tokens.
    pub fn to_derivation(&self, table: &SymbolTable) -> Result<Derivation, SyntaxError> {
        let certificate = self.certificate().ok_or(SyntaxError::CertificateMismatch)?;
        let formulas = self
            .steps
            .iter()
            .map(|s| Formula::from_tree(FormulaNode::Opaque(s.tokens.clone()), table))
            .collect::<Result<Vec<_>, _>>()?;
        Derivation::verified(formulas, certificate)
    }
}

/// Builds and checks `H1 -> H2 -> H3 -> H4`, plus `H1 -> H4` directly.
pub fn verify_higgs_chain() -> DerivationRecord {
    let steps = chain_exprs().into_iter().map(|(label, expr)| Step::new(label, expr)).collect();
    DerivationRecord::verify(steps)
}

/// Multiplies one top-level summand by `factor`; `None` if out of range.
pub fn perturb_summand(expr: &FieldExpr, index: usize, factor: BigRational) -> Option<FieldExpr> {
    let mut terms = expr.summands();
    let target = terms.get_mut(index)?;
    *target = match target.node() {
        Node::Neg(inner) => FieldExpr::neg(FieldExpr::mul(vec![FieldExpr::num(factor), (**inner).clone()])),
        _ => FieldExpr::mul(vec![FieldExpr::num(factor), target.clone()]),
    };
    Some(FieldExpr::add(terms))
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
enum VerdictRepr {
    Verified,
    Mismatch { residual: NormalForm },
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Verdict::Verified => VerdictRepr::Verified,
            Verdict::Mismatch(residual) => VerdictRepr::Mismatch { residual: residual.clone() },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Verdict {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(match VerdictRepr::deserialize(d)? {
            VerdictRepr::Verified => Verdict::Verified,
            VerdictRepr::Mismatch { residual } => Verdict::Mismatch(residual),
        })
    }
}

#[derive(Serialize, Deserialize)]
struct StepRepr {
    label: String,
    expr: String,
    tokens: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct StepVerdictRepr {
    from: usize,
    to: usize,
    #[serde(flatten)]
    verdict: Verdict,
}

#[derive(Serialize, Deserialize)]
struct RecordRepr {
    steps: Vec<StepRepr>,
    step_verdicts: Vec<StepVerdictRepr>,
    overall: String,
}

impl Serialize for DerivationRecord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RecordRepr {
            steps: self
                .steps
                .iter()
                .map(|st| StepRepr { label: st.label.clone(), expr: st.expr.to_string(), tokens: st.tokens.clone() })
                .collect(),
            step_verdicts: self
                .step_verdicts
                .iter()
                .map(|v| StepVerdictRepr { from: v.from, to: v.to, verdict: v.verdict.clone() })
                .collect(),
            overall: if self.is_verified() { "verified" } else { "mismatch" }.into(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DerivationRecord {
    /// Token lists are rebuilt from the expressions; stored verdicts are
    /// kept as read, so callers that rely on them should [`reverify`](DerivationRecord::reverify).
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = RecordRepr::deserialize(d)?;
        let steps = repr
            .steps
            .into_iter()
            .map(|st| {
                parse_expr(&st.expr)
                    .map(|e| Step::new(st.label, e))
                    .map_err(serde::de::Error::custom)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let step_verdicts = repr
            .step_verdicts
            .into_iter()
            .map(|v| {
                if v.from >= steps.len() || v.to >= steps.len() {
                    Err(serde::de::Error::custom("verdict refers to a missing step"))
                } else {
                    Ok(StepVerdict { from: v.from, to: v.to, verdict: v.verdict })
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DerivationRecord { steps, step_verdicts })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cas::atom::Atom;
    use crate::cas::poly::{normalize, normalize_with, Monomial, RewriteSystem};

    fn expr(text: &str) -> FieldExpr {
        parse_expr(text).unwrap()
    }

    #[test]
    fn chain_verifies() {
        let record = verify_higgs_chain();
        assert_eq!(record.step_verdicts.len(), 4);
        for v in &record.step_verdicts {
            assert_eq!(v.verdict, Verdict::Verified, "{} -> {}", v.from, v.to);
        }
        assert!(record.is_verified());
    }

    #[test]
    fn conjugate_covariant_derivative_is_the_dagger() {
        let d = expr(COVARIANT_DERIVATIVE);
        let written = expr(CONJUGATE_COVARIANT_DERIVATIVE);
        assert_eq!(verify_step(&written, &FieldExpr::dagger_of(d.clone())), Verdict::Verified);
        assert_eq!(verify_step(&written, &d.dagger()), Verdict::Verified);
    }

    #[test]
    fn kinetic_term_in_polar_form() {
        let keep_rho = RewriteSystem::keeping(&[Atom::Rho]);
        let lhs = FieldExpr::mul(vec![expr(CONJUGATE_COVARIANT_DERIVATIVE), expr(COVARIANT_DERIVATIVE)]);
        let rhs = expr("drho^2 + rho^2*(dtheta - e*A)^2");
        assert_eq!(normalize_with(&lhs, &keep_rho), normalize_with(&rhs, &keep_rho));
    }

    #[test]
    fn mass_term_before_elimination() {
        let nf = normalize_with(&expr(H4), &RewriteSystem::keeping(&[Atom::Mass, Atom::B]));
        let m2b2 = Monomial::from_pairs(&[(Atom::Mass, 2), (Atom::B, 2)]);
        assert_eq!(nf.coefficient(&m2b2).to_string(), "1/2+0i");
    }

    #[test]
    fn residual_of_a_wrong_kinetic_coefficient() {
        let wrong = expr("-1/4*F + rho^2*(dtheta - e*A)^2 + 1/4*dchi^2 + mu^2*rho^2 - lambda*rho^4");
        match verify_step(&expr(H1), &wrong) {
            Verdict::Mismatch(residual) => assert_eq!(residual.lines(), ["1/4 * dchi^2"]),
            Verdict::Verified => panic!("expected a mismatch"),
        }
    }

    #[test]
    fn sign_flipped_potential_differs() {
        assert!(!verify_step(&expr(H1), &expr(SIGN_FLIPPED_H1)).is_verified());
    }

    #[test]
    fn exported_derivation() {
        let table = SymbolTable::new();
        let record = verify_higgs_chain();
        let d = record.to_derivation(&table).unwrap();
        assert_eq!(d.len(), 4);
        assert_eq!(table.lookup("lambda").map(|s| s.code % 2), Some(1));
    }

    #[test]
    fn record_json_round_trip() {
        let record = verify_higgs_chain();
        let json = serde_json::to_string(&record).unwrap();
        let back: DerivationRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, record);
        assert!(json.contains(r#""overall":"verified""#));
    }

    #[test]
    fn perturbation_changes_the_residual() {
        let h3 = expr(H3);
        let bumped = perturb_summand(&h3, 1, BigRational::new(2.into(), 1.into())).unwrap();
        assert!(!normalize(&FieldExpr::difference(h3, bumped)).is_zero());
    }
}
