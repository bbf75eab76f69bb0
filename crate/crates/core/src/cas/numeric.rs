//! Floating-point evaluation, used as an oracle independent of the
//! polynomial normal form.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::atom::Atom;
use super::expr::{FieldExpr, Node};
use super::CasError;

/// Quantities a caller assigns; every other atom is computed from them.
pub const INDEPENDENT: [&str; 9] = ["A", "dtheta", "dchi", "chi", "theta", "e", "mu", "lambda", "F"];

/// Real values for the independent atoms.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Assignment {
    values: BTreeMap<&'static str, f64>,
}

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn set(&mut self, name: &str, value: f64) -> Result<(), CasError> {
        let key = INDEPENDENT
            .iter()
            .find(|&&k| k == name)
            .ok_or_else(|| CasError::Assignment(format!("`{name}` is not an independent quantity")))?;
        if !value.is_finite() {
            return Err(CasError::Assignment(format!("`{name}` must be finite")));
        }
        self.values.insert(key, value);
        Ok(())
    }

    pub fn with(mut self, name: &str, value: f64) -> Result<Self, CasError> {
        self.set(name, value)?;
        Ok(self)
    }

    pub fn get(&self, name: &'static str) -> Result<f64, CasError> {
        self.values.get(name).copied().ok_or(CasError::Unassigned(name))
    }
}

impl FromStr for Assignment {
    type Err = CasError;

    /// Reads `name=value` pairs separated by commas.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Assignment::new();
        for pair in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, value) = pair
                .split_once('=')
                .ok_or_else(|| CasError::Assignment(format!("expected name=value, found `{pair}`")))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| CasError::Assignment(format!("`{}` is not a number", value.trim())))?;
            out.set(name.trim(), value)?;
        }
        Ok(out)
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// Evaluates in complex arithmetic; derived atoms come from their defining
/// relations (`v = mu/sqrt(lambda)`, `rho = (v + chi)/sqrt(2)`, ...).
pub fn numeric_eval(x: &FieldExpr, a: &Assignment) -> Result<Complex64, CasError> {
    for name in ["e", "lambda"] {
        if a.values.get(name) == Some(&0.0) {
            return Err(CasError::DivisionByZero);
        }
    }
    eval(x, a)
}

fn eval(x: &FieldExpr, a: &Assignment) -> Result<Complex64, CasError> {
    Ok(match x.node() {
        Node::Num(q) => Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0),
        Node::Atom(atom) => atom_value(*atom, a)?,
        Node::Add(ts) => ts.iter().map(|t| eval(t, a)).sum::<Result<Complex64, _>>()?,
        Node::Mul(fs) => fs.iter().map(|f| eval(f, a)).product::<Result<Complex64, _>>()?,
        Node::Neg(inner) => -eval(inner, a)?,
        Node::Pow(base, k) => {
            let b = eval(base, a)?;
            if *k < 0 && b == Complex64::new(0.0, 0.0) {
                return Err(CasError::DivisionByZero);
            }
            b.powi(*k)
        }
        Node::Dagger(inner) => eval(inner, a)?.conj(),
        Node::D(inner) => eval(&inner.d_mu()?, a)?,
    })
}

fn sqrt_lambda(a: &Assignment) -> Result<f64, CasError> {
    let lambda = a.get("lambda")?;
    if lambda < 0.0 {
        return Err(CasError::Assignment("lambda must be positive".into()));
    }
    Ok(lambda.sqrt())
}

fn real(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

fn atom_value(atom: Atom, a: &Assignment) -> Result<Complex64, CasError> {
    let vev = || Ok::<f64, CasError>(a.get("mu")? / sqrt_lambda(a)?);
    Ok(match atom {
        Atom::A | Atom::DTheta | Atom::DChi | Atom::Chi | Atom::Theta | Atom::Coupling | Atom::Mu | Atom::Lambda | Atom::F => {
            real(a.get(atom.name())?)
        }
        Atom::I => Complex64::i(),
        Atom::Sqrt2 => real(2f64.sqrt()),
        Atom::SqrtLambda => real(sqrt_lambda(a)?),
        Atom::Vev => real(vev()?),
        Atom::Mass => real(vev()? * a.get("e")?),
        Atom::Rho => real((vev()? + a.get("chi")?) / 2f64.sqrt()),
        Atom::DRho => real(a.get("dchi")? / 2f64.sqrt()),
        Atom::B => real(a.get("A")? - a.get("dtheta")? / a.get("e")?),
        Atom::Phase => Complex64::from_polar(1.0, a.get("theta")?),
        Atom::PhaseBar => Complex64::from_polar(1.0, -a.get("theta")?),
        Atom::Phi => atom_value(Atom::Rho, a)? * atom_value(Atom::Phase, a)?,
    })
}

/// `|x - y| / max(1, |x|, |y|)`.
pub fn relative_gap(x: Complex64, y: Complex64) -> f64 {
    (x - y).norm() / 1f64.max(x.norm()).max(y.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cas::parse_expr;

    fn eval_text(text: &str, a: &Assignment) -> Complex64 {
        numeric_eval(&parse_expr(text).unwrap(), a).unwrap()
    }

    #[test]
    fn unit_phase() {
        let a: Assignment = "theta=1.1".parse().unwrap();
        assert!(relative_gap(eval_text("E*Ebar", &a), real(1.0)) < 1e-15);
    }

    #[test]
    fn potential_at_the_vacuum() {
        let a: Assignment = "chi=0,mu=1.3,lambda=0.8".parse().unwrap();
        let got = eval_text("mu^2*rho^2 - lambda*rho^4", &a);
        let expected = 1.3f64.powi(4) / (4.0 * 0.8);
        assert!(relative_gap(got, real(expected)) < 1e-12, "{got}");
    }

    #[test]
    fn errors() {
        let a: Assignment = "e=0,A=1,dtheta=1".parse().unwrap();
        assert_eq!(numeric_eval(&parse_expr("B").unwrap(), &a), Err(CasError::DivisionByZero));
        let b = Assignment::new();
        assert_eq!(numeric_eval(&parse_expr("chi").unwrap(), &b), Err(CasError::Unassigned("chi")));
        assert!("rho=1".parse::<Assignment>().is_err());
        assert!("chi".parse::<Assignment>().is_err());
    }
}
