use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::atom::Atom;
use super::CasError;

/// Largest exponent magnitude accepted in a power.
pub const MAX_EXPONENT: i32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    /// Non-negative rational constant; negation is always an explicit `Neg`.
    Num(BigRational),
    Atom(Atom),
    Add(Vec<FieldExpr>),
    Mul(Vec<FieldExpr>),
    Neg(Box<FieldExpr>),
    Pow(Box<FieldExpr>, i32),
    /// Unevaluated hermitian conjugate, `dagger(x)`.
    Dagger(Box<FieldExpr>),
    /// Unevaluated derivative, `d(x)`.
    D(Box<FieldExpr>),
}

/// An expression over the atoms of [`Atom`].
///
/// Construction goes through checked builders, so every value satisfies:
/// negative powers only sit on invertible constants, and every `d(..)`
/// can be expanded without a second derivative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldExpr {
    node: Node,
}

impl FieldExpr {
    pub fn node(&self) -> &Node {
        &self.node
    }

    pub fn num(value: BigRational) -> FieldExpr {
        if value.is_negative() {
            FieldExpr::neg(FieldExpr { node: Node::Num(-value) })
        } else {
            FieldExpr { node: Node::Num(value) }
        }
    }

    pub fn int(value: i64) -> FieldExpr {
        Self::num(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn ratio(numer: i64, denom: i64) -> FieldExpr {
        Self::num(BigRational::new(numer.into(), denom.into()))
    }

    pub fn zero() -> FieldExpr {
        Self::int(0)
    }

    pub fn atom(atom: Atom) -> FieldExpr {
        FieldExpr { node: Node::Atom(atom) }
    }

    pub fn add(terms: Vec<FieldExpr>) -> FieldExpr {
        match terms.len() {
            0 => Self::zero(),
            1 => terms.into_iter().next().unwrap(),
            _ => FieldExpr { node: Node::Add(terms) },
        }
    }

    pub fn mul(factors: Vec<FieldExpr>) -> FieldExpr {
        match factors.len() {
            0 => Self::int(1),
            1 => factors.into_iter().next().unwrap(),
            _ => FieldExpr { node: Node::Mul(factors) },
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(x: FieldExpr) -> FieldExpr {
        FieldExpr { node: Node::Neg(Box::new(x)) }
    }

    pub fn difference(lhs: FieldExpr, rhs: FieldExpr) -> FieldExpr {
        Self::add(vec![lhs, Self::neg(rhs)])
    }

    pub fn pow(base: FieldExpr, exponent: i32) -> Result<FieldExpr, CasError> {
        if exponent.abs() > MAX_EXPONENT {
            return Err(CasError::ExponentTooLarge(exponent));
        }
        if exponent < 0 {
            base.check_invertible()?;
        }
        Ok(FieldExpr { node: Node::Pow(Box::new(base), exponent) })
    }

    pub fn dagger_of(x: FieldExpr) -> FieldExpr {
        FieldExpr { node: Node::Dagger(Box::new(x)) }
    }

    pub fn derivative_of(x: FieldExpr) -> Result<FieldExpr, CasError> {
        x.d_mu()?;
        Ok(FieldExpr { node: Node::D(Box::new(x)) })
    }

    pub fn is_zero_literal(&self) -> bool {
        matches!(&self.node, Node::Num(q) if q.is_zero())
    }

    /// Top-level summands (the expression itself if it is not a sum).
    pub fn summands(&self) -> Vec<FieldExpr> {
        match &self.node {
            Node::Add(terms) => terms.clone(),
            _ => vec![self.clone()],
        }
    }

    fn check_invertible(&self) -> Result<(), CasError> {
        match &self.node {
            Node::Num(q) if !q.is_zero() => Ok(()),
            Node::Num(_) => Err(CasError::DivisionByZero),
            Node::Atom(a) if a.is_invertible() => Ok(()),
            Node::Mul(fs) => fs.iter().try_for_each(FieldExpr::check_invertible),
            Node::Neg(x) | Node::Pow(x, _) => x.check_invertible(),
            _ => Err(CasError::NotInvertible(self.to_string())),
        }
    }

    /// Hermitian conjugate pushed through the tree: `i -> -i`, `E <-> Ebar`,
    /// real atoms fixed.
    pub fn dagger(&self) -> FieldExpr {
        match &self.node {
            Node::Num(_) => self.clone(),
            Node::Atom(Atom::I) => FieldExpr::neg(FieldExpr::atom(Atom::I)),
            Node::Atom(Atom::Phase) => FieldExpr::atom(Atom::PhaseBar),
            Node::Atom(Atom::PhaseBar) => FieldExpr::atom(Atom::Phase),
            Node::Atom(Atom::Phi) => FieldExpr::dagger_of(self.clone()),
            Node::Atom(_) => self.clone(),
            Node::Add(ts) => FieldExpr::add(ts.iter().map(FieldExpr::dagger).collect()),
            Node::Mul(fs) => FieldExpr::mul(fs.iter().map(FieldExpr::dagger).collect()),
            Node::Neg(x) => FieldExpr::neg(x.dagger()),
            Node::Pow(b, k) => FieldExpr {
                node: Node::Pow(Box::new(b.dagger()), *k),
            },
            Node::Dagger(x) => (**x).clone(),
            Node::D(x) => FieldExpr {
                node: Node::D(Box::new(x.dagger())),
            },
        }
    }

    /// Formal derivative by linearity, the Leibniz rule and the chain rule.
    ///
    /// `d(E) = i E dtheta`, `d(Ebar) = -i Ebar dtheta`, constants have zero
    /// derivative. Gauge atoms and derivative atoms cannot be differentiated.
    pub fn d_mu(&self) -> Result<FieldExpr, CasError> {
        Ok(self.derive()?.unwrap_or_else(FieldExpr::zero))
    }

    /// `None` stands for an identically zero derivative.
    fn derive(&self) -> Result<Option<FieldExpr>, CasError> {
        let out = match &self.node {
            Node::Num(_) => None,
            Node::Atom(atom) => match atom {
                Atom::Rho => Some(FieldExpr::atom(Atom::DRho)),
                Atom::Chi => Some(FieldExpr::atom(Atom::DChi)),
                Atom::Theta => Some(FieldExpr::atom(Atom::DTheta)),
                Atom::Phase => Some(FieldExpr::mul(vec![
                    FieldExpr::atom(Atom::I),
                    FieldExpr::atom(Atom::Phase),
                    FieldExpr::atom(Atom::DTheta),
                ])),
                Atom::PhaseBar => Some(FieldExpr::neg(FieldExpr::mul(vec![
                    FieldExpr::atom(Atom::I),
                    FieldExpr::atom(Atom::PhaseBar),
                    FieldExpr::atom(Atom::DTheta),
                ]))),
                Atom::Phi => FieldExpr::mul(vec![
                    FieldExpr::atom(Atom::Rho),
                    FieldExpr::atom(Atom::Phase),
                ])
                .derive()?,
                a if a.is_constant() => None,
                a if a.is_derivative() => return Err(CasError::SecondDerivative),
                a => return Err(CasError::UnsupportedDerivative(*a)),
            },
            Node::Add(ts) => {
                let mut parts = Vec::new();
                for t in ts {
                    if let Some(dt) = t.derive()? {
                        parts.push(dt);
                    }
                }
                (!parts.is_empty()).then(|| FieldExpr::add(parts))
            }
            Node::Mul(fs) => {
                let mut parts = Vec::new();
                for (idx, f) in fs.iter().enumerate() {
                    if let Some(df) = f.derive()? {
                        let mut factors = fs.clone();
                        factors[idx] = df;
                        parts.push(FieldExpr::mul(factors));
                    }
                }
                (!parts.is_empty()).then(|| FieldExpr::add(parts))
            }
            Node::Neg(x) => x.derive()?.map(FieldExpr::neg),
            Node::Pow(b, k) => match (*k, b.derive()?) {
                (0, _) | (_, None) => None,
                (1, Some(db)) => Some(db),
                (k, Some(db)) => {
                    let lowered = if k - 1 == 1 {
                        (**b).clone()
                    } else {
                        FieldExpr::pow((**b).clone(), k - 1)?
                    };
                    let coeff = FieldExpr::int(k as i64);
                    Some(FieldExpr::mul(vec![coeff, lowered, db]))
                }
            },
            Node::Dagger(x) => x.derive()?.map(FieldExpr::dagger_of),
            Node::D(_) => return Err(CasError::SecondDerivative),
        };
        Ok(out)
    }

    fn precedence(&self) -> u8 {
        match &self.node {
            Node::Add(_) => 1,
            Node::Mul(_) => 2,
            Node::Neg(_) => 3,
            Node::Pow(..) => 4,
            Node::Num(q) if !q.is_integer() => 2,
            _ => 5,
        }
    }

    fn fmt_wrapped(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for FieldExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.node {
            Node::Num(q) => write!(f, "{q}"),
            Node::Atom(a) => write!(f, "{a}"),
            Node::Add(ts) => {
                for (idx, t) in ts.iter().enumerate() {
                    match (&t.node, idx) {
                        (_, 0) => t.fmt_wrapped(f, 2)?,
                        (Node::Neg(inner), _) => {
                            f.write_str(" - ")?;
                            inner.fmt_wrapped(f, 2)?;
                        }
                        _ => {
                            f.write_str(" + ")?;
                            t.fmt_wrapped(f, 2)?;
                        }
                    }
                }
                Ok(())
            }
            Node::Mul(fs) => {
                for (idx, x) in fs.iter().enumerate() {
                    if idx > 0 {
                        f.write_str("*")?;
                    }
                    // rationals print as `p/q` and parse back as one literal
                    match &x.node {
                        Node::Num(_) => write!(f, "{x}")?,
                        _ => x.fmt_wrapped(f, 3)?,
                    }
                }
                Ok(())
            }
            Node::Neg(x) => {
                f.write_str("-")?;
                match &x.node {
                    Node::Num(_) => write!(f, "{x}"),
                    _ => x.fmt_wrapped(f, 3),
                }
            }
            Node::Pow(b, k) => {
                b.fmt_wrapped(f, 5)?;
                write!(f, "^{k}")
            }
            Node::Dagger(x) => write!(f, "dagger({x})"),
            Node::D(x) => write!(f, "d({x})"),
        }
    }
}

impl From<Atom> for FieldExpr {
    fn from(atom: Atom) -> Self {
        FieldExpr::atom(atom)
    }
}
