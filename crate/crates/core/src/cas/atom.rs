use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Named quantities of the abelian Higgs model, with Lorentz indices erased.
///
/// `F` stands for the whole contraction F_{mu nu} F^{mu nu}; `E` and `Ebar`
/// are the phases e^{i theta} and e^{-i theta}; `e` is the gauge coupling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Atom {
    Rho,
    Theta,
    Chi,
    A,
    B,
    F,
    DTheta,
    DChi,
    DRho,
    Coupling,
    Mu,
    Lambda,
    Vev,
    Mass,
    Sqrt2,
    SqrtLambda,
    Phase,
    PhaseBar,
    I,
    Phi,
}

impl Atom {
    pub const ALL: [Atom; 20] = [
        Atom::Rho,
        Atom::Theta,
        Atom::Chi,
        Atom::A,
        Atom::B,
        Atom::F,
        Atom::DTheta,
        Atom::DChi,
        Atom::DRho,
        Atom::Coupling,
        Atom::Mu,
        Atom::Lambda,
        Atom::Vev,
        Atom::Mass,
        Atom::Sqrt2,
        Atom::SqrtLambda,
        Atom::Phase,
        Atom::PhaseBar,
        Atom::I,
        Atom::Phi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Atom::Rho => "rho",
            Atom::Theta => "theta",
            Atom::Chi => "chi",
            Atom::A => "A",
            Atom::B => "B",
            Atom::F => "F",
            Atom::DTheta => "dtheta",
            Atom::DChi => "dchi",
            Atom::DRho => "drho",
            Atom::Coupling => "e",
            Atom::Mu => "mu",
            Atom::Lambda => "lambda",
            Atom::Vev => "v",
            Atom::Mass => "M",
            Atom::Sqrt2 => "sqrt2",
            Atom::SqrtLambda => "sqrtlambda",
            Atom::Phase => "E",
            Atom::PhaseBar => "Ebar",
            Atom::I => "i",
            Atom::Phi => "phi",
        }
    }

    /// Atoms that may carry negative exponents: couplings and the
    /// constants built from them.
    pub fn is_invertible(self) -> bool {
        matches!(
            self,
            Atom::Coupling
                | Atom::Mu
                | Atom::Lambda
                | Atom::SqrtLambda
                | Atom::Sqrt2
                | Atom::Vev
                | Atom::Mass
        )
    }

    /// Spacetime-independent quantities, whose derivative vanishes.
    pub fn is_constant(self) -> bool {
        self.is_invertible() || self == Atom::I
    }

    pub fn is_derivative(self) -> bool {
        matches!(self, Atom::DTheta | Atom::DChi | Atom::DRho)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Atom {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Atom::ALL.into_iter().find(|a| a.name() == s).ok_or(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for atom in Atom::ALL {
            assert_eq!(atom.name().parse::<Atom>(), Ok(atom));
        }
        assert!("phi2".parse::<Atom>().is_err());
    }
}
