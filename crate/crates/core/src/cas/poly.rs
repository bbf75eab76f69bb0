use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::atom::Atom;
use super::expr::{FieldExpr, Node, MAX_EXPONENT};
use super::parse::parse_expr;

/// Gaussian rationals; the imaginary unit lives here rather than in monomials.
pub type Coeff = Complex<BigRational>;

/// Atoms that survive as polynomial variables, in monomial order.
///
/// `lambda` is stored as `sqrtlambda^2`, `Ebar` as `E^-1`, and the exponent
/// of `sqrt2` is kept in {0, 1} with even powers moved into the coefficient.
pub const BASE_ATOMS: [Atom; 16] = [
    Atom::F,
    Atom::A,
    Atom::B,
    Atom::DTheta,
    Atom::DRho,
    Atom::DChi,
    Atom::Rho,
    Atom::Chi,
    Atom::Theta,
    Atom::Phase,
    Atom::Mass,
    Atom::Vev,
    Atom::Coupling,
    Atom::Mu,
    Atom::SqrtLambda,
    Atom::Sqrt2,
];

/// Slots printed before the fields, so couplings read as prefactors.
const PRINT_ORDER: [usize; 16] = [10, 11, 12, 13, 14, 15, 0, 1, 2, 3, 4, 5, 6, 7, 8, 9];

const SQRT2: usize = 15;
const PHASE: usize = 9;

fn slot(atom: Atom) -> Option<usize> {
    BASE_ATOMS.iter().position(|&a| a == atom)
}

/// Exponent vector over [`BASE_ATOMS`].
///
/// Ordered lexicographically along `BASE_ATOMS` with larger exponents
/// first, then by total degree; the constant monomial sorts last.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial([i32; 16]);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    fn single(slot: usize, exponent: i32) -> Monomial {
        let mut m = Monomial::one();
        m.0[slot] = exponent;
        m
    }

    pub fn exponent(&self, atom: Atom) -> i32 {
        slot(atom).map_or(0, |s| self.0[s])
    }

    pub fn degree(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }

    /// Builds a monomial from `(atom, exponent)` pairs over base atoms.
    ///
    /// # Panics
    /// If an atom is not in [`BASE_ATOMS`].
    pub fn from_pairs(pairs: &[(Atom, i32)]) -> Monomial {
        let mut m = Monomial::one();
        for &(atom, k) in pairs {
            m.0[slot(atom).expect("base atom")] += k;
        }
        m
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .0
            .cmp(&self.0)
            .then_with(|| other.degree().cmp(&self.degree()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Which derived quantities are eliminated during normalization.
///
/// Always applied: `phi -> rho*E`, `E*Ebar -> 1`, `i^2 -> -1`,
/// `sqrt2^2 -> 2`, `lambda -> sqrtlambda^2`. Each optional rule replaces a
/// derived atom by atoms strictly earlier in the dependency chain
/// `M -> v -> (mu, sqrtlambda)`, `rho -> (v, chi)`, `B -> (A, dtheta)`,
/// so expansion terminates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RewriteSystem {
    /// `v -> mu * sqrtlambda^-1`
    pub vev: bool,
    /// `M -> v * e`
    pub mass: bool,
    /// `rho -> (v + chi) * sqrt2^-1` together with `drho -> dchi * sqrt2^-1`
    pub rho: bool,
    /// `B -> A - e^-1 * dtheta`
    pub gauge_shift: bool,
}

impl RewriteSystem {
    pub fn full() -> Self {
        RewriteSystem { vev: true, mass: true, rho: true, gauge_shift: true }
    }

    /// Only the unconditional rules.
    pub fn minimal() -> Self {
        RewriteSystem { vev: false, mass: false, rho: false, gauge_shift: false }
    }

    /// The full system minus the rules that eliminate `kept` atoms.
    pub fn keeping(kept: &[Atom]) -> Self {
        let keep = |a: Atom| kept.contains(&a);
        RewriteSystem {
            vev: !keep(Atom::Vev),
            mass: !keep(Atom::Mass),
            rho: !(keep(Atom::Rho) || keep(Atom::DRho)),
            gauge_shift: !keep(Atom::B),
        }
    }
}

/// A polynomial with Gaussian-rational coefficients and no zero terms.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NormalForm {
    terms: BTreeMap<Monomial, Coeff>,
}

fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn real(q: BigRational) -> Coeff {
    Complex::new(q, BigRational::zero())
}

impl NormalForm {
    pub fn zero() -> Self {
        NormalForm::default()
    }

    pub fn constant(c: Coeff) -> Self {
        let mut p = NormalForm::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    fn monomial(m: Monomial) -> Self {
        let mut p = NormalForm::zero();
        p.add_term(m, Complex::one());
        p
    }

    fn atom(slot: usize) -> Self {
        Self::monomial(Monomial::single(slot, 1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Complex::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Coeff) {
        // sqrt2^k = 2^floor(k/2) * sqrt2^(k mod 2)
        let (m, c) = reduce_sqrt2(m, c);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &NormalForm) -> NormalForm {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> NormalForm {
        NormalForm {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &NormalForm) -> NormalForm {
        let mut out = NormalForm::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m = m1.clone();
                for (k, k2) in m.0.iter_mut().zip(m2.0) {
                    *k += k2;
                }
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> NormalForm {
        let mut out = NormalForm::constant(Complex::one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Inverse of a single nonzero term; `None` for anything else.
    pub fn inverse(&self) -> Option<NormalForm> {
        let mut it = self.terms.iter();
        let (m, c) = it.next()?;
        if it.next().is_some() {
            return None;
        }
        let mut inv = m.clone();
        for k in inv.0.iter_mut() {
            *k = -*k;
        }
        let mut out = NormalForm::zero();
        out.add_term(inv, c.inv());
        Some(out)
    }

    /// Complex conjugate: every base atom is real except the phase.
    pub fn conj(&self) -> NormalForm {
        let mut out = NormalForm::zero();
        for (m, c) in &self.terms {
            let mut m = m.clone();
            m.0[PHASE] = -m.0[PHASE];
            out.add_term(m, c.conj());
        }
        out
    }

    /// One printed monomial per entry, in monomial order.
    pub fn lines(&self) -> Vec<String> {
        self.terms.iter().map(|(m, c)| format_term(m, c)).collect()
    }

    /// An expression whose normal form is `self`.
    pub fn to_expr(&self) -> FieldExpr {
        FieldExpr::add(
            self.terms
                .iter()
                .map(|(m, c)| {
                    let mut factors = vec![coeff_expr(c)];
                    for (s, &k) in m.0.iter().enumerate() {
                        push_power(&mut factors, BASE_ATOMS[s], k);
                    }
                    FieldExpr::mul(factors)
                })
                .collect(),
        )
    }
}

fn reduce_sqrt2(mut m: Monomial, mut c: Coeff) -> (Monomial, Coeff) {
    let k = m.0[SQRT2];
    if k != 0 && k != 1 {
        let r = k.rem_euclid(2);
        let half = (k - r) / 2;
        let two = rational(2);
        let scale = if half >= 0 {
            num_traits::pow(two, half as usize)
        } else {
            num_traits::pow(two, (-half) as usize).recip()
        };
        c *= real(scale);
        m.0[SQRT2] = r;
    }
    (m, c)
}

fn coeff_expr(c: &Coeff) -> FieldExpr {
    let im = FieldExpr::mul(vec![FieldExpr::num(c.im.clone()), FieldExpr::atom(Atom::I)]);
    match (c.re.is_zero(), c.im.is_zero()) {
        (_, true) => FieldExpr::num(c.re.clone()),
        (true, false) => im,
        (false, false) => FieldExpr::add(vec![FieldExpr::num(c.re.clone()), im]),
    }
}

fn push_power(factors: &mut Vec<FieldExpr>, atom: Atom, mut k: i32) {
    let atom = if atom == Atom::Phase && k < 0 {
        k = -k;
        Atom::PhaseBar
    } else {
        atom
    };
    while k != 0 {
        let step = k.clamp(-MAX_EXPONENT, MAX_EXPONENT);
        let p = FieldExpr::pow(FieldExpr::atom(atom), step).expect("base atoms with negative exponents are invertible");
        factors.push(p);
        k -= step;
    }
}

fn format_power(name: &str, k: i32) -> String {
    if k == 1 {
        name.to_owned()
    } else {
        format!("{name}^{k}")
    }
}

fn format_term(m: &Monomial, c: &Coeff) -> String {
    let mut atoms = Vec::new();
    for &s in &PRINT_ORDER {
        let k = m.0[s];
        if k == 0 {
            continue;
        }
        match BASE_ATOMS[s] {
            // even powers of sqrtlambda read as powers of lambda
            Atom::SqrtLambda => {
                let r = k.rem_euclid(2);
                let (whole, rest) = if r == 0 {
                    (k / 2, 0)
                } else if k > 0 {
                    ((k - 1) / 2, 1)
                } else {
                    ((k + 1) / 2, -1)
                };
                if whole != 0 {
                    atoms.push(format_power("lambda", whole));
                }
                if rest != 0 {
                    atoms.push(format_power("sqrtlambda", rest));
                }
            }
            Atom::Phase if k < 0 => atoms.push(format_power("Ebar", -k)),
            atom => atoms.push(format_power(atom.name(), k)),
        }
    }
    let coeff = format_coeff(c);
    let mut parts = Vec::new();
    match coeff.as_str() {
        "1" if !atoms.is_empty() => {}
        "-1" if !atoms.is_empty() => {
            atoms[0] = format!("-{}", atoms[0]);
        }
        _ => parts.push(coeff),
    }
    parts.extend(atoms);
    parts.join(" * ")
}

fn format_coeff(c: &Coeff) -> String {
    let im = |q: &BigRational| {
        if q.is_one() {
            "i".to_owned()
        } else if (-q).is_one() {
            "-i".to_owned()
        } else {
            format!("{q}*i")
        }
    };
    match (c.re.is_zero(), c.im.is_zero()) {
        (_, true) => c.re.to_string(),
        (true, false) => im(&c.im),
        (false, false) if c.im.is_negative() => format!("({} - {})", c.re, im(&-c.im.clone())),
        (false, false) => format!("({} + {})", c.re, im(&c.im)),
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        f.write_str(&self.lines().join("\n"))
    }
}

impl Serialize for NormalForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.lines().serialize(s)
    }
}

impl<'de> Deserialize<'de> for NormalForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let lines = Vec::<String>::deserialize(d)?;
        let mut out = NormalForm::zero();
        for line in lines {
            let e = parse_expr(&line).map_err(serde::de::Error::custom)?;
            out = out.add(&normalize_with(&e, &RewriteSystem::minimal()));
        }
        Ok(out)
    }
}

/// Normal form under the full rewrite system.
pub fn normalize(x: &FieldExpr) -> NormalForm {
    normalize_with(x, &RewriteSystem::full())
}

pub fn normalize_with(x: &FieldExpr, rules: &RewriteSystem) -> NormalForm {
    match x.node() {
        Node::Num(q) => NormalForm::constant(real(q.clone())),
        Node::Atom(a) => atom_form(*a, rules),
        Node::Add(ts) => ts
            .iter()
            .fold(NormalForm::zero(), |acc, t| acc.add(&normalize_with(t, rules))),
        Node::Mul(fs) => fs.iter().fold(NormalForm::constant(Complex::one()), |acc, f| {
            acc.mul(&normalize_with(f, rules))
        }),
        Node::Neg(inner) => normalize_with(inner, rules).neg(),
        Node::Pow(base, k) => {
            let b = normalize_with(base, rules);
            if *k >= 0 {
                b.pow(*k as u32)
            } else {
                b.inverse()
                    .expect("negative powers sit on nonzero monomials by construction")
                    .pow(k.unsigned_abs())
            }
        }
        Node::Dagger(inner) => normalize_with(inner, rules).conj(),
        Node::D(inner) => {
            let derived = inner.d_mu().expect("derivative nodes are differentiable by construction");
            normalize_with(&derived, rules)
        }
    }
}

fn atom_form(atom: Atom, rules: &RewriteSystem) -> NormalForm {
    let base = |a: Atom| NormalForm::atom(slot(a).expect("base atom"));
    let inv_sqrt2 = || NormalForm::monomial(Monomial::single(SQRT2, -1));
    match atom {
        Atom::I => NormalForm::constant(Complex::new(BigRational::zero(), BigRational::one())),
        Atom::Lambda => NormalForm::monomial(Monomial::single(slot(Atom::SqrtLambda).unwrap(), 2)),
        Atom::PhaseBar => NormalForm::monomial(Monomial::single(PHASE, -1)),
        Atom::Phi => atom_form(Atom::Rho, rules).mul(&base(Atom::Phase)),
        Atom::Vev if rules.vev => base(Atom::Mu).mul(&NormalForm::monomial(Monomial::from_pairs(&[(
            Atom::SqrtLambda,
            -1,
        )]))),
        Atom::Mass if rules.mass => atom_form(Atom::Vev, rules).mul(&base(Atom::Coupling)),
        Atom::Rho if rules.rho => atom_form(Atom::Vev, rules).add(&base(Atom::Chi)).mul(&inv_sqrt2()),
        Atom::DRho if rules.rho => base(Atom::DChi).mul(&inv_sqrt2()),
        Atom::B if rules.gauge_shift => {
            let shift = NormalForm::monomial(Monomial::from_pairs(&[(Atom::Coupling, -1), (Atom::DTheta, 1)]));
            base(Atom::A).add(&shift.neg())
        }
        other => base(other),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(text: &str) -> NormalForm {
        normalize(&parse_expr(text).unwrap())
    }

    #[test]
    fn unit_rules() {
        assert_eq!(nf("E*Ebar").to_string(), "1");
        assert_eq!(nf("i*i").to_string(), "-1");
        assert_eq!(nf("sqrt2^3").to_string(), "2 * sqrt2");
        assert_eq!(nf("sqrt2^-1").to_string(), "1/2 * sqrt2");
        assert_eq!(nf("sqrtlambda^2 - lambda").to_string(), "0");
    }

    #[test]
    fn modulus_of_the_field() {
        // dagger(phi)*phi = rho^2 = (v + chi)^2 / 2
        let out = nf("dagger(phi)*phi");
        assert_eq!(
            out.lines(),
            ["1/2 * chi^2", "mu * sqrtlambda^-1 * chi", "1/2 * mu^2 * lambda^-1"]
        );
        let kept = normalize_with(&parse_expr("dagger(phi)*phi").unwrap(), &RewriteSystem::keeping(&[Atom::Rho]));
        assert_eq!(kept.to_string(), "rho^2");
    }

    #[test]
    fn potential_around_the_vacuum() {
        let out = nf("mu^2*rho^2 - lambda*rho^4");
        let expected = nf("mu^4/(4*lambda) - mu^2*chi^2 - sqrtlambda*mu*chi^3 - lambda/4*chi^4");
        assert_eq!(out, expected);
        assert_eq!(
            out.lines(),
            ["-1/4 * lambda * chi^4", "-mu * sqrtlambda * chi^3", "-mu^2 * chi^2", "1/4 * mu^4 * lambda^-1"]
        );
    }

    #[test]
    fn complex_coefficients_print_and_reparse() {
        let out = nf("(1 + 2*i)*E*rho - 3/4*i*Ebar^2");
        for line in out.lines() {
            let back = nf(&line);
            assert_eq!(back.len(), 1, "{line}");
        }
        assert_eq!(normalize(&out.to_expr()), out);
        let json = serde_json::to_string(&out).unwrap();
        assert_eq!(serde_json::from_str::<NormalForm>(&json).unwrap(), out);
    }

    #[test]
    fn constant_monomial_sorts_last() {
        let out = nf("1 + chi + F");
        assert_eq!(out.lines(), ["F", "chi", "1"]);
    }
}
