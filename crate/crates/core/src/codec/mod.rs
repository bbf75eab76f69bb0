//! Gödel numbering of symbols, formulas and derivations.
//!
//! A symbol's number is its odd code in the [`SymbolTable`]. A symbol
//! string e1 e2 ... en is numbered q1^g(e1) q2^g(e2) ... qn^g(en) where qi
//! is the i-th prime, and a derivation u1 ... um is numbered the same way
//! with the formula numbers g(ui) as exponents. Decoding walks the primes
//! in order, so any valid code has its prime indices packed at 1..n.

mod number;
pub mod primes;

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

pub use number::{decimal, GoedelNumber};
pub use primes::{nth_prime, prime_index};

use crate::syntax::{parse_symbol_names, Derivation, Formula, Symbol, SymbolTable, SyntaxError};

/// Formula numbers up to this many bits are kept exact.
pub const DEFAULT_EXACT_BITS: u64 = 4096;
/// Trial division never looks past this prime index.
pub const DEFAULT_PRIME_INDEX_CEILING: usize = 10_000;
/// Hard limit on materializing a number on request.
pub const DEFAULT_MATERIALIZE_BITS: u64 = 1 << 22;

#[derive(Debug, Error)]
pub enum CodecError {
    #[error("invalid code: {0}")]
    InvalidCode(InvalidReason),
    #[error("{0} has no prime factorization")]
    NotFactorable(BigUint),
    #[error("needs primes beyond index {ceiling}")]
    TooLong { ceiling: usize },
    #[error("value needs more than {max_bits} bits")]
    NotRepresentable { max_bits: u64 },
    #[error("cannot encode an empty string")]
    Empty,
    #[error("malformed number: {0}")]
    Malformed(String),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvalidReason {
    Zero,
    UnregisteredSymbol(BigUint),
    Gap { index: usize },
    ZeroExponent { index: usize },
    TooLong { ceiling: usize },
    MixedParity,
    NestedDerivation,
    NotAFormula { position: usize, reason: Box<InvalidReason> },
}

impl fmt::Display for InvalidReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvalidReason::Zero => f.write_str("zero is not a code"),
            InvalidReason::UnregisteredSymbol(c) => write!(f, "unregistered symbol code {c}"),
            InvalidReason::Gap { index } => write!(f, "gap at prime index {index}"),
            InvalidReason::ZeroExponent { index } => write!(f, "zero exponent at prime index {index}"),
            InvalidReason::TooLong { ceiling } => write!(f, "too long: exceeds prime index {ceiling}"),
            InvalidReason::MixedParity => f.write_str("mixed-parity exponents"),
            InvalidReason::NestedDerivation => f.write_str("exponent is itself a derivation code"),
            InvalidReason::NotAFormula { position, reason } => {
                write!(f, "exponent {position} is not a formula code ({reason})")
            }
        }
    }
}

/// What kind of object a natural number encodes, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodeClass {
    SymbolCode,
    FormulaCode,
    DerivationCode,
    Invalid(InvalidReason),
}

impl fmt::Display for CodeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeClass::SymbolCode => f.write_str("SymbolCode"),
            CodeClass::FormulaCode => f.write_str("FormulaCode"),
            CodeClass::DerivationCode => f.write_str("DerivationCode"),
            CodeClass::Invalid(reason) => write!(f, "Invalid({reason})"),
        }
    }
}

impl Serialize for CodeClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            class: &'a str,
            #[serde(skip_serializing_if = "Option::is_none")]
            reason: Option<String>,
        }
        let (class, reason) = match self {
            CodeClass::SymbolCode => ("SymbolCode", None),
            CodeClass::FormulaCode => ("FormulaCode", None),
            CodeClass::DerivationCode => ("DerivationCode", None),
            CodeClass::Invalid(r) => ("Invalid", Some(r.to_string())),
        };
        Repr { class, reason }.serialize(serializer)
    }
}

/// The object recovered from a valid code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decoded {
    Symbol(Symbol),
    /// A symbol string; not necessarily a well-formed formula.
    String(Vec<Symbol>),
    Derivation(Vec<Vec<Symbol>>),
}

impl Decoded {
    pub fn class(&self) -> CodeClass {
        match self {
            Decoded::Symbol(_) => CodeClass::SymbolCode,
            Decoded::String(_) => CodeClass::FormulaCode,
            Decoded::Derivation(_) => CodeClass::DerivationCode,
        }
    }

    /// Parses a decoded symbol string into a formula.
    pub fn to_formula(&self, table: &SymbolTable) -> Result<Formula, CodecError> {
        match self {
            Decoded::String(symbols) => Ok(parse_string(symbols, table)?),
            other => Err(CodecError::Malformed(format!("{} is not a formula", other.class()))),
        }
    }

    /// Parses every step of a decoded derivation.
    pub fn to_derivation(&self, table: &SymbolTable) -> Result<Derivation, CodecError> {
        match self {
            Decoded::Derivation(steps) => {
                let steps = steps
                    .iter()
                    .map(|s| parse_string(s, table))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Derivation::new(steps)?)
            }
            other => Err(CodecError::Malformed(format!("{} is not a derivation", other.class()))),
        }
    }
}

fn parse_string(symbols: &[Symbol], table: &SymbolTable) -> Result<Formula, SyntaxError> {
    let names: Vec<&str> = symbols.iter().map(|s| s.name.as_str()).collect();
    parse_symbol_names(&names, table)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodecConfig {
    pub exact_bits: u64,
    pub prime_index_ceiling: usize,
    pub materialize_bits: u64,
}

impl Default for CodecConfig {
    fn default() -> Self {
        CodecConfig {
            exact_bits: DEFAULT_EXACT_BITS,
            prime_index_ceiling: DEFAULT_PRIME_INDEX_CEILING,
            materialize_bits: DEFAULT_MATERIALIZE_BITS,
        }
    }
}

/// Encoder/decoder bound to one symbol table.
#[derive(Clone, Copy, Debug)]
pub struct Codec<'a> {
    table: &'a SymbolTable,
    config: CodecConfig,
}

impl<'a> Codec<'a> {
    pub fn new(table: &'a SymbolTable) -> Self {
        Self::with_config(table, CodecConfig::default())
    }

    pub fn with_config(table: &'a SymbolTable, config: CodecConfig) -> Self {
        Codec { table, config }
    }

    pub fn table(&self) -> &'a SymbolTable {
        self.table
    }

    pub fn config(&self) -> CodecConfig {
        self.config
    }

    pub fn encode_symbol(&self, symbol: &Symbol) -> GoedelNumber {
        GoedelNumber::from(symbol.code)
    }

    /// Number of a symbol string: exact when it fits in `exact_bits`, else factored.
    pub fn encode_string(&self, symbols: &[Symbol]) -> Result<GoedelNumber, CodecError> {
        if symbols.is_empty() {
            return Err(CodecError::Empty);
        }
        let exponents = symbols.iter().map(|s| GoedelNumber::from(s.code)).collect();
        Ok(self.prime_power_product(exponents))
    }

    pub fn encode_formula(&self, formula: &Formula) -> GoedelNumber {
        self.encode_string(formula.symbols())
            .expect("formulas are never empty")
    }

    /// Number of a derivation, always in factored form.
    pub fn encode_derivation(&self, derivation: &Derivation) -> GoedelNumber {
        let exponents = derivation
            .steps()
            .iter()
            .map(|f| self.encode_formula(f))
            .collect();
        sequence_code(exponents)
    }

    /// Same as [`Codec::encode_derivation`] but multiplied out.
    pub fn encode_derivation_exact(&self, derivation: &Derivation) -> Result<BigUint, CodecError> {
        self.encode_derivation(derivation)
            .to_exact(self.config.materialize_bits)
    }

    /// q1^e1 q2^e2 ... with the canonical representation for the size.
    pub fn prime_power_product(&self, exponents: Vec<GoedelNumber>) -> GoedelNumber {
        let code = sequence_code(exponents);
        if code.log2() <= self.config.exact_bits as f64 {
            GoedelNumber::Exact(code.to_exact(self.config.exact_bits).expect("size was checked"))
        } else {
            code
        }
    }

    pub fn factor(&self, n: &BigUint) -> Result<Vec<(usize, u64)>, CodecError> {
        factor_with_ceiling(n, self.config.prime_index_ceiling)
    }

    pub fn classify(&self, g: &GoedelNumber) -> CodeClass {
        match self.analyze(g) {
            Ok(decoded) => decoded.class(),
            Err(reason) => CodeClass::Invalid(reason),
        }
    }

    pub fn decode(&self, g: &GoedelNumber) -> Result<Decoded, CodecError> {
        self.analyze(g).map_err(CodecError::InvalidCode)
    }

    fn analyze(&self, g: &GoedelNumber) -> Result<Decoded, InvalidReason> {
        let exponents = match g {
            GoedelNumber::Exact(n) if n.is_zero() => return Err(InvalidReason::Zero),
            GoedelNumber::Exact(n) if n.is_odd() => return self.symbol(n).map(Decoded::Symbol),
            GoedelNumber::Exact(n) => self.contiguous_exponents(n)?,
            GoedelNumber::Factored(pairs) if pairs.is_empty() => {
                return self.symbol(&BigUint::one()).map(Decoded::Symbol)
            }
            GoedelNumber::Factored(pairs) => {
                for (pos, (index, e)) in pairs.iter().enumerate() {
                    if *index != pos + 1 {
                        return Err(InvalidReason::Gap { index: pos + 1 });
                    }
                    if e.as_exact().is_some_and(Zero::is_zero) {
                        return Err(InvalidReason::ZeroExponent { index: *index });
                    }
                }
                if pairs.len() > self.config.prime_index_ceiling {
                    return Err(InvalidReason::TooLong {
                        ceiling: self.config.prime_index_ceiling,
                    });
                }
                pairs.iter().map(|(_, e)| e.clone()).collect()
            }
        };

        let odd = exponents.iter().filter(|e| !e.is_even()).count();
        if odd == exponents.len() {
            let symbols = exponents
                .iter()
                .map(|e| match e {
                    GoedelNumber::Exact(c) => self.symbol(c),
                    GoedelNumber::Factored(_) => self.symbol(&BigUint::one()),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Decoded::String(symbols))
        } else if odd == 0 {
            let mut steps = Vec::with_capacity(exponents.len());
            for (pos, e) in exponents.iter().enumerate() {
                match self.analyze(e) {
                    Ok(Decoded::String(s)) => steps.push(s),
                    Ok(_) => {
                        return Err(InvalidReason::NotAFormula {
                            position: pos + 1,
                            reason: Box::new(InvalidReason::NestedDerivation),
                        })
                    }
                    Err(reason) => {
                        return Err(InvalidReason::NotAFormula {
                            position: pos + 1,
                            reason: Box::new(reason),
                        })
                    }
                }
            }
            Ok(Decoded::Derivation(steps))
        } else {
            Err(InvalidReason::MixedParity)
        }
    }

    fn symbol(&self, code: &BigUint) -> Result<Symbol, InvalidReason> {
        code.to_u64()
            .and_then(|c| self.table.by_code(c))
            .ok_or_else(|| InvalidReason::UnregisteredSymbol(code.clone()))
    }

    /// Exponents of q1, q2, ... for an even number, failing at the first
    /// prime that does not divide what is left.
    fn contiguous_exponents(&self, n: &BigUint) -> Result<Vec<GoedelNumber>, InvalidReason> {
        let mut rest = n.clone();
        let mut out = Vec::new();
        let mut index = 1;
        while !rest.is_one() {
            if index > self.config.prime_index_ceiling {
                return Err(InvalidReason::TooLong {
                    ceiling: self.config.prime_index_ceiling,
                });
            }
            let p = BigUint::from(nth_prime(index));
            let mut e = 0u64;
            loop {
                let (q, r) = rest.div_rem(&p);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                e += 1;
            }
            if e == 0 {
                return Err(InvalidReason::Gap { index });
            }
            out.push(GoedelNumber::from(e));
            index += 1;
        }
        Ok(out)
    }
}

/// The factored code of a sequence of exponents.
pub fn sequence_code(exponents: Vec<GoedelNumber>) -> GoedelNumber {
    GoedelNumber::Factored(
        exponents
            .into_iter()
            .enumerate()
            .map(|(i, e)| (i + 1, e))
            .collect(),
    )
}

/// Trial division by successive primes.
///
/// Returns `(prime_index, exponent)` pairs for every prime dividing `n`, in
/// increasing order. Fails if a factor lies beyond the `ceiling`-th prime.
pub fn factor_with_ceiling(n: &BigUint, ceiling: usize) -> Result<Vec<(usize, u64)>, CodecError> {
    if n < &BigUint::from(2u32) {
        return Err(CodecError::NotFactorable(n.clone()));
    }
    if let Some(small) = n.to_u64() {
        return factor_u64(small, ceiling);
    }
    let mut rest = n.clone();
    let mut out = Vec::new();
    let mut index = 1;
    while !rest.is_one() {
        if index > ceiling {
            return Err(CodecError::TooLong { ceiling });
        }
        let p = nth_prime(index);
        if let Some(r) = rest.to_u64() {
            let mut tail = factor_u64(r, ceiling)?;
            out.append(&mut tail);
            return Ok(out);
        }
        let big_p = BigUint::from(p);
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&big_p);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((index, e));
        }
        index += 1;
    }
    Ok(out)
}

fn factor_u64(mut n: u64, ceiling: usize) -> Result<Vec<(usize, u64)>, CodecError> {
    let mut out = Vec::new();
    let mut index = 1;
    while n > 1 {
        if index > ceiling {
            return Err(CodecError::TooLong { ceiling });
        }
        let p = nth_prime(index);
        if p.saturating_mul(p) > n {
            // what is left is prime
            let last = prime_index(n)
                .filter(|&i| i <= ceiling)
                .ok_or(CodecError::TooLong { ceiling })?;
            out.push((last, 1));
            break;
        }
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((index, e));
        }
        index += 1;
    }
    Ok(out)
}
