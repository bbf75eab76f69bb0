use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::atom::Atom;
use super::expr::FieldExpr;
use super::lexer::{tokenize, Token};
use super::CasError;

/// Reads an expression.
///
/// ```text
/// sum     := term (('+' | '-') term)*
/// term    := factor (('*' | '/') factor)*
/// factor  := '-' factor | power
/// power   := primary ('^' exponent)?
/// exponent:= '-'? INT | '(' '-'? INT ')'
/// primary := INT ('/' INT)? | IDENT | '(' sum ')' | 'dagger' '(' sum ')' | 'd' '(' sum ')'
/// ```
///
/// `INT / INT` directly in primary position is one rational literal, so a
/// printed coefficient such as `1/4*F` reads back as the same tree.
pub fn parse_expr(text: &str) -> Result<FieldExpr, CasError> {
    let tokens = tokenize(text).map_err(|e| CasError::Parse {
        pos: e.pos,
        expected: "expression".into(),
        found: e.found,
    })?;
    let mut parser = Parser { tokens, idx: 0, end: text.len() };
    let expr = parser.sum()?;
    if parser.idx < parser.tokens.len() {
        return Err(parser.error("operator or end of input"));
    }
    Ok(expr)
}

struct Parser {
    tokens: Vec<Token>,
    idx: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&str> {
        self.tokens.get(self.idx).map(|t| t.text.as_str())
    }

    fn peek_at(&self, offset: usize) -> Option<&str> {
        self.tokens.get(self.idx + offset).map(|t| t.text.as_str())
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.idx).map_or(self.end, |t| t.pos)
    }

    fn error(&self, expected: &str) -> CasError {
        CasError::Parse {
            pos: self.pos(),
            expected: expected.into(),
            found: self.peek().map_or("end of input".into(), |s| format!("`{s}`")),
        }
    }

    fn eat(&mut self, text: &str) -> bool {
        if self.peek() == Some(text) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, text: &str) -> Result<(), CasError> {
        if self.eat(text) {
            Ok(())
        } else {
            Err(self.error(&format!("`{text}`")))
        }
    }

    fn sum(&mut self) -> Result<FieldExpr, CasError> {
        let mut terms = vec![self.term()?];
        loop {
            if self.eat("+") {
                terms.push(self.term()?);
            } else if self.eat("-") {
                terms.push(FieldExpr::neg(self.term()?));
            } else {
                return Ok(FieldExpr::add(terms));
            }
        }
    }

    fn term(&mut self) -> Result<FieldExpr, CasError> {
        let mut factors = vec![self.factor()?];
        loop {
            if self.eat("*") {
                factors.push(self.factor()?);
            } else if self.peek() == Some("/") {
                let pos = self.pos();
                self.idx += 1;
                let divisor = self.factor()?;
                factors.push(FieldExpr::pow(divisor, -1).map_err(|e| at(e, pos))?);
            } else {
                return Ok(FieldExpr::mul(factors));
            }
        }
    }

    fn factor(&mut self) -> Result<FieldExpr, CasError> {
        if self.eat("-") {
            Ok(FieldExpr::neg(self.factor()?))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<FieldExpr, CasError> {
        let base = self.primary()?;
        if self.peek() != Some("^") {
            return Ok(base);
        }
        let pos = self.pos();
        self.idx += 1;
        let exponent = if self.eat("(") {
            let k = self.signed_int()?;
            self.expect(")")?;
            k
        } else {
            self.signed_int()?
        };
        FieldExpr::pow(base, exponent).map_err(|e| at(e, pos))
    }

    fn signed_int(&mut self) -> Result<i32, CasError> {
        let negative = self.eat("-");
        let value = self
            .peek()
            .filter(|t| t.bytes().all(|b| b.is_ascii_digit()))
            .and_then(|t| t.parse::<i32>().ok())
            .ok_or_else(|| self.error("integer exponent"))?;
        self.idx += 1;
        Ok(if negative { -value } else { value })
    }

    fn integer(&mut self) -> Option<BigInt> {
        let value = self.peek()?.parse::<BigInt>().ok()?;
        self.idx += 1;
        Some(value)
    }

    fn primary(&mut self) -> Result<FieldExpr, CasError> {
        if let Some(numer) = self.integer() {
            let is_fraction = self.peek() == Some("/")
                && self.peek_at(1).is_some_and(|t| t.bytes().all(|b| b.is_ascii_digit()));
            if !is_fraction {
                return Ok(FieldExpr::num(BigRational::from_integer(numer)));
            }
            self.idx += 1;
            let pos = self.pos();
            let denom = self.integer().expect("checked digits");
            if denom.is_zero() {
                return Err(at(CasError::DivisionByZero, pos));
            }
            return Ok(FieldExpr::num(BigRational::new(numer, denom)));
        }
        if self.eat("(") {
            let inner = self.sum()?;
            self.expect(")")?;
            return Ok(inner);
        }
        let pos = self.pos();
        let name = match self.peek() {
            Some(t) if t.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') => t.to_owned(),
            _ => return Err(self.error("number, identifier or `(`")),
        };
        if self.peek_at(1) == Some("(") && (name == "dagger" || name == "d") {
            self.idx += 2;
            let inner = self.sum()?;
            self.expect(")")?;
            return if name == "dagger" {
                Ok(FieldExpr::dagger_of(inner))
            } else {
                FieldExpr::derivative_of(inner).map_err(|e| at(e, pos))
            };
        }
        let atom = name.parse::<Atom>().map_err(|()| self.error("a known identifier"))?;
        self.idx += 1;
        Ok(FieldExpr::atom(atom))
    }
}

/// Attaches a position to semantic errors raised while building the tree.
fn at(err: CasError, pos: usize) -> CasError {
    match err {
        CasError::Parse { .. } => err,
        other => CasError::Parse {
            pos,
            expected: "a valid expression".into(),
            found: other.to_string(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round_trip(text: &str) -> FieldExpr {
        let e = parse_expr(text).unwrap();
        assert_eq!(parse_expr(&e.to_string()).unwrap(), e, "printed as {e}");
        e
    }

    #[test]
    fn product_tree() {
        let e = round_trip("rho^2 * (dtheta - e*A)^2");
        assert_eq!(e.to_string(), "rho^2*(dtheta - e*A)^2");
    }

    #[test]
    fn fractional_powers_rejected() {
        let err = parse_expr("rho^(1/2)").unwrap_err();
        assert!(matches!(err, CasError::Parse { pos: 6, .. }), "{err:?}");
    }

    #[test]
    fn negative_power_on_a_field_rejected() {
        assert!(parse_expr("chi^-1").is_err());
        assert!(parse_expr("mu^4/(4*lambda)").is_ok());
        assert!(parse_expr("1/chi").is_err());
    }

    #[test]
    fn unknown_identifier_has_position() {
        let err = parse_expr("rho + phi2").unwrap_err();
        assert!(matches!(err, CasError::Parse { pos: 6, .. }));
    }

    #[test]
    fn nested_derivative_rejected() {
        assert!(parse_expr("d(d(chi))").is_err());
        assert!(parse_expr("d(A)").is_err());
        round_trip("d(dagger(phi)) + i*e*A*dagger(phi)");
    }

    #[test]
    fn signs_and_rationals() {
        round_trip("-1/4*F + mu^4/(4*lambda) - lambda/4*chi^4");
        round_trip("-(mu*chi) - (rho + chi) + --theta");
        round_trip("(1/2)^2*sqrt2^-3*(chi^2)^3");
    }
}
