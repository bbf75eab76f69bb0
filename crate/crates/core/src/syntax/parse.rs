//! Concrete grammar for formulas.
//!
//! ```text
//! formula := 'forall' VAR '.' formula | '!' formula | '(' formula '->' formula ')'
//!          | PRED '(' term (',' term)* ')' | '[' expr-token+ ']'
//! term    := VAR | '#' NAT | '0' | term '\''
//! ```
//!
//! The same recursive descent also runs over decoded symbol strings, where
//! the `.` after a quantified variable is absent.

use super::formula::{numeral_value, Formula, Node, Term, Var};
use super::symbols::{self, SymbolKind, SymbolTable};
use super::SyntaxError;
use crate::cas::lexer;

#[derive(Debug, Clone)]
struct Lexeme {
    text: String,
    pos: usize,
}

const FORMULA_START: [&str; 5] = ["forall", "!", "(", "[", "predicate"];

/// Parses formula text against `table`.
pub fn parse_formula(text: &str, table: &SymbolTable) -> Result<Formula, SyntaxError> {
    let lexemes = lex(text)?;
    let mut parser = Parser {
        lexemes: &lexemes,
        at: 0,
        dotted: true,
        table,
        end_pos: text.len(),
    };
    let tree = parser.formula()?;
    parser.finish()?;
    Formula::from_tree(tree, table)
}

/// Rebuilds the tree of a symbol string given by canonical symbol names.
pub fn parse_symbol_names<S: AsRef<str>>(
    names: &[S],
    table: &SymbolTable,
) -> Result<Formula, SyntaxError> {
    let lexemes: Vec<Lexeme> = names
        .iter()
        .enumerate()
        .map(|(pos, n)| Lexeme {
            text: n.as_ref().to_owned(),
            pos,
        })
        .collect();
    let mut parser = Parser {
        lexemes: &lexemes,
        at: 0,
        dotted: false,
        table,
        end_pos: names.len(),
    };
    let tree = parser.formula()?;
    parser.finish()?;
    Formula::from_tree(tree, table)
}

fn lex(text: &str) -> Result<Vec<Lexeme>, SyntaxError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut pos = 0;
    while pos < text.len() {
        let rest = &text[pos..];
        let ch = rest.chars().next().unwrap();
        if ch.is_whitespace() {
            pos += ch.len_utf8();
            continue;
        }
        let mut push = |t: &str, len: usize, pos: &mut usize| {
            out.push(Lexeme {
                text: t.to_owned(),
                pos: *pos,
            });
            *pos += len;
        };
        match ch {
            '!' | '~' | '¬' => push(symbols::NOT, ch.len_utf8(), &mut pos),
            '∀' => push(symbols::FORALL, ch.len_utf8(), &mut pos),
            '→' => push(symbols::IMPLIES, ch.len_utf8(), &mut pos),
            '-' if rest.starts_with("->") => push(symbols::IMPLIES, 2, &mut pos),
            '(' | ')' | ',' | '.' | '\'' | '0' => push(&ch.to_string(), 1, &mut pos),
            '#' => {
                let digits = rest[1..].bytes().take_while(u8::is_ascii_digit).count();
                let token = &rest[..1 + digits];
                let value = numeral_value(token).ok_or_else(|| SyntaxError::Parse {
                    pos,
                    expected: vec!["digits".into()],
                    found: rest.chars().nth(1).map(String::from).unwrap_or_default(),
                })?;
                push(&format!("#{value}"), 1 + digits, &mut pos);
            }
            '[' => {
                let close = rest.find(']').ok_or_else(|| SyntaxError::Parse {
                    pos: text.len(),
                    expected: vec!["]".into()],
                    found: String::new(),
                })?;
                push(symbols::LBRACKET, 1, &mut pos);
                let inner = &rest[1..close];
                let tokens = lexer::tokenize(inner).map_err(|e| SyntaxError::Parse {
                    pos: pos + e.pos,
                    expected: vec!["expression token".into()],
                    found: e.found,
                })?;
                for tok in tokens {
                    out.push(Lexeme {
                        text: tok.text,
                        pos: pos + tok.pos,
                    });
                }
                pos += close - 1;
                out.push(Lexeme {
                    text: symbols::RBRACKET.to_owned(),
                    pos,
                });
                pos += 1;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let len = bytes[pos..]
                    .iter()
                    .take_while(|b| b.is_ascii_alphanumeric() || **b == b'_')
                    .count();
                let word = &rest[..len];
                let name = if word == "forall" { symbols::FORALL } else { word };
                push(name, len, &mut pos);
            }
            other => {
                return Err(SyntaxError::Parse {
                    pos,
                    expected: FORMULA_START.iter().map(|s| s.to_string()).collect(),
                    found: other.to_string(),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    lexemes: &'a [Lexeme],
    at: usize,
    dotted: bool,
    table: &'a SymbolTable,
    end_pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Lexeme> {
        self.lexemes.get(self.at)
    }

    fn pos(&self) -> usize {
        self.peek().map_or(self.end_pos, |l| l.pos)
    }

    fn error(&self, expected: &[&str]) -> SyntaxError {
        SyntaxError::Parse {
            pos: self.pos(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().map(|l| l.text.clone()).unwrap_or_default(),
        }
    }

    fn expect(&mut self, text: &str) -> Result<(), SyntaxError> {
        match self.peek() {
            Some(l) if l.text == text => {
                self.at += 1;
                Ok(())
            }
            _ => Err(self.error(&[text])),
        }
    }

    fn finish(&self) -> Result<(), SyntaxError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.error(&["end of input"])),
        }
    }

    fn formula(&mut self) -> Result<Node, SyntaxError> {
        let Some(lexeme) = self.peek() else {
            return Err(self.error(&FORMULA_START));
        };
        match lexeme.text.as_str() {
            symbols::FORALL => {
                self.at += 1;
                let var = self.var()?;
                if self.dotted {
                    self.expect(".")?;
                }
                Ok(Node::forall(var, self.formula()?))
            }
            symbols::NOT => {
                self.at += 1;
                Ok(Node::not(self.formula()?))
            }
            symbols::LPAREN => {
                self.at += 1;
                let lhs = self.formula()?;
                self.expect(symbols::IMPLIES)?;
                let rhs = self.formula()?;
                self.expect(symbols::RPAREN)?;
                Ok(Node::implies(lhs, rhs))
            }
            symbols::LBRACKET => {
                self.at += 1;
                let mut tokens = Vec::new();
                while let Some(l) = self.peek() {
                    if l.text == symbols::RBRACKET {
                        break;
                    }
                    tokens.push(l.text.clone());
                    self.at += 1;
                }
                if tokens.is_empty() {
                    return Err(self.error(&["expression token"]));
                }
                self.expect(symbols::RBRACKET)?;
                Ok(Node::Opaque(tokens))
            }
            name => {
                let is_pred = self
                    .table
                    .lookup(name)
                    .is_some_and(|s| s.kind == SymbolKind::Predicate);
                if !is_pred {
                    return Err(self.error(&FORMULA_START));
                }
                self.at += 1;
                self.expect(symbols::LPAREN)?;
                let mut args = vec![self.term()?];
                while self.peek().is_some_and(|l| l.text == symbols::COMMA) {
                    self.at += 1;
                    args.push(self.term()?);
                }
                self.expect(symbols::RPAREN)?;
                Ok(Node::Pred(name.to_owned(), args))
            }
        }
    }

    fn var(&mut self) -> Result<Var, SyntaxError> {
        match self.peek().and_then(|l| Var::from_name(&l.text)) {
            Some(v) => {
                self.at += 1;
                Ok(v)
            }
            None => Err(self.error(&["x", "y", "z"])),
        }
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        let Some(lexeme) = self.peek() else {
            return Err(self.error(&["x", "y", "z", "0", "#n"]));
        };
        let mut term = if let Some(v) = Var::from_name(&lexeme.text) {
            Term::Var(v)
        } else if lexeme.text == symbols::ZERO {
            Term::Zero
        } else if let Some(n) = numeral_value(&lexeme.text) {
            Term::Abbrev(n)
        } else {
            return Err(self.error(&["x", "y", "z", "0", "#n"]));
        };
        self.at += 1;
        while self.peek().is_some_and(|l| l.text == symbols::SUCC) {
            self.at += 1;
            term = Term::Succ(Box::new(term));
        }
        Ok(term)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn parse(text: &str) -> Result<Formula, SyntaxError> {
        parse_formula(text, &SymbolTable::new())
    }

    #[test]
    fn self_reflection_formula() {
        let f = parse("forall y. !G(x,y)").unwrap();
        assert_eq!(f.free_vars(), BTreeSet::from([Var::X]));
        assert_eq!(f.symbol_string(), "∀ y ¬ G ( x , y )");
        assert_eq!(f.codes(), vec![5, 17, 1, 25, 7, 15, 11, 17, 9]);
    }

    #[test]
    fn gauge_formula_round_trips() {
        let text = "forall y. forall z. (!G(x,y) -> !M(z))";
        let f = parse(text).unwrap();
        assert_eq!(f.free_vars(), BTreeSet::from([Var::X]));
        assert_eq!(f.to_string(), text);
    }

    #[test]
    fn unicode_and_whitespace_are_accepted() {
        let a = parse("∀y.∀z.(D(x,y)→M(z))").unwrap();
        let b = parse("  forall y .  forall z. ( D( x , y ) -> M(z) ) ").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "forall y. forall z. (D(x,y) -> M(z))");
    }

    #[test]
    fn single_atom_prints_as_itself() {
        assert_eq!(parse("M(x)").unwrap().to_string(), "M(x)");
        assert_eq!(parse("M(0'')").unwrap().to_string(), "M(0'')");
        assert_eq!(parse("M(#007)").unwrap().to_string(), "M(#7)");
    }

    #[test]
    fn unbalanced_input_reports_position() {
        match parse("forall y. (") {
            Err(SyntaxError::Parse { pos, expected, .. }) => {
                assert_eq!(pos, 11);
                assert!(expected.contains(&"forall".to_string()));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse("(M(x) -> M(y)").is_err());
        assert!(parse("M(x) M(y)").is_err());
        assert!(parse("forall y !G(x,y)").is_err());
        assert!(parse("Q(x)").is_err());
        assert!(parse("M()").is_err());
        assert!(parse("[]").is_err());
    }

    #[test]
    fn opaque_expressions_keep_their_tokens() {
        let table = SymbolTable::new();
        let f = parse_formula("[mu^2*rho^2 - lambda*rho^4]", &table).unwrap();
        assert_eq!(f.to_string(), "[mu ^ 2 * rho ^ 2 - lambda * rho ^ 4]");
        assert!(f.is_closed());
        let again = parse_formula(&f.to_string(), &table).unwrap();
        assert_eq!(f, again);
    }

    #[test]
    fn symbol_names_parse_without_dots() {
        let table = SymbolTable::new();
        let f = parse_symbol_names(&["∀", "y", "¬", "G", "(", "x", ",", "y", ")"], &table).unwrap();
        assert_eq!(f.to_string(), "forall y. !G(x,y)");
        assert!(parse_symbol_names(&["∀", "y", "¬"], &table).is_err());
    }
}
