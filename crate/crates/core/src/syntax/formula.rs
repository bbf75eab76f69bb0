use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::symbols::{self, Symbol, SymbolKind, SymbolTable};
use super::SyntaxError;

/// Longest successor-form numeral we are willing to spell out.
pub const MAX_SUCCESSOR_TOKENS: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Var {
    #[serde(rename = "x")]
    X,
    #[serde(rename = "y")]
    Y,
    #[serde(rename = "z")]
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        match name {
            "x" => Some(Var::X),
            "y" => Some(Var::Y),
            "z" => Some(Var::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Terms are variables and numerals; there are no other function terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Var),
    Zero,
    /// `#n`, a numeral abbreviated to a single registered symbol.
    Abbrev(BigUint),
    Succ(Box<Term>),
}

impl Term {
    /// Numeric value of a closed term.
    pub fn value(&self) -> Option<BigUint> {
        match self {
            Term::Var(_) => None,
            Term::Zero => Some(BigUint::zero()),
            Term::Abbrev(n) => Some(n.clone()),
            Term::Succ(t) => t.value().map(|v| v + 1u32),
        }
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Term::Var(v) => {
                out.insert(*v);
            }
            Term::Succ(t) => t.collect_vars(out),
            Term::Zero | Term::Abbrev(_) => {}
        }
    }

    fn push_tokens(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => out.push(v.name().to_owned()),
            Term::Zero => out.push(symbols::ZERO.to_owned()),
            Term::Abbrev(n) => out.push(format!("#{n}")),
            Term::Succ(t) => {
                t.push_tokens(out);
                out.push(symbols::SUCC.to_owned());
            }
        }
    }

    fn replace(&self, var: Var, with: &Term) -> Term {
        match self {
            Term::Var(v) if *v == var => with.clone(),
            Term::Succ(t) => Term::Succ(Box::new(t.replace(var, with))),
            other => other.clone(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Zero => f.write_str("0"),
            Term::Abbrev(n) => write!(f, "#{n}"),
            Term::Succ(t) => write!(f, "{t}'"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NumeralMode {
    /// `0` followed by n successor marks.
    Successor,
    /// A single `#n` symbol.
    Abbreviated,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Numeral {
    pub value: BigUint,
    pub mode: NumeralMode,
}

impl Numeral {
    pub fn abbreviated(value: impl Into<BigUint>) -> Self {
        Numeral {
            value: value.into(),
            mode: NumeralMode::Abbreviated,
        }
    }

    pub fn successor(value: impl Into<BigUint>) -> Self {
        Numeral {
            value: value.into(),
            mode: NumeralMode::Successor,
        }
    }

    pub fn to_term(&self) -> Result<Term, SyntaxError> {
        match self.mode {
            NumeralMode::Abbreviated => Ok(Term::Abbrev(self.value.clone())),
            NumeralMode::Successor => {
                let n = self
                    .value
                    .to_usize()
                    .filter(|&n| n < MAX_SUCCESSOR_TOKENS)
                    .ok_or_else(|| SyntaxError::NumeralTooLarge(self.value.clone()))?;
                let mut term = Term::Zero;
                for _ in 0..n {
                    term = Term::Succ(Box::new(term));
                }
                Ok(term)
            }
        }
    }
}

/// Parsed structure of a formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Forall(Var, Box<Node>),
    Not(Box<Node>),
    Implies(Box<Node>, Box<Node>),
    Pred(String, Vec<Term>),
    /// A foreign expression carried as a bracketed token string, e.g. a Lagrangian.
    Opaque(Vec<String>),
}

impl Node {
    pub fn forall(var: Var, body: Node) -> Node {
        Node::Forall(var, Box::new(body))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(body: Node) -> Node {
        Node::Not(Box::new(body))
    }

    pub fn implies(lhs: Node, rhs: Node) -> Node {
        Node::Implies(Box::new(lhs), Box::new(rhs))
    }

    pub fn pred(name: &str, args: Vec<Term>) -> Node {
        Node::Pred(name.to_owned(), args)
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<Var>) {
        match self {
            Node::Forall(v, body) => {
                let mut inner = BTreeSet::new();
                body.collect_free(&mut inner);
                inner.remove(v);
                out.extend(inner);
            }
            Node::Not(b) => b.collect_free(out),
            Node::Implies(a, b) => {
                a.collect_free(out);
                b.collect_free(out);
            }
            Node::Pred(_, args) => args.iter().for_each(|t| t.collect_vars(out)),
            Node::Opaque(_) => {}
        }
    }

    /// Token names in the order they are Gödel-numbered.
    pub fn token_names(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.push_tokens(&mut out);
        out
    }

    fn push_tokens(&self, out: &mut Vec<String>) {
        match self {
            Node::Forall(v, body) => {
                out.push(symbols::FORALL.to_owned());
                out.push(v.name().to_owned());
                body.push_tokens(out);
            }
            Node::Not(b) => {
                out.push(symbols::NOT.to_owned());
                b.push_tokens(out);
            }
            Node::Implies(a, b) => {
                out.push(symbols::LPAREN.to_owned());
                a.push_tokens(out);
                out.push(symbols::IMPLIES.to_owned());
                b.push_tokens(out);
                out.push(symbols::RPAREN.to_owned());
            }
            Node::Pred(name, args) => {
                out.push(name.clone());
                out.push(symbols::LPAREN.to_owned());
                for (idx, t) in args.iter().enumerate() {
                    if idx > 0 {
                        out.push(symbols::COMMA.to_owned());
                    }
                    t.push_tokens(out);
                }
                out.push(symbols::RPAREN.to_owned());
            }
            Node::Opaque(tokens) => {
                out.push(symbols::LBRACKET.to_owned());
                out.extend(tokens.iter().cloned());
                out.push(symbols::RBRACKET.to_owned());
            }
        }
    }

    fn substitute(&self, var: Var, with: &Term) -> Node {
        match self {
            Node::Forall(v, _) if *v == var => self.clone(),
            Node::Forall(v, body) => Node::forall(*v, body.substitute(var, with)),
            Node::Not(b) => Node::not(b.substitute(var, with)),
            Node::Implies(a, b) => Node::implies(a.substitute(var, with), b.substitute(var, with)),
            Node::Pred(name, args) => {
                Node::Pred(name.clone(), args.iter().map(|t| t.replace(var, with)).collect())
            }
            Node::Opaque(_) => self.clone(),
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Forall(v, body) => write!(f, "forall {v}. {body}"),
            Node::Not(b) => write!(f, "!{b}"),
            Node::Implies(a, b) => write!(f, "({a} -> {b})"),
            Node::Pred(name, args) => {
                write!(f, "{name}(")?;
                for (idx, t) in args.iter().enumerate() {
                    if idx > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{t}")?;
                }
                f.write_str(")")
            }
            Node::Opaque(tokens) => write!(f, "[{}]", tokens.join(" ")),
        }
    }
}

/// A well-formed formula: its symbol string and the tree it parses to.
///
/// The symbol string is what gets Gödel-numbered; the tree is derived data.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Formula {
    symbols: Vec<Symbol>,
    tree: Node,
}

impl Formula {
    /// Resolves every token of `tree` against `table`.
    ///
    /// Numeral abbreviations and opaque expression tokens are registered on
    /// first use; predicates must already be registered.
    pub fn from_tree(tree: Node, table: &SymbolTable) -> Result<Formula, SyntaxError> {
        check_tree(&tree, table)?;
        let symbols = tree
            .token_names()
            .iter()
            .map(|name| resolve_token(name, table))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Formula { symbols, tree })
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn tree(&self) -> &Node {
        &self.tree
    }

    pub fn codes(&self) -> Vec<u64> {
        self.symbols.iter().map(|s| s.code).collect()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        self.tree.free_vars()
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Replaces every free occurrence of `var` by `numeral`.
    pub fn substitute(
        &self,
        var: Var,
        numeral: &Numeral,
        table: &SymbolTable,
    ) -> Result<Formula, SyntaxError> {
        if !self.free_vars().contains(&var) {
            return Err(SyntaxError::NoFreeOccurrence(var));
        }
        let term = numeral.to_term()?;
        Formula::from_tree(self.tree.substitute(var, &term), table)
    }

    /// The space-separated symbol names, e.g. `∀ y ¬ G ( x , y )`.
    pub fn symbol_string(&self) -> String {
        self.symbols
            .iter()
            .map(|s| s.name.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tree)
    }
}

fn check_tree(tree: &Node, table: &SymbolTable) -> Result<(), SyntaxError> {
    match tree {
        Node::Forall(_, body) | Node::Not(body) => check_tree(body, table),
        Node::Implies(a, b) => {
            check_tree(a, table)?;
            check_tree(b, table)
        }
        Node::Pred(name, args) => {
            if args.is_empty() {
                return Err(SyntaxError::EmptyArguments(name.clone()));
            }
            match table.lookup(name) {
                Some(sym) if sym.kind == SymbolKind::Predicate => Ok(()),
                _ => Err(SyntaxError::UnknownPredicate(name.clone())),
            }
        }
        Node::Opaque(tokens) => {
            if tokens.is_empty() {
                return Err(SyntaxError::EmptyOpaque);
            }
            if let Some(bad) = tokens.iter().find(|t| *t == symbols::RBRACKET || *t == symbols::LBRACKET) {
                return Err(SyntaxError::InvalidSymbolName(bad.clone()));
            }
            Ok(())
        }
    }
}

fn resolve_token(name: &str, table: &SymbolTable) -> Result<Symbol, SyntaxError> {
    if let Some(sym) = table.lookup(name) {
        return Ok(sym);
    }
    let kind = if name.starts_with('#') {
        SymbolKind::NumeralAbbrev
    } else if name == symbols::LBRACKET || name == symbols::RBRACKET {
        SymbolKind::Punctuation
    } else {
        SymbolKind::Function
    };
    table.intern(name, kind)
}

pub(crate) fn numeral_value(token: &str) -> Option<BigUint> {
    let digits = token.strip_prefix('#')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}
