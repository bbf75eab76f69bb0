use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use super::SyntaxError;

/// What role a symbol plays in the alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymbolKind {
    Logical,
    Punctuation,
    Variable,
    Predicate,
    Function,
    NumeralAbbrev,
}

/// One entry of the alphabet together with its (odd) code.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymbolEntry {
    pub name: String,
    pub code: u64,
    pub kind: SymbolKind,
}

pub type Symbol = Arc<SymbolEntry>;

impl fmt::Display for SymbolEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

pub const NOT: &str = "¬";
pub const IMPLIES: &str = "→";
pub const FORALL: &str = "∀";
pub const LPAREN: &str = "(";
pub const RPAREN: &str = ")";
pub const COMMA: &str = ",";
pub const ZERO: &str = "0";
pub const SUCC: &str = "'";
pub const LBRACKET: &str = "[";
pub const RBRACKET: &str = "]";

/// The fixed prefix of every table, in code order 1, 3, 5, ...
pub const BUILTIN: [(&str, SymbolKind); 18] = [
    (NOT, SymbolKind::Logical),
    (IMPLIES, SymbolKind::Logical),
    (FORALL, SymbolKind::Logical),
    (LPAREN, SymbolKind::Punctuation),
    (RPAREN, SymbolKind::Punctuation),
    (COMMA, SymbolKind::Punctuation),
    ("=", SymbolKind::Logical),
    ("x", SymbolKind::Variable),
    ("y", SymbolKind::Variable),
    ("z", SymbolKind::Variable),
    (ZERO, SymbolKind::Function),
    (SUCC, SymbolKind::Function),
    ("G", SymbolKind::Predicate),
    ("M", SymbolKind::Predicate),
    ("D", SymbolKind::Predicate),
    ("T", SymbolKind::Predicate),
    ("P", SymbolKind::Predicate),
    ("S", SymbolKind::Predicate),
];

/// Maps ASCII spellings onto the canonical table names.
pub fn canonical_name(name: &str) -> &str {
    match name {
        "!" | "~" => NOT,
        "->" => IMPLIES,
        "forall" => FORALL,
        other => other,
    }
}

#[derive(Default)]
struct Inner {
    entries: Vec<Symbol>,
    by_name: HashMap<String, usize>,
}

/// Append-only alphabet. The p-th registered symbol has code 2p - 1.
///
/// Reads take a shared lock; registration takes the exclusive lock, so a
/// table can be shared between threads behind a plain reference.
pub struct SymbolTable {
    inner: RwLock<Inner>,
}

impl Default for SymbolTable {
    fn default() -> Self {
        Self::new()
    }
}

impl fmt::Debug for SymbolTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries()).finish()
    }
}

impl SymbolTable {
    /// A table holding only the built-in alphabet.
    pub fn new() -> Self {
        let table = Self::empty();
        for (name, kind) in BUILTIN {
            table.register(name, kind).expect("built-in names are distinct");
        }
        table
    }

    /// A table without the built-in alphabet.
    pub fn empty() -> Self {
        SymbolTable {
            inner: RwLock::new(Inner::default()),
        }
    }

    pub fn len(&self) -> usize {
        self.inner.read().unwrap().entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Appends a new symbol and hands back its entry.
    pub fn register(&self, name: &str, kind: SymbolKind) -> Result<Symbol, SyntaxError> {
        let name = canonical_name(name);
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(SyntaxError::InvalidSymbolName(name.to_owned()));
        }
        let mut inner = self.inner.write().unwrap();
        if inner.by_name.contains_key(name) {
            return Err(SyntaxError::DuplicateSymbol(name.to_owned()));
        }
        Ok(Self::push(&mut inner, name, kind))
    }

    /// Returns the existing entry for `name`, registering it with `kind` if absent.
    pub fn intern(&self, name: &str, kind: SymbolKind) -> Result<Symbol, SyntaxError> {
        if let Some(sym) = self.lookup(name) {
            return Ok(sym);
        }
        let name = canonical_name(name);
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(SyntaxError::InvalidSymbolName(name.to_owned()));
        }
        let mut inner = self.inner.write().unwrap();
        // another writer may have won the race
        if let Some(&idx) = inner.by_name.get(name) {
            return Ok(inner.entries[idx].clone());
        }
        Ok(Self::push(&mut inner, name, kind))
    }

    fn push(inner: &mut Inner, name: &str, kind: SymbolKind) -> Symbol {
        let position = inner.entries.len() as u64 + 1;
        let entry = Arc::new(SymbolEntry {
            name: name.to_owned(),
            code: 2 * position - 1,
            kind,
        });
        inner.by_name.insert(name.to_owned(), inner.entries.len());
        inner.entries.push(entry.clone());
        entry
    }

    pub fn lookup(&self, name: &str) -> Option<Symbol> {
        let inner = self.inner.read().unwrap();
        inner
            .by_name
            .get(canonical_name(name))
            .map(|&idx| inner.entries[idx].clone())
    }

    pub fn by_code(&self, code: u64) -> Option<Symbol> {
        if code.is_multiple_of(2) {
            return None;
        }
        let idx = usize::try_from(code / 2).ok()?;
        self.inner.read().unwrap().entries.get(idx).cloned()
    }

    /// Snapshot of all entries in code order.
    pub fn entries(&self) -> Vec<Symbol> {
        self.inner.read().unwrap().entries.clone()
    }
}
