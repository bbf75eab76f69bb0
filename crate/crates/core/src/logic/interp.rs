use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::LogicError;
use crate::codec::{GoedelNumber, DEFAULT_MATERIALIZE_BITS};
use crate::syntax::{Formula, Node, Term, Var};

/// A finite structure: a domain of naturals and one relation per predicate.
///
/// Every extension tuple is drawn from the domain. Numerals may denote
/// values outside the domain; such atoms are simply false.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interpretation {
    #[serde(with = "nat_set")]
    domain: BTreeSet<BigUint>,
    #[serde(with = "extension_map")]
    extensions: BTreeMap<String, BTreeSet<Vec<BigUint>>>,
}

impl Interpretation {
    pub fn new(domain: impl IntoIterator<Item = BigUint>) -> Self {
        Interpretation { domain: domain.into_iter().collect(), extensions: BTreeMap::new() }
    }

    pub fn domain(&self) -> &BTreeSet<BigUint> {
        &self.domain
    }

    pub fn extension(&self, predicate: &str) -> Option<&BTreeSet<Vec<BigUint>>> {
        self.extensions.get(predicate)
    }

    /// Sets the extension of `predicate`; all tuples share one arity.
    pub fn with_extension(
        mut self,
        predicate: &str,
        tuples: impl IntoIterator<Item = Vec<BigUint>>,
    ) -> Result<Self, LogicError> {
        let tuples: BTreeSet<Vec<BigUint>> = tuples.into_iter().collect();
        let mut arity = None;
        for t in &tuples {
            if *arity.get_or_insert(t.len()) != t.len() {
                return Err(LogicError::ArityMismatch(predicate.to_owned()));
            }
            if let Some(outside) = t.iter().find(|v| !self.domain.contains(v)) {
                return Err(LogicError::OutsideDomain(outside.clone()));
            }
        }
        self.extensions.insert(predicate.to_owned(), tuples);
        Ok(self)
    }

    pub fn with_unary(self, predicate: &str, members: impl IntoIterator<Item = BigUint>) -> Result<Self, LogicError> {
        self.with_extension(predicate, members.into_iter().map(|m| vec![m]))
    }

    pub fn with_binary(
        self,
        predicate: &str,
        pairs: impl IntoIterator<Item = (BigUint, BigUint)>,
    ) -> Result<Self, LogicError> {
        self.with_extension(predicate, pairs.into_iter().map(|(a, b)| vec![a, b]))
    }
}

/// Classical truth of a closed formula: `forall` ranges over the domain and
/// `->` is material implication.
pub fn eval(formula: &Formula, itp: &Interpretation) -> Result<bool, LogicError> {
    if let Some(&var) = formula.free_vars().iter().next() {
        return Err(LogicError::FreeVariable(var));
    }
    eval_node(formula.tree(), itp, &mut BTreeMap::new())
}

fn term_value(term: &Term, env: &BTreeMap<Var, BigUint>) -> Result<BigUint, LogicError> {
    match term {
        Term::Var(v) => env.get(v).cloned().ok_or(LogicError::FreeVariable(*v)),
        Term::Zero => Ok(BigUint::default()),
        Term::Abbrev(n) => Ok(n.clone()),
        Term::Succ(inner) => Ok(term_value(inner, env)? + BigUint::one()),
    }
}

fn eval_node(node: &Node, itp: &Interpretation, env: &mut BTreeMap<Var, BigUint>) -> Result<bool, LogicError> {
    match node {
        Node::Not(body) => Ok(!eval_node(body, itp, env)?),
        Node::Implies(lhs, rhs) => Ok(!eval_node(lhs, itp, env)? || eval_node(rhs, itp, env)?),
        Node::Forall(var, body) => {
            let shadowed = env.get(var).cloned();
            let mut holds = true;
            for value in &itp.domain {
                env.insert(*var, value.clone());
                if !eval_node(body, itp, env)? {
                    holds = false;
                    break;
                }
            }
            match shadowed {
                Some(v) => env.insert(*var, v),
                None => env.remove(var),
            };
            Ok(holds)
        }
        Node::Pred(name, args) => {
            let ext = itp.extensions.get(name).ok_or_else(|| LogicError::UnknownPredicate(name.clone()))?;
            let tuple = args.iter().map(|t| term_value(t, env)).collect::<Result<Vec<_>, _>>()?;
            Ok(ext.contains(&tuple))
        }
        Node::Opaque(_) => Err(LogicError::OpaqueFormula),
    }
}

/// The semantic facts taken as given: pairs where the proof relation holds
/// and pairs where the diagonal relation holds.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactBase {
    #[serde(default, with = "nat_pairs")]
    pub g_facts: BTreeSet<(BigUint, BigUint)>,
    #[serde(default, with = "nat_pairs")]
    pub d_facts: BTreeSet<(BigUint, BigUint)>,
}

impl FactBase {
    pub fn from_json(text: &str) -> Result<Self, LogicError> {
        serde_json::from_str(text).map_err(|e| LogicError::Facts(e.to_string()))
    }
}

fn materialize<E: serde::de::Error>(g: GoedelNumber) -> Result<BigUint, E> {
    g.to_exact(DEFAULT_MATERIALIZE_BITS).map_err(E::custom)
}

/// Naturals as decimal strings; integers and factored forms are accepted on input.
mod nat_set {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(set: &BTreeSet<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(set.iter().map(|n| n.to_str_radix(10)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeSet<BigUint>, D::Error> {
        Vec::<GoedelNumber>::deserialize(d)?.into_iter().map(materialize).collect()
    }
}

mod nat_pairs {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(set: &BTreeSet<(BigUint, BigUint)>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(set.iter().map(|(a, b)| [a.to_str_radix(10), b.to_str_radix(10)]))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeSet<(BigUint, BigUint)>, D::Error> {
        Vec::<(GoedelNumber, GoedelNumber)>::deserialize(d)?
            .into_iter()
            .map(|(a, b)| Ok((materialize(a)?, materialize(b)?)))
            .collect()
    }
}

mod extension_map {
    use super::*;
    use serde::{Deserializer, Serializer};

    type Map = BTreeMap<String, BTreeSet<Vec<BigUint>>>;

    pub fn serialize<S: Serializer>(map: &Map, s: S) -> Result<S::Ok, S::Error> {
        let printable: BTreeMap<&String, Vec<Vec<String>>> = map
            .iter()
            .map(|(k, tuples)| (k, tuples.iter().map(|t| t.iter().map(|n| n.to_str_radix(10)).collect()).collect()))
            .collect();
        printable.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Map, D::Error> {
        BTreeMap::<String, Vec<Vec<GoedelNumber>>>::deserialize(d)?
            .into_iter()
            .map(|(k, tuples)| {
                let tuples = tuples
                    .into_iter()
                    .map(|t| t.into_iter().map(materialize).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<BTreeSet<_>, _>>()?;
                Ok((k, tuples))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, SymbolTable};

    fn n(v: u32) -> BigUint {
        BigUint::from(v)
    }

    fn truth(text: &str, itp: &Interpretation) -> Result<bool, LogicError> {
        let table = SymbolTable::new();
        eval(&parse_formula(text, &table).unwrap(), itp)
    }

    #[test]
    fn implication_table() {
        let base = Interpretation::new((1..=3).map(n)).with_binary("G", []).unwrap();
        let with_m = base.clone().with_unary("M", [n(3)]).unwrap();
        let without_m = base.with_unary("M", []).unwrap();
        assert!(!truth("(!G(#1,#2) -> !M(#3))", &with_m).unwrap());
        assert!(truth("(!G(#1,#2) -> !M(#3))", &without_m).unwrap());
    }

    #[test]
    fn vacuous_antecedent() {
        let itp = Interpretation::new([n(0)]).with_binary("D", []).unwrap().with_unary("M", []).unwrap();
        assert!(truth("forall y. forall z. (D(#0,y) -> M(z))", &itp).unwrap());
    }

    #[test]
    fn errors() {
        let itp = Interpretation::new([n(0)]);
        assert!(matches!(truth("M(#0)", &itp), Err(LogicError::UnknownPredicate(p)) if p == "M"));
        assert!(matches!(
            truth("M(x)", &itp.clone().with_unary("M", []).unwrap()),
            Err(LogicError::FreeVariable(Var::X))
        ));
        assert!(itp.clone().with_unary("M", [n(5)]).is_err());
        assert!(itp.with_extension("G", [vec![n(0)], vec![n(0), n(0)]]).is_err());
    }

    #[test]
    fn successor_numerals_denote_their_value() {
        let itp = Interpretation::new([n(2)]).with_unary("M", [n(2)]).unwrap();
        assert!(truth("M(0'')", &itp).unwrap());
        assert!(truth("forall z. M(z)", &itp).unwrap());
    }

    #[test]
    fn facts_json() {
        let facts = FactBase::from_json(r#"{"g_facts": [[1, "2"]]}"#).unwrap();
        assert!(facts.g_facts.contains(&(n(1), n(2))));
        assert!(facts.d_facts.is_empty());
        let json = serde_json::to_string(&facts).unwrap();
        assert_eq!(json, r#"{"g_facts":[["1","2"]],"d_facts":[]}"#);
        assert!(FactBase::from_json("[1]").is_err());
    }
}
