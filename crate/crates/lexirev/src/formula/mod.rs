//! Propositional formulae: syntax tree, parsing, printing, evaluation and
//! clause forms.
//!
//! The grammar understood by [`parse_formula`] (binding from loosest to
//! tightest: `<->`, `->`, `|`, `&`, `!`):
//!
//! ```text
//! formula := iff
//! iff     := imp ("<->" imp)*      left-associative
//! imp     := or ("->" or)*        right-associative
//! or      := and ("|" and)*
//! and     := neg ("&" neg)*
//! neg     := "!" neg | atom
//! atom    := IDENT | "true" | "false" | "(" formula ")"
//! ```
//!
//! Whitespace is insignificant and `#` starts a comment running to the end of
//! the line. Identifiers match `[A-Za-z_][A-Za-z0-9_]*`; names starting with
//! `__` are reserved for generated variables and rejected by the parser.

mod clause;
mod cnf;
mod model;
mod parser;

use std::collections::BTreeMap;
use std::fmt;

use crate::{Error, Result};

pub use clause::{cnf_to_formula, formula_to_clauses, is_horn, Clause, Cnf, Literal};
pub use cnf::{to_cnf, to_cnf_equiv, DISTRIBUTION_VAR_CAP};
pub use model::{enumerate_models, Alphabet, Model, ModelIter, DEFAULT_VAR_CAP};
pub use parser::parse_formula;

/// A propositional variable, identified by name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(String);

impl Var {
    /// Creates a variable, checking the lexical rules: `[A-Za-z_][A-Za-z0-9_]*`
    /// and not one of the constant keywords.
    pub fn new(name: impl Into<String>) -> Result<Var> {
        let name = name.into();
        let mut chars = name.chars();
        let valid_head = chars
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
        let valid_tail = chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid_head || !valid_tail || name == "true" || name == "false" {
            return Err(Error::InvalidVarName(name));
        }
        Ok(Var(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    /// True for names in the `__` namespace, which is set aside for generated
    /// variables. The parser and the DIMACS importer keep user-visible names
    /// out of it so that files the tool writes can always be read back.
    pub fn reserved(name: &str) -> bool {
        name.starts_with("__")
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Syntax tree of a propositional formula.
///
/// `And` and `Or` nodes are n-ary with at least two children; use
/// [`Formula::and`] and [`Formula::or`] to build them safely.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    /// The constant ⊤.
    True,
    /// The constant ⊥.
    False,
    /// A variable occurrence.
    Var(Var),
    /// Negation.
    Not(Box<Formula>),
    /// n-ary conjunction, two or more children.
    And(Vec<Formula>),
    /// n-ary disjunction, two or more children.
    Or(Vec<Formula>),
    /// Material implication.
    Implies(Box<Formula>, Box<Formula>),
    /// Biconditional.
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    /// Variable occurrence by name; panics on an invalid name, so only
    /// suitable for literals known to be well-formed.
    pub fn var(name: &str) -> Formula {
        Formula::Var(Var::new(name).expect("invalid variable name"))
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    /// Conjunction of `parts`: ⊤ when empty, the sole part when singleton.
    pub fn and(parts: Vec<Formula>) -> Formula {
        match parts.len() {
            0 => Formula::True,
            1 => parts.into_iter().next().unwrap(),
            _ => Formula::And(parts),
        }
    }

    /// Disjunction of `parts`: ⊥ when empty, the sole part when singleton.
    pub fn or(parts: Vec<Formula>) -> Formula {
        match parts.len() {
            0 => Formula::False,
            1 => parts.into_iter().next().unwrap(),
            _ => Formula::Or(parts),
        }
    }

    pub fn implies(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Implies(Box::new(lhs), Box::new(rhs))
    }

    pub fn iff(lhs: Formula, rhs: Formula) -> Formula {
        Formula::Iff(Box::new(lhs), Box::new(rhs))
    }

    /// Variables of the formula in order of first appearance, without
    /// duplicates.
    pub fn vars(&self) -> Vec<Var> {
        let mut seen = Vec::new();
        self.collect_vars(&mut seen);
        seen
    }

    fn collect_vars(&self, seen: &mut Vec<Var>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Var(v) => {
                if !seen.contains(v) {
                    seen.push(v.clone());
                }
            }
            Formula::Not(c) => c.collect_vars(seen),
            Formula::And(cs) | Formula::Or(cs) => {
                for c in cs {
                    c.collect_vars(seen);
                }
            }
            Formula::Implies(l, r) | Formula::Iff(l, r) => {
                l.collect_vars(seen);
                r.collect_vars(seen);
            }
        }
    }

    /// Number of syntax tree nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Var(_) => 1,
            Formula::Not(c) => 1 + c.size(),
            Formula::And(cs) | Formula::Or(cs) => 1 + cs.iter().map(Formula::size).sum::<usize>(),
            Formula::Implies(l, r) | Formula::Iff(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Binding strength used by the printer; higher binds tighter.
    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(_) => 3,
            Formula::And(_) => 4,
            Formula::Not(_) => 5,
            Formula::True | Formula::False | Formula::Var(_) => 6,
        }
    }
}

/// Truth value of `f` under `model`.
///
/// Every variable of `f` must be bound by the model; an unbound variable is
/// reported as an error rather than defaulted.
pub fn eval(f: &Formula, model: &Model) -> Result<bool> {
    match f {
        Formula::True => Ok(true),
        Formula::False => Ok(false),
        Formula::Var(v) => model.get(v).ok_or_else(|| Error::UnboundVar(v.clone())),
        Formula::Not(c) => Ok(!eval(c, model)?),
        Formula::And(cs) => {
            let mut acc = true;
            for c in cs {
                acc &= eval(c, model)?;
            }
            Ok(acc)
        }
        Formula::Or(cs) => {
            let mut acc = false;
            for c in cs {
                acc |= eval(c, model)?;
            }
            Ok(acc)
        }
        Formula::Implies(l, r) => Ok(!eval(l, model)? || eval(r, model)?),
        Formula::Iff(l, r) => Ok(eval(l, model)? == eval(r, model)?),
    }
}

/// Replaces variables according to `mapping`; variables absent from the map
/// stay as they are.
///
/// The induced replacement must be injective on the variables of `f`:
/// collapsing two distinct variables would change the formula's meaning, so
/// it is rejected.
pub fn rename(f: &Formula, mapping: &BTreeMap<Var, Var>) -> Result<Formula> {
    let vars = f.vars();
    let mut images: std::collections::BTreeSet<&Var> = Default::default();
    for v in &vars {
        let image = mapping.get(v).unwrap_or(v);
        if !images.insert(image) {
            return Err(Error::NonInjectiveRename(image.clone()));
        }
    }
    Ok(rename_unchecked(f, mapping))
}

fn rename_unchecked(f: &Formula, mapping: &BTreeMap<Var, Var>) -> Formula {
    match f {
        Formula::True => Formula::True,
        Formula::False => Formula::False,
        Formula::Var(v) => Formula::Var(mapping.get(v).unwrap_or(v).clone()),
        Formula::Not(c) => Formula::not(rename_unchecked(c, mapping)),
        Formula::And(cs) => Formula::And(cs.iter().map(|c| rename_unchecked(c, mapping)).collect()),
        Formula::Or(cs) => Formula::Or(cs.iter().map(|c| rename_unchecked(c, mapping)).collect()),
        Formula::Implies(l, r) => {
            Formula::implies(rename_unchecked(l, mapping), rename_unchecked(r, mapping))
        }
        Formula::Iff(l, r) => {
            Formula::iff(rename_unchecked(l, mapping), rename_unchecked(r, mapping))
        }
    }
}

impl fmt::Display for Formula {
    /// Prints the formula so that parsing it back yields a structurally equal
    /// tree: children are parenthesized exactly where the grammar's
    /// precedence and associativity would otherwise regroup them.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, c: &Formula, parens: bool) -> fmt::Result {
            if parens {
                write!(f, "({c})")
            } else {
                write!(f, "{c}")
            }
        }

        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Var(v) => write!(f, "{v}"),
            Formula::Not(c) => {
                f.write_str("!")?;
                child(f, c, c.precedence() < 5)
            }
            Formula::And(cs) => {
                for (k, c) in cs.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" & ")?;
                    }
                    child(f, c, c.precedence() <= 4)?;
                }
                Ok(())
            }
            Formula::Or(cs) => {
                for (k, c) in cs.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" | ")?;
                    }
                    child(f, c, c.precedence() <= 3)?;
                }
                Ok(())
            }
            Formula::Implies(l, r) => {
                child(f, l, l.precedence() <= 2)?;
                f.write_str(" -> ")?;
                child(f, r, r.precedence() < 2)
            }
            Formula::Iff(l, r) => {
                child(f, l, l.precedence() < 1)?;
                f.write_str(" <-> ")?;
                child(f, r, r.precedence() <= 1)
            }
        }
    }
}
