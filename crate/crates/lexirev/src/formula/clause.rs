//! Literals, clauses and clause sets.

use std::collections::BTreeSet;
use std::fmt;

use super::{Formula, Var};
use crate::{Error, Result};

/// A variable or its negation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    var: Var,
    positive: bool,
}

impl Literal {
    pub fn new(var: Var, positive: bool) -> Literal {
        Literal { var, positive }
    }

    pub fn positive(var: Var) -> Literal {
        Literal::new(var, true)
    }

    pub fn negative(var: Var) -> Literal {
        Literal::new(var, false)
    }

    pub fn var(&self) -> &Var {
        &self.var
    }

    pub fn is_positive(&self) -> bool {
        self.positive
    }

    pub fn negated(&self) -> Literal {
        Literal::new(self.var.clone(), !self.positive)
    }

    pub fn to_formula(&self) -> Formula {
        let v = Formula::Var(self.var.clone());
        if self.positive {
            v
        } else {
            Formula::not(v)
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("!")?;
        }
        write!(f, "{}", self.var)
    }
}

/// A disjunction of literals with set semantics: no duplicate literals, but a
/// variable may appear in both polarities (a tautological clause).
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    literals: BTreeSet<Literal>,
}

impl Clause {
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Clause {
        Clause {
            literals: literals.into_iter().collect(),
        }
    }

    /// The empty clause, i.e. falsity.
    pub fn empty() -> Clause {
        Clause::default()
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn contains(&self, lit: &Literal) -> bool {
        self.literals.contains(lit)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Literal> {
        self.literals.iter()
    }

    /// Whether some variable occurs in both polarities.
    pub fn is_tautological(&self) -> bool {
        self.literals
            .iter()
            .any(|l| l.is_positive() && self.literals.contains(&l.negated()))
    }

    pub fn positive_count(&self) -> usize {
        self.literals.iter().filter(|l| l.is_positive()).count()
    }

    /// This clause with `lit` removed (a copy; absent literals are fine).
    pub fn without(&self, lit: &Literal) -> Clause {
        let mut literals = self.literals.clone();
        literals.remove(lit);
        Clause { literals }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, lit) in self.literals.iter().enumerate() {
            if k > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{lit}")?;
        }
        Ok(())
    }
}

/// A conjunction of clauses. Clause order is preserved; duplicate clauses are
/// allowed and kept.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Cnf {
    clauses: Vec<Clause>,
}

impl Cnf {
    pub fn new(clauses: Vec<Clause>) -> Cnf {
        Cnf { clauses }
    }

    /// The empty clause set, i.e. truth.
    pub fn empty() -> Cnf {
        Cnf::default()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn push(&mut self, clause: Clause) {
        self.clauses.push(clause);
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// Whether some clause is empty, i.e. the set is trivially unsatisfiable.
    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(Clause::is_empty)
    }

    /// Variables in order of first appearance across clauses.
    pub fn vars(&self) -> Vec<Var> {
        let mut seen = Vec::new();
        for c in &self.clauses {
            for lit in c.iter() {
                if !seen.contains(lit.var()) {
                    seen.push(lit.var().clone());
                }
            }
        }
        seen
    }
}

impl fmt::Display for Cnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.clauses.iter().enumerate() {
            if k > 0 {
                f.write_str(" & ")?;
            }
            write!(f, "({c})")?;
        }
        Ok(())
    }
}

/// Whether a clause is Horn: at most one positive literal.
pub fn is_horn(c: &Clause) -> bool {
    c.positive_count() <= 1
}

fn as_literal(f: &Formula) -> Option<Literal> {
    match f {
        Formula::Var(v) => Some(Literal::positive(v.clone())),
        Formula::Not(inner) => match inner.as_ref() {
            Formula::Var(v) => Some(Literal::negative(v.clone())),
            _ => None,
        },
        _ => None,
    }
}

fn as_clause(f: &Formula) -> Option<Clause> {
    if let Some(lit) = as_literal(f) {
        return Some(Clause::new([lit]));
    }
    match f {
        Formula::Or(cs) => cs
            .iter()
            .map(as_literal)
            .collect::<Option<Vec<_>>>()
            .map(Clause::new),
        Formula::False => Some(Clause::empty()),
        _ => None,
    }
}

/// Reads a formula that is syntactically in conjunctive normal form — a
/// conjunction of disjunctions of literals — as a clause set.
///
/// `true` is the empty clause set and `false` the empty clause; anything not
/// literally in CNF shape is rejected (no conversion is attempted, see
/// [`super::to_cnf`] and [`super::to_cnf_equiv`] for that).
pub fn formula_to_clauses(f: &Formula) -> Result<Cnf> {
    if *f == Formula::True {
        return Ok(Cnf::empty());
    }
    let parts: &[Formula] = match f {
        Formula::And(cs) => cs,
        _ => std::slice::from_ref(f),
    };
    let mut clauses = Vec::with_capacity(parts.len());
    for part in parts {
        match as_clause(part) {
            Some(c) => clauses.push(c),
            None => return Err(Error::NotClausal(format!("`{part}` is not a clause"))),
        }
    }
    Ok(Cnf::new(clauses))
}

/// The formula spelled by a clause set: a conjunction of disjunctions.
pub fn cnf_to_formula(c: &Cnf) -> Formula {
    Formula::and(
        c.clauses()
            .iter()
            .map(|clause| Formula::or(clause.iter().map(Literal::to_formula).collect()))
            .collect(),
    )
}
