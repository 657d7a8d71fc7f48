//! Conversions from formulae to clause sets.
//!
//! [`to_cnf`] is the workhorse: a definitional conversion that introduces a
//! fresh variable per composite subformula, produces a clause set of size
//! linear in the formula and preserves satisfiability. Every model of the
//! result restricted to the original variables satisfies the original
//! formula, and every model of the original extends to the result — which is
//! all the solver-based procedures need.
//!
//! [`to_cnf_equiv`] distributes disjunctions over conjunctions instead,
//! producing a clause set over exactly the original variables that is
//! logically equivalent to the input. That can be exponentially large, so it
//! is capped at [`DISTRIBUTION_VAR_CAP`] variables.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::{Clause, Cnf, Formula, Literal, Var};
use crate::{Error, Result};

/// Variable cap for the equivalence-preserving conversion.
pub const DISTRIBUTION_VAR_CAP: usize = 12;

/// Removes the constants `true`/`false` by the usual identities. The result
/// is either a bare constant or a constant-free formula, and is logically
/// equivalent to the input.
pub(crate) fn simplify(f: &Formula) -> Formula {
    match f {
        Formula::True | Formula::False | Formula::Var(_) => f.clone(),
        Formula::Not(c) => negate(simplify(c)),
        Formula::And(cs) => {
            let mut parts = Vec::new();
            for c in cs {
                match simplify(c) {
                    Formula::True => {}
                    Formula::False => return Formula::False,
                    s => parts.push(s),
                }
            }
            Formula::and(parts)
        }
        Formula::Or(cs) => {
            let mut parts = Vec::new();
            for c in cs {
                match simplify(c) {
                    Formula::False => {}
                    Formula::True => return Formula::True,
                    s => parts.push(s),
                }
            }
            Formula::or(parts)
        }
        Formula::Implies(l, r) => match (simplify(l), simplify(r)) {
            (Formula::False, _) => Formula::True,
            (_, Formula::True) => Formula::True,
            (Formula::True, sr) => sr,
            (sl, Formula::False) => negate(sl),
            (sl, sr) => Formula::implies(sl, sr),
        },
        Formula::Iff(l, r) => match (simplify(l), simplify(r)) {
            (Formula::True, sr) => sr,
            (Formula::False, sr) => negate(sr),
            (sl, Formula::True) => sl,
            (sl, Formula::False) => negate(sl),
            (sl, sr) => Formula::iff(sl, sr),
        },
    }
}

/// Negation with constant folding and double-negation removal.
fn negate(f: Formula) -> Formula {
    match f {
        Formula::True => Formula::False,
        Formula::False => Formula::True,
        Formula::Not(c) => *c,
        other => Formula::not(other),
    }
}

struct Clausifier {
    clauses: Vec<Clause>,
    defs: HashMap<Formula, Literal>,
    used: HashSet<String>,
    counter: usize,
}

impl Clausifier {
    fn new(f: &Formula) -> Clausifier {
        Clausifier {
            clauses: Vec::new(),
            defs: HashMap::new(),
            used: f.vars().iter().map(|v| v.name().to_string()).collect(),
            counter: 0,
        }
    }

    fn fresh(&mut self) -> Literal {
        loop {
            self.counter += 1;
            let name = format!("__t{}", self.counter);
            if self.used.insert(name.clone()) {
                return Literal::positive(Var::new(name).unwrap());
            }
        }
    }

    /// The literal standing for `f`, defining a fresh variable for composite
    /// subformulae. Structurally equal subformulae share one definition.
    fn lit(&mut self, f: &Formula) -> Literal {
        match f {
            Formula::Var(v) => Literal::positive(v.clone()),
            Formula::Not(c) => self.lit(c).negated(),
            Formula::True | Formula::False => {
                unreachable!("constants are removed by simplification")
            }
            _ => {
                if let Some(d) = self.defs.get(f) {
                    return d.clone();
                }
                let d = match f {
                    Formula::And(cs) => {
                        let lits: Vec<Literal> = cs.iter().map(|c| self.lit(c)).collect();
                        let d = self.fresh();
                        for l in &lits {
                            self.clauses.push(Clause::new([d.negated(), l.clone()]));
                        }
                        let mut back = vec![d.clone()];
                        back.extend(lits.iter().map(Literal::negated));
                        self.clauses.push(Clause::new(back));
                        d
                    }
                    Formula::Or(cs) => {
                        let lits: Vec<Literal> = cs.iter().map(|c| self.lit(c)).collect();
                        let d = self.fresh();
                        for l in &lits {
                            self.clauses.push(Clause::new([d.clone(), l.negated()]));
                        }
                        let mut fwd = vec![d.negated()];
                        fwd.extend(lits.iter().cloned());
                        self.clauses.push(Clause::new(fwd));
                        d
                    }
                    Formula::Implies(l, r) => {
                        let (a, b) = (self.lit(l), self.lit(r));
                        let d = self.fresh();
                        self.clauses
                            .push(Clause::new([d.negated(), a.negated(), b.clone()]));
                        self.clauses.push(Clause::new([d.clone(), a]));
                        self.clauses.push(Clause::new([d.clone(), b.negated()]));
                        d
                    }
                    Formula::Iff(l, r) => {
                        let (a, b) = (self.lit(l), self.lit(r));
                        let d = self.fresh();
                        self.clauses
                            .push(Clause::new([d.negated(), a.negated(), b.clone()]));
                        self.clauses
                            .push(Clause::new([d.negated(), a.clone(), b.negated()]));
                        self.clauses
                            .push(Clause::new([d.clone(), a.clone(), b.clone()]));
                        self.clauses
                            .push(Clause::new([d.clone(), a.negated(), b.negated()]));
                        d
                    }
                    _ => unreachable!(),
                };
                self.defs.insert(f.clone(), d.clone());
                d
            }
        }
    }

    /// Asserts `f` at the top level, flattening conjunctions into separate
    /// clauses instead of defining a variable for them.
    fn assert(&mut self, f: &Formula) {
        match f {
            Formula::And(cs) => {
                for c in cs {
                    self.assert(c);
                }
            }
            Formula::Or(cs) => {
                let lits: Vec<Literal> = cs.iter().map(|c| self.lit(c)).collect();
                self.clauses.push(Clause::new(lits));
            }
            Formula::Implies(l, r) => {
                let clause = Clause::new([self.lit(l).negated(), self.lit(r)]);
                self.clauses.push(clause);
            }
            Formula::Iff(l, r) => {
                let (a, b) = (self.lit(l), self.lit(r));
                self.clauses.push(Clause::new([a.negated(), b.clone()]));
                self.clauses.push(Clause::new([a, b.negated()]));
            }
            _ => {
                let l = self.lit(f);
                self.clauses.push(Clause::new([l]));
            }
        }
    }
}

/// Definitional conversion to clause form; see the module documentation.
///
/// Fresh variables are named `__t1`, `__t2`, … skipping any names already
/// present in the formula.
pub fn to_cnf(f: &Formula) -> Cnf {
    match simplify(f) {
        Formula::True => Cnf::empty(),
        Formula::False => Cnf::new(vec![Clause::empty()]),
        s => {
            let mut cx = Clausifier::new(&s);
            cx.assert(&s);
            Cnf::new(cx.clauses)
        }
    }
}

/// Negation normal form: only conjunctions, disjunctions and literals.
/// `polarity` false builds the NNF of the negation.
fn nnf(f: &Formula, polarity: bool) -> Formula {
    match f {
        Formula::Var(v) => {
            if polarity {
                Formula::Var(v.clone())
            } else {
                Formula::not(Formula::Var(v.clone()))
            }
        }
        Formula::Not(c) => nnf(c, !polarity),
        Formula::And(cs) => {
            let parts = cs.iter().map(|c| nnf(c, polarity)).collect();
            if polarity {
                Formula::and(parts)
            } else {
                Formula::or(parts)
            }
        }
        Formula::Or(cs) => {
            let parts = cs.iter().map(|c| nnf(c, polarity)).collect();
            if polarity {
                Formula::or(parts)
            } else {
                Formula::and(parts)
            }
        }
        Formula::Implies(l, r) => {
            if polarity {
                Formula::or(vec![nnf(l, false), nnf(r, true)])
            } else {
                Formula::and(vec![nnf(l, true), nnf(r, false)])
            }
        }
        Formula::Iff(l, r) => {
            if polarity {
                Formula::or(vec![
                    Formula::and(vec![nnf(l, true), nnf(r, true)]),
                    Formula::and(vec![nnf(l, false), nnf(r, false)]),
                ])
            } else {
                Formula::and(vec![
                    Formula::or(vec![nnf(l, true), nnf(r, true)]),
                    Formula::or(vec![nnf(l, false), nnf(r, false)]),
                ])
            }
        }
        Formula::True | Formula::False => unreachable!("constants are removed by simplification"),
    }
}

/// Clause sets of an NNF formula, distributing ∨ over ∧.
fn distribute(f: &Formula) -> Vec<Clause> {
    match f {
        Formula::And(cs) => cs.iter().flat_map(distribute).collect(),
        Formula::Or(cs) => {
            let mut acc: Vec<Clause> = vec![Clause::empty()];
            for c in cs {
                let rhs = distribute(c);
                let mut next = Vec::with_capacity(acc.len() * rhs.len());
                for left in &acc {
                    for right in &rhs {
                        next.push(Clause::new(left.iter().chain(right.iter()).cloned()));
                    }
                }
                acc = next;
            }
            acc
        }
        Formula::Var(v) => vec![Clause::new([Literal::positive(v.clone())])],
        Formula::Not(c) => match c.as_ref() {
            Formula::Var(v) => vec![Clause::new([Literal::negative(v.clone())])],
            _ => unreachable!("distribution input is in negation normal form"),
        },
        _ => unreachable!("distribution input is in negation normal form"),
    }
}

/// Equivalence-preserving conversion to clause form by distribution, for
/// formulae over at most [`DISTRIBUTION_VAR_CAP`] variables.
///
/// The result mentions only variables of the input and is logically
/// equivalent to it; duplicate clauses are dropped, tautological clauses are
/// kept.
pub fn to_cnf_equiv(f: &Formula) -> Result<Cnf> {
    let s = simplify(f);
    match s {
        Formula::True => Ok(Cnf::empty()),
        Formula::False => Ok(Cnf::new(vec![Clause::empty()])),
        s => {
            let vars = s.vars().len();
            if vars > DISTRIBUTION_VAR_CAP {
                return Err(Error::DistributionCap {
                    vars,
                    cap: DISTRIBUTION_VAR_CAP,
                });
            }
            let mut seen = BTreeSet::new();
            let clauses = distribute(&nnf(&s, true))
                .into_iter()
                .filter(|c| seen.insert(c.clone()))
                .collect();
            Ok(Cnf::new(clauses))
        }
    }
}
