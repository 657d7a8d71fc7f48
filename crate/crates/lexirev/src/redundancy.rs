//! Redundancy at any position, engine-dispatched equivalence, and history
//! minimization.
//!
//! This is the user-facing layer over the other modules: equivalence of two
//! sequences can run through the SAT reduction or the brute-force
//! enumerator (with an automatic choice by instance size), redundancy of a
//! single position is equivalence against the sequence with that position
//! removed, and `minimize` drives repeated redundancy checks into a greedy
//! shortening pass.

use crate::encoder;
use crate::formula::{formula_to_clauses, is_horn, to_cnf, Formula, DEFAULT_VAR_CAP};
use crate::horn::{redundant_two_horn, HornFormula};
use crate::semantics::{equivalent_bruteforce, Equivalence, RevisionSequence};
use crate::solver::solve;
use crate::Result;

/// Decision procedure selection for sequence equivalence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    /// The DIFF encoding handed to the SAT solver.
    Sat,
    /// Model enumeration over the shared alphabet.
    Bruteforce,
    /// Bruteforce for small instances, SAT beyond [`AUTO_BRUTEFORCE_BUDGET`].
    Auto,
}

/// `Auto` enumerates models only while `4^n · total-formula-size` stays
/// within this budget (`n` the alphabet size): enumeration costs one order
/// comparison per model pair, and each comparison walks the formulas.
pub const AUTO_BRUTEFORCE_BUDGET: u64 = 10_000_000;

fn formula_size(f: &Formula) -> u64 {
    match f {
        Formula::True | Formula::False | Formula::Var(_) => 1,
        Formula::Not(inner) => 1 + formula_size(inner),
        Formula::And(parts) | Formula::Or(parts) => 1 + parts.iter().map(formula_size).sum::<u64>(),
        Formula::Implies(lhs, rhs) | Formula::Iff(lhs, rhs) => {
            1 + formula_size(lhs) + formula_size(rhs)
        }
    }
}

fn bruteforce_cost(s: &RevisionSequence, r: &RevisionSequence) -> u64 {
    let n = s.alphabet().len() as u32;
    let total_size: u64 = s
        .formulas()
        .iter()
        .chain(r.formulas())
        .map(formula_size)
        .sum();
    match 1u64.checked_shl(2 * n) {
        Some(pairs) => pairs.saturating_mul(total_size.max(1)),
        None => u64::MAX,
    }
}

/// Equivalence of two sequences over one alphabet, by the chosen engine.
///
/// Verdicts agree across engines; witnesses need not — each engine returns
/// its own deterministic counterexample pair.
pub fn equivalent(
    s: &RevisionSequence,
    r: &RevisionSequence,
    engine: Engine,
) -> Result<Equivalence> {
    equivalent_with_cap(s, r, engine, DEFAULT_VAR_CAP)
}

/// The concrete engine `Auto` resolves to for this instance; `Sat` and
/// `Bruteforce` resolve to themselves.
pub fn resolve_engine(s: &RevisionSequence, r: &RevisionSequence, engine: Engine) -> Engine {
    match engine {
        Engine::Auto => {
            if bruteforce_cost(s, r) <= AUTO_BRUTEFORCE_BUDGET {
                Engine::Bruteforce
            } else {
                Engine::Sat
            }
        }
        concrete => concrete,
    }
}

/// Like [`equivalent`], with an explicit variable cap for enumeration.
pub fn equivalent_with_cap(
    s: &RevisionSequence,
    r: &RevisionSequence,
    engine: Engine,
    var_cap: usize,
) -> Result<Equivalence> {
    match resolve_engine(s, r, engine) {
        Engine::Sat => encoder::check_equivalence(s, r),
        Engine::Bruteforce => equivalent_bruteforce(s, r, var_cap),
        Engine::Auto => unreachable!("resolve_engine returns a concrete engine"),
    }
}

/// Whether removing position `k` (1-based, 1 = most recent) preserves the
/// induced order, decided through the SAT reduction.
pub fn is_redundant_at(s: &RevisionSequence, k: usize) -> Result<Equivalence> {
    let shorter = s.without_position(k)?;
    encoder::check_equivalence(s, &shorter)
}

/// The outcome of greedy history shortening.
#[derive(Debug, Clone)]
pub struct MinimizationReport {
    pub original: RevisionSequence,
    pub minimized: RevisionSequence,
    /// Positions removed, as 1-based indices into the original sequence,
    /// in removal order.
    pub removed_positions: Vec<usize>,
    /// Number of equivalence checks spent, the final verification
    /// included.
    pub checks_performed: usize,
}

/// Greedily removes redundant positions, oldest first, rescanning until a
/// full pass removes nothing. Each removal is individually verified, so
/// the result is equivalent to the input; it need not be a shortest
/// equivalent subsequence.
pub fn minimize(s: &RevisionSequence) -> Result<MinimizationReport> {
    let original = s.clone();
    let mut current = s.clone();
    // Original 1-based index of each surviving position.
    let mut alive: Vec<usize> = (1..=s.len()).collect();
    let mut removed_positions = Vec::new();
    let mut checks_performed = 0;

    loop {
        let mut removed_this_pass = false;
        for k in (1..=current.len()).rev() {
            checks_performed += 1;
            if is_redundant_at(&current, k)?.is_equivalent() {
                current = current.without_position(k)?;
                removed_positions.push(alive.remove(k - 1));
                removed_this_pass = true;
            }
        }
        if !removed_this_pass {
            break;
        }
    }

    checks_performed += 1;
    assert!(
        encoder::check_equivalence(&original, &current)?.is_equivalent(),
        "every removal preserved equivalence, so the fixpoint must too"
    );

    Ok(MinimizationReport {
        original,
        minimized: current,
        removed_positions,
        checks_performed,
    })
}

fn as_horn(f: &Formula) -> Option<HornFormula> {
    let cnf = formula_to_clauses(f).ok()?;
    if cnf.clauses().iter().all(is_horn) {
        Some(HornFormula::new(cnf).expect("clauses were just checked Horn"))
    } else {
        None
    }
}

fn unsatisfiable(f: &Formula) -> bool {
    !solve(&to_cnf(f)).is_satisfiable()
}

/// Whether the older entry of the two-entry sequence `[f1, f2]` is
/// redundant. Horn-shaped inputs take the polynomial route; anything else
/// is decided by testing the four sufficient-and-necessary shapes of `f2`
/// with the solver: unsatisfiable, valid, equivalent to `f1`, equivalent
/// to `¬f1`.
pub fn check_redundant_two(f1: &Formula, f2: &Formula) -> bool {
    if let (Some(h1), Some(h2)) = (as_horn(f1), as_horn(f2)) {
        return redundant_two_horn(&h1, &h2);
    }
    unsatisfiable(f2)
        || unsatisfiable(&Formula::not(f2.clone()))
        || unsatisfiable(&Formula::not(Formula::iff(f1.clone(), f2.clone())))
        || unsatisfiable(&Formula::not(Formula::iff(
            f2.clone(),
            Formula::not(f1.clone()),
        )))
}

/// Entailment `premise ⊨ conclusion` decided by refuting
/// `premise ∧ ¬conclusion`. Shaped as a closure-style oracle so callers
/// that sweep many queries can pass it where an
/// [`EntailmentOracle`](crate::semantics::EntailmentOracle) is expected.
pub fn solver_entails(premise: &Formula, conclusion: &Formula) -> Result<bool> {
    Ok(unsatisfiable(&Formula::and(vec![
        premise.clone(),
        Formula::not(conclusion.clone()),
    ])))
}
