//! Reference semantics of lexicographic revision sequences.
//!
//! A sequence `[S_1, …, S_m]` lists revisions from most recent (`S_1`) to
//! oldest (`S_m`). It preorders models by `i ≤ j` iff the sequence is empty,
//! or `i ≤ j` under `S_1` and, unless that comparison is strict, `i ≤ j`
//! under the rest. A single formula orders `i ≤ j` iff `i ⊨ F` or `j ⊭ F`.
//!
//! Everything here works by explicit evaluation over enumerated models, so it
//! is exponential in the alphabet — by design. This module is the oracle the
//! satisfiability-based engine is tested against, not the fast path.

use std::sync::Arc;

use crate::formula::{enumerate_models, eval, Alphabet, Formula, Model};
use crate::{Error, Result};

/// Default bound on the `2^(m-1)` sweep of [`redundant_last_by_conjunctions`].
pub const DEFAULT_CONJUNCTION_CAP: usize = 20;

/// A list of revision formulae with a fixed alphabet.
///
/// Position 1 holds the most recent revision. The alphabet must cover every
/// formula and may be larger: two sequences only compare over a shared
/// alphabet, so the extra variables matter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RevisionSequence {
    formulas: Vec<Formula>,
    alphabet: Arc<Alphabet>,
}

impl RevisionSequence {
    /// Builds a sequence, checking that `alphabet` covers every formula.
    pub fn new(formulas: Vec<Formula>, alphabet: Alphabet) -> Result<RevisionSequence> {
        for (k, f) in formulas.iter().enumerate() {
            for v in f.vars() {
                if !alphabet.contains(&v) {
                    return Err(Error::OutsideAlphabet { pos: k + 1, var: v });
                }
            }
        }
        Ok(RevisionSequence {
            formulas,
            alphabet: Arc::new(alphabet),
        })
    }

    /// A sequence over exactly the variables its formulae mention, in order
    /// of first appearance.
    pub fn over_own_vars(formulas: Vec<Formula>) -> RevisionSequence {
        let alphabet = Alphabet::from_formulas(formulas.iter());
        RevisionSequence {
            formulas,
            alphabet: Arc::new(alphabet),
        }
    }

    /// The same formulae over a (larger) alphabet.
    pub fn with_alphabet(&self, alphabet: Alphabet) -> Result<RevisionSequence> {
        RevisionSequence::new(self.formulas.clone(), alphabet)
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    /// This sequence without the entry at 1-based `pos`.
    pub fn without_position(&self, pos: usize) -> Result<RevisionSequence> {
        if pos == 0 || pos > self.len() {
            return Err(Error::PositionOutOfRange {
                pos,
                len: self.len(),
            });
        }
        let mut formulas = self.formulas.clone();
        formulas.remove(pos - 1);
        Ok(RevisionSequence {
            formulas,
            alphabet: self.alphabet.clone(),
        })
    }

    /// `self` followed by the (older) revisions of `other`; the alphabet is
    /// the union of both.
    pub fn concat(&self, other: &RevisionSequence) -> RevisionSequence {
        let mut formulas = self.formulas.clone();
        formulas.extend(other.formulas.iter().cloned());
        RevisionSequence {
            formulas,
            alphabet: Arc::new(self.alphabet.union(&other.alphabet)),
        }
    }
}

/// Result of comparing two models under a sequence's preorder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderVerdict {
    StrictlyLess,
    Equivalent,
    StrictlyGreater,
}

/// Two models that one order separates and the other does not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub i: Model,
    pub j: Model,
}

/// Verdict of an equivalence check between two sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent,
    Differs(Witness),
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Equivalence::Equivalent => None,
            Equivalence::Differs(w) => Some(w),
        }
    }
}

fn check_same_alphabet(i: &Model, j: &Model) -> Result<()> {
    if i.alphabet() != j.alphabet() {
        return Err(Error::AlphabetMismatch(
            "models range over different alphabets".into(),
        ));
    }
    Ok(())
}

/// `i ≤ j` under a single formula: `i ⊨ f` or `j ⊭ f`.
pub fn leq_formula(i: &Model, j: &Model, f: &Formula) -> Result<bool> {
    check_same_alphabet(i, j)?;
    Ok(eval(f, i)? || !eval(f, j)?)
}

fn leq_slice(i: &Model, j: &Model, formulas: &[Formula]) -> Result<bool> {
    match formulas.split_first() {
        None => Ok(true),
        Some((head, rest)) => {
            let fwd = eval(head, i)? || !eval(head, j)?;
            if !fwd {
                return Ok(false);
            }
            let bwd = eval(head, j)? || !eval(head, i)?;
            if !bwd {
                // Strict at this revision; the rest cannot overturn it.
                return Ok(true);
            }
            leq_slice(i, j, rest)
        }
    }
}

/// `i ≤ j` under the lexicographic preorder of `s`.
pub fn leq(i: &Model, j: &Model, s: &RevisionSequence) -> Result<bool> {
    check_same_alphabet(i, j)?;
    if i.alphabet().as_ref() != s.alphabet().as_ref() {
        return Err(Error::AlphabetMismatch(
            "models range over a different alphabet than the sequence".into(),
        ));
    }
    leq_slice(i, j, &s.formulas)
}

/// Three-way comparison of `i` and `j` under `s`.
pub fn compare(i: &Model, j: &Model, s: &RevisionSequence) -> Result<OrderVerdict> {
    Ok(match (leq(i, j, s)?, leq(j, i, s)?) {
        (true, true) => OrderVerdict::Equivalent,
        (true, false) => OrderVerdict::StrictlyLess,
        (false, true) => OrderVerdict::StrictlyGreater,
        (false, false) => unreachable!("lexicographic preorders are total"),
    })
}

/// Decides whether `s` and `r` induce the same preorder by enumerating every
/// model pair over their shared alphabet.
///
/// The first differing pair in enumeration order is reported, oriented so
/// that `witness.i ≤ witness.j` holds under `s`; that makes the witness
/// reproducible and places the sequence given first in the affirmative role.
pub fn equivalent_bruteforce(
    s: &RevisionSequence,
    r: &RevisionSequence,
    var_cap: usize,
) -> Result<Equivalence> {
    if s.alphabet().as_ref() != r.alphabet().as_ref() {
        return Err(Error::AlphabetMismatch(
            "sequences must share one alphabet to be compared".into(),
        ));
    }
    let models: Vec<Model> = enumerate_models(s.alphabet(), var_cap)?.collect();

    // Truth tables, formula-major: tables_*[k][m] = model m satisfies
    // formula k. Lets the pair loop run on plain lookups.
    let table = |seq: &RevisionSequence| -> Result<Vec<Vec<bool>>> {
        seq.formulas
            .iter()
            .map(|f| models.iter().map(|m| eval(f, m)).collect())
            .collect()
    };
    let tab_s = table(s)?;
    let tab_r = table(r)?;

    let leq_t = |tab: &[Vec<bool>], i: usize, j: usize| -> bool {
        for row in tab {
            match (row[i], row[j]) {
                (false, true) => return false,
                (true, false) => return true,
                _ => {}
            }
        }
        true
    };

    for i in 0..models.len() {
        for j in 0..models.len() {
            let under_s = leq_t(&tab_s, i, j);
            if under_s != leq_t(&tab_r, i, j) {
                let (wi, wj) = if under_s { (i, j) } else { (j, i) };
                return Ok(Equivalence::Differs(Witness {
                    i: models[wi].clone(),
                    j: models[wj].clone(),
                }));
            }
        }
    }
    Ok(Equivalence::Equivalent)
}

/// The conjunction selecting one sign for every member of `s`: entry `k` is
/// taken positively where `bits[k]` holds and negated otherwise. The empty
/// sequence yields `true`.
pub fn q_conjunction(s: &RevisionSequence, bits: &[bool]) -> Result<Formula> {
    if bits.len() != s.len() {
        return Err(Error::BitsLength {
            expected: s.len(),
            got: bits.len(),
        });
    }
    Ok(Formula::and(
        s.formulas
            .iter()
            .zip(bits)
            .map(|(f, &b)| {
                if b {
                    f.clone()
                } else {
                    Formula::not(f.clone())
                }
            })
            .collect(),
    ))
}

/// Answers entailment questions for [`redundant_last_by_conjunctions`].
///
/// An implementation decides whether `premise ⊨ conclusion`; the procedure
/// is agnostic about how (truth tables, the SAT solver, unit propagation…).
pub trait EntailmentOracle {
    fn entails(&mut self, premise: &Formula, conclusion: &Formula) -> Result<bool>;
}

impl<F> EntailmentOracle for F
where
    F: FnMut(&Formula, &Formula) -> Result<bool>,
{
    fn entails(&mut self, premise: &Formula, conclusion: &Formula) -> Result<bool> {
        self(premise, conclusion)
    }
}

/// Whether the oldest entry of `s` is redundant, decided by the
/// sign-conjunction characterization: it is iff every sign conjunction `Q`
/// over the remaining entries entails the oldest entry or its negation.
///
/// Sweeps all `2^(m-1)` conjunctions, so the remainder length is capped.
pub fn redundant_last_by_conjunctions(
    s: &RevisionSequence,
    oracle: &mut dyn EntailmentOracle,
    conjunction_cap: usize,
) -> Result<bool> {
    if s.is_empty() {
        return Err(Error::EmptySequence);
    }
    let m = s.len();
    let prefix = &s.formulas[..m - 1];
    if prefix.len() > conjunction_cap {
        return Err(Error::ConjunctionCap {
            formulas: prefix.len(),
            cap: conjunction_cap,
        });
    }
    let last = &s.formulas[m - 1];
    let negated_last = Formula::not(last.clone());

    for mask in 0..(1u64 << prefix.len()) {
        let q = Formula::and(
            prefix
                .iter()
                .enumerate()
                .map(|(k, f)| {
                    if mask >> k & 1 == 1 {
                        f.clone()
                    } else {
                        Formula::not(f.clone())
                    }
                })
                .collect(),
        );
        if !oracle.entails(&q, last)? && !oracle.entails(&q, &negated_last)? {
            return Ok(false);
        }
    }
    Ok(true)
}
