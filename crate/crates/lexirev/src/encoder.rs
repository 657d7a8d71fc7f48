//! Reduction of sequence equivalence to propositional satisfiability.
//!
//! Two sequences induce the same order exactly when no pair of models is
//! compared differently. The encoding quantifies over such a pair with two
//! fresh copies of the alphabet: the Y-copy stands for the left model `i`,
//! the Z-copy for the right model `j`. Per sequence entry, two selector
//! variables capture the only two facts the lexicographic recursion consumes
//! — whether `i` is strictly below `j` at that entry, and whether they tie —
//! and a chain of nested disjunctions reproduces the recursion itself. Two
//! result variables `a` and `b` name the verdicts of the two sequences, and
//! the final conjunct demands they disagree. The whole formula is therefore
//! satisfiable iff the sequences are not equivalent, and any satisfying
//! assignment decodes (via Y and Z) to a concrete witness pair.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::formula::{rename, to_cnf, Alphabet, Formula, Model, Var};
use crate::semantics::{Equivalence, RevisionSequence, Witness};
use crate::solver::{solve_with_priority, PartialAssignment};
use crate::{Error, Result};

/// The fresh variables backing one encoding, grouped by role.
///
/// All families are pairwise disjoint and disjoint from the original
/// alphabet, guaranteed by the reserved `__` prefix (rejected in parsed
/// input and checked against programmatic alphabets on construction).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodingContext {
    x_vars: Vec<Var>,
    y_vars: Vec<Var>,
    z_vars: Vec<Var>,
    m_vars: Vec<Var>,
    e_vars: Vec<Var>,
    n_vars: Vec<Var>,
    f_vars: Vec<Var>,
    a_var: Var,
    b_var: Var,
}

impl EncodingContext {
    /// Fresh variables for an alphabet and two sequence lengths.
    ///
    /// `left_len` and `right_len` count the entries of the two sequences
    /// after padding (see [`build_diff`]).
    pub fn new(alphabet: &Alphabet, left_len: usize, right_len: usize) -> Result<EncodingContext> {
        for x in alphabet.iter() {
            if x.name().starts_with("__") {
                return Err(Error::ReservedVarName(x.name().to_string()));
            }
        }
        let fresh = |name: String| Var::new(name).expect("generated names are valid identifiers");
        let per_var = |prefix: &str| -> Vec<Var> {
            alphabet
                .iter()
                .map(|x| fresh(format!("__{}_{}", prefix, x.name())))
                .collect()
        };
        let per_index = |prefix: &str, len: usize| -> Vec<Var> {
            (1..=len)
                .map(|i| fresh(format!("__{prefix}_{i}")))
                .collect()
        };
        Ok(EncodingContext {
            x_vars: alphabet.iter().cloned().collect(),
            y_vars: per_var("y"),
            z_vars: per_var("z"),
            m_vars: per_index("m", left_len),
            e_vars: per_index("e", left_len),
            n_vars: per_index("n", right_len),
            f_vars: per_index("f", right_len),
            a_var: fresh("__a".into()),
            b_var: fresh("__b".into()),
        })
    }

    pub fn x_vars(&self) -> &[Var] {
        &self.x_vars
    }

    pub fn y_vars(&self) -> &[Var] {
        &self.y_vars
    }

    pub fn z_vars(&self) -> &[Var] {
        &self.z_vars
    }

    pub fn m_vars(&self) -> &[Var] {
        &self.m_vars
    }

    pub fn e_vars(&self) -> &[Var] {
        &self.e_vars
    }

    pub fn n_vars(&self) -> &[Var] {
        &self.n_vars
    }

    pub fn f_vars(&self) -> &[Var] {
        &self.f_vars
    }

    pub fn a_var(&self) -> &Var {
        &self.a_var
    }

    pub fn b_var(&self) -> &Var {
        &self.b_var
    }

    fn y_mapping(&self) -> BTreeMap<Var, Var> {
        self.x_vars
            .iter()
            .cloned()
            .zip(self.y_vars.iter().cloned())
            .collect()
    }

    fn z_mapping(&self) -> BTreeMap<Var, Var> {
        self.x_vars
            .iter()
            .cloned()
            .zip(self.z_vars.iter().cloned())
            .collect()
    }
}

/// The encoded formula together with its variable bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffEncoding {
    pub formula: Formula,
    pub context: EncodingContext,
}

fn rename_fresh(f: &Formula, mapping: &BTreeMap<Var, Var>) -> Formula {
    rename(f, mapping).expect("renaming into fresh disjoint variables is injective")
}

/// True exactly when the Y-model is strictly below the Z-model under one
/// entry: the entry holds in the Y-copy and fails in the Z-copy.
pub fn strict_formula(entry: &Formula, ctx: &EncodingContext) -> Formula {
    Formula::and(vec![
        rename_fresh(entry, &ctx.y_mapping()),
        Formula::not(rename_fresh(entry, &ctx.z_mapping())),
    ])
}

/// True exactly when the two models tie under one entry: the entry holds in
/// both copies or in neither.
pub fn equiv_formula(entry: &Formula, ctx: &EncodingContext) -> Formula {
    Formula::iff(
        rename_fresh(entry, &ctx.y_mapping()),
        rename_fresh(entry, &ctx.z_mapping()),
    )
}

/// The lexicographic recursion over selector variables: less-or-equal holds
/// when some entry is strict and every earlier entry ties —
/// `m1 ∨ (e1 ∧ (m2 ∨ (e2 ∧ …)))`, ending in `… ∨ ep` and collapsing to the
/// true-constant for empty lists (an empty sequence orders every pair).
pub fn order_formula(m: &[Var], e: &[Var]) -> Result<Formula> {
    if m.len() != e.len() {
        return Err(Error::SelectorLength {
            m: m.len(),
            e: e.len(),
        });
    }
    fn level(m: &[Var], e: &[Var]) -> Formula {
        match (m.split_first(), e.split_first()) {
            (None, None) => Formula::True,
            (Some((m1, m_rest)), Some((e1, e_rest))) => {
                let tie = match level(m_rest, e_rest) {
                    Formula::True => Formula::Var(e1.clone()),
                    tail => Formula::and(vec![Formula::Var(e1.clone()), tail]),
                };
                Formula::or(vec![Formula::Var(m1.clone()), tie])
            }
            _ => unreachable!("lengths checked equal"),
        }
    }
    Ok(level(m, e))
}

fn padded(formulas: &[Formula], len: usize) -> Vec<Formula> {
    let filler = formulas.last().cloned().unwrap_or(Formula::True);
    let mut out = formulas.to_vec();
    out.resize(len, filler);
    out
}

/// The full difference formula for two sequences over one alphabet:
/// satisfiable iff they are not equivalent.
///
/// The shorter sequence is first padded to the longer one's length by
/// replicating its own last entry (the true-constant when empty); repeating
/// the last entry never changes the induced order, and equal lengths keep
/// the selector families aligned.
pub fn build_diff(s: &RevisionSequence, r: &RevisionSequence) -> Result<DiffEncoding> {
    if s.alphabet().as_ref() != r.alphabet().as_ref() {
        return Err(Error::AlphabetMismatch(
            "sequences must share one alphabet to be encoded".into(),
        ));
    }
    let len = s.len().max(r.len());
    let left = padded(s.formulas(), len);
    let right = padded(r.formulas(), len);
    let ctx = EncodingContext::new(s.alphabet(), len, len)?;

    let mut parts = Vec::with_capacity(4 * len + 3);
    for (m_i, entry) in ctx.m_vars.iter().zip(&left) {
        parts.push(Formula::iff(
            Formula::Var(m_i.clone()),
            strict_formula(entry, &ctx),
        ));
    }
    for (e_i, entry) in ctx.e_vars.iter().zip(&left) {
        parts.push(Formula::iff(
            Formula::Var(e_i.clone()),
            equiv_formula(entry, &ctx),
        ));
    }
    parts.push(Formula::iff(
        Formula::Var(ctx.a_var.clone()),
        order_formula(&ctx.m_vars, &ctx.e_vars)?,
    ));
    for (n_i, entry) in ctx.n_vars.iter().zip(&right) {
        parts.push(Formula::iff(
            Formula::Var(n_i.clone()),
            strict_formula(entry, &ctx),
        ));
    }
    for (f_i, entry) in ctx.f_vars.iter().zip(&right) {
        parts.push(Formula::iff(
            Formula::Var(f_i.clone()),
            equiv_formula(entry, &ctx),
        ));
    }
    parts.push(Formula::iff(
        Formula::Var(ctx.b_var.clone()),
        order_formula(&ctx.n_vars, &ctx.f_vars)?,
    ));
    parts.push(Formula::not(Formula::iff(
        Formula::Var(ctx.a_var.clone()),
        Formula::Var(ctx.b_var.clone()),
    )));

    Ok(DiffEncoding {
        formula: Formula::and(parts),
        context: ctx,
    })
}

/// Reads the model the solver found back into a witness pair, taking only
/// the Y and Z families; a copy variable the conversion dropped (constant
/// subformulas, unused alphabet variables) is unconstrained, so any fixed
/// default — false here — stays a valid witness.
fn decode_witness(
    assignment: &PartialAssignment,
    ctx: &EncodingContext,
    alphabet: &Arc<Alphabet>,
) -> Witness {
    let read = |copies: &[Var]| -> Model {
        let values = copies
            .iter()
            .map(|v| assignment.get(v).unwrap_or(false))
            .collect();
        Model::new(alphabet.clone(), values).expect("copy families mirror the alphabet")
    };
    Witness {
        i: read(&ctx.y_vars),
        j: read(&ctx.z_vars),
    }
}

/// Branching order for the solver: verdict variables first, then the two
/// copies interleaved per alphabet variable. Deciding the verdicts early
/// lets unit propagation walk the selector chains instead of search.
fn branching_priority(ctx: &EncodingContext) -> Vec<Var> {
    let mut priority = vec![ctx.a_var.clone(), ctx.b_var.clone()];
    for (y, z) in ctx.y_vars.iter().zip(&ctx.z_vars) {
        priority.push(y.clone());
        priority.push(z.clone());
    }
    priority
}

/// Decides equivalence of two sequences by satisfiability of their
/// difference formula; a satisfying model decodes to the witness pair.
pub fn check_equivalence(s: &RevisionSequence, r: &RevisionSequence) -> Result<Equivalence> {
    let enc = build_diff(s, r)?;
    let cnf = to_cnf(&enc.formula);
    let result = solve_with_priority(&cnf, &branching_priority(&enc.context));
    Ok(match result.model() {
        None => Equivalence::Equivalent,
        Some(assignment) => {
            Equivalence::Differs(decode_witness(assignment, &enc.context, s.alphabet()))
        }
    })
}

/// Whether dropping the oldest entry preserves the order: equivalence of the
/// sequence with and without its last formula.
pub fn check_redundant_last(s: &RevisionSequence) -> Result<Equivalence> {
    if s.is_empty() {
        return Err(Error::EmptySequence);
    }
    let shorter = s.without_position(s.len())?;
    check_equivalence(s, &shorter)
}
