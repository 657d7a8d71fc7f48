//! Test support for the lexirev workspace: an evaluator written
//! independently of the library's own, truth-table decision helpers built
//! on it, seeded random generators, and the fixed pools the exhaustive
//! suites sweep.
//!
//! Everything here is deterministic: generators take a caller-supplied
//! seed, and the pools are frozen so failures replay exactly.

use std::sync::Arc;

use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use lexirev::formula::{Alphabet, Clause, Cnf, Formula, Literal, Model, Var};

/// A fresh deterministic RNG for one test (or one case within a test).
pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

fn var(name: &str) -> Var {
    Var::new(name).expect("test variable names are valid")
}

/// `prefix0 .. prefix(n-1)`, the variable supply for generated inputs.
pub fn numbered_vars(prefix: &str, n: usize) -> Vec<Var> {
    (0..n).map(|i| var(&format!("{prefix}{i}"))).collect()
}

// ---------------------------------------------------------------------------
// Independent evaluation
// ---------------------------------------------------------------------------

/// Structural truth-table evaluation, kept separate from the library's
/// evaluator on purpose: the two must agree without sharing code. Panics on
/// a variable the model does not cover — an oracle should fail loudly.
pub fn tt_eval(f: &Formula, m: &Model) -> bool {
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Var(v) => m.get(v).expect("model covers the formula"),
        Formula::Not(g) => !tt_eval(g, m),
        Formula::And(parts) => parts.iter().all(|g| tt_eval(g, m)),
        Formula::Or(parts) => parts.iter().any(|g| tt_eval(g, m)),
        Formula::Implies(lhs, rhs) => !tt_eval(lhs, m) || tt_eval(rhs, m),
        Formula::Iff(lhs, rhs) => tt_eval(lhs, m) == tt_eval(rhs, m),
    }
}

pub fn tt_eval_clause(c: &Clause, m: &Model) -> bool {
    c.iter().any(|lit| {
        let value = m.get(lit.var()).expect("model covers the clause");
        value == lit.is_positive()
    })
}

pub fn tt_eval_cnf(f: &Cnf, m: &Model) -> bool {
    f.clauses().iter().all(|c| tt_eval_clause(c, m))
}

/// Every model over the alphabet, all-false first. Enumeration is capped at
/// 20 variables; the suites stay far below that.
pub fn all_models(alphabet: &Arc<Alphabet>) -> Vec<Model> {
    assert!(alphabet.len() <= 20, "oracle enumeration kept small");
    (0..1u64 << alphabet.len())
        .map(|index| Model::from_index(Arc::clone(alphabet), index))
        .collect()
}

fn shared_alphabet(formulas: &[&Formula]) -> Arc<Alphabet> {
    Arc::new(Alphabet::from_formulas(formulas.iter().copied()))
}

pub fn tt_satisfiable(f: &Formula) -> bool {
    let alphabet = shared_alphabet(&[f]);
    all_models(&alphabet).iter().any(|m| tt_eval(f, m))
}

pub fn tt_valid(f: &Formula) -> bool {
    let alphabet = shared_alphabet(&[f]);
    all_models(&alphabet).iter().all(|m| tt_eval(f, m))
}

/// Equivalence over the union of both variable sets.
pub fn tt_equivalent(f: &Formula, g: &Formula) -> bool {
    let alphabet = shared_alphabet(&[f, g]);
    all_models(&alphabet)
        .iter()
        .all(|m| tt_eval(f, m) == tt_eval(g, m))
}

/// Entailment `f ⊨ g` over the union of both variable sets.
pub fn tt_entails(f: &Formula, g: &Formula) -> bool {
    let alphabet = shared_alphabet(&[f, g]);
    all_models(&alphabet)
        .iter()
        .all(|m| !tt_eval(f, m) || tt_eval(g, m))
}

pub fn tt_satisfiable_cnf(f: &Cnf) -> bool {
    let alphabet = Arc::new(Alphabet::new(f.vars()));
    all_models(&alphabet).iter().any(|m| tt_eval_cnf(f, m))
}

/// Whether `f1 ≡ ¬f2`, over the union of both clause sets' variables.
pub fn tt_negation_equivalent(f1: &Cnf, f2: &Cnf) -> bool {
    let mut vars = f1.vars();
    for v in f2.vars() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    let alphabet = Arc::new(Alphabet::new(vars));
    all_models(&alphabet)
        .iter()
        .all(|m| tt_eval_cnf(f1, m) != tt_eval_cnf(f2, m))
}

// ---------------------------------------------------------------------------
// Seeded generators
// ---------------------------------------------------------------------------

/// A random formula of at most `budget` connectives over `vars`. Leaves are
/// mostly variables, with an occasional constant.
pub fn random_formula<R: Rng>(rng: &mut R, vars: &[Var], budget: usize) -> Formula {
    if budget == 0 || rng.gen_ratio(1, 4) {
        return match rng.gen_range(0..8) {
            0 => Formula::True,
            1 => Formula::False,
            _ => Formula::Var(vars[rng.gen_range(0..vars.len())].clone()),
        };
    }
    let child = budget - 1;
    match rng.gen_range(0..5) {
        0 => Formula::not(random_formula(rng, vars, child)),
        1 => Formula::and(vec![
            random_formula(rng, vars, child),
            random_formula(rng, vars, child),
        ]),
        2 => Formula::or(vec![
            random_formula(rng, vars, child),
            random_formula(rng, vars, child),
        ]),
        3 => Formula::implies(
            random_formula(rng, vars, child),
            random_formula(rng, vars, child),
        ),
        _ => Formula::iff(
            random_formula(rng, vars, child),
            random_formula(rng, vars, child),
        ),
    }
}

/// A nonempty sequence of random formulas, most recent first.
pub fn random_sequence<R: Rng>(
    rng: &mut R,
    vars: &[Var],
    max_len: usize,
    budget: usize,
) -> Vec<Formula> {
    let len = rng.gen_range(1..=max_len);
    (0..len)
        .map(|_| random_formula(rng, vars, budget))
        .collect()
}

/// A clause over `size` distinct variables with random polarities.
pub fn random_clause<R: Rng>(rng: &mut R, vars: &[Var], size: usize) -> Clause {
    Clause::new(
        sample(rng, vars.len(), size)
            .into_iter()
            .map(|i| Literal::new(vars[i].clone(), rng.gen_bool(0.5))),
    )
}

/// A random CNF of up to `max_clauses` clauses of 1..=3 distinct variables.
pub fn random_cnf<R: Rng>(rng: &mut R, vars: &[Var], max_clauses: usize) -> Cnf {
    let count = rng.gen_range(0..=max_clauses);
    Cnf::new(
        (0..count)
            .map(|_| {
                let size = rng.gen_range(1..=3.min(vars.len()));
                random_clause(rng, vars, size)
            })
            .collect(),
    )
}

/// A random Horn clause: distinct variables, at most one of them positive.
pub fn random_horn_clause<R: Rng>(rng: &mut R, vars: &[Var], size: usize) -> Clause {
    let chosen = sample(rng, vars.len(), size);
    let positive_slot = if rng.gen_bool(0.5) {
        Some(rng.gen_range(0..size))
    } else {
        None
    };
    Clause::new(
        chosen
            .into_iter()
            .enumerate()
            .map(|(slot, i)| Literal::new(vars[i].clone(), positive_slot == Some(slot))),
    )
}

/// A random Horn CNF of up to `max_clauses` clauses.
pub fn random_horn_cnf<R: Rng>(rng: &mut R, vars: &[Var], max_clauses: usize) -> Cnf {
    let count = rng.gen_range(0..=max_clauses);
    Cnf::new(
        (0..count)
            .map(|_| {
                let size = rng.gen_range(1..=3.min(vars.len()));
                random_horn_clause(rng, vars, size)
            })
            .collect(),
    )
}

/// A random 3-CNF: `clauses` clauses over exactly three distinct variables
/// each. Needs at least three variables to draw from.
pub fn random_three_cnf<R: Rng>(rng: &mut R, vars: &[Var], clauses: usize) -> Cnf {
    assert!(
        vars.len() >= 3,
        "three-literal clauses need three variables"
    );
    Cnf::new((0..clauses).map(|_| random_clause(rng, vars, 3)).collect())
}

// ---------------------------------------------------------------------------
// Frozen pools
// ---------------------------------------------------------------------------

fn parse(source: &str) -> Formula {
    lexirev::formula::parse_formula(source).expect("pool formulas parse")
}

/// The six-formula pool over {a, b} the exhaustive sequence sweeps use.
pub fn formula_pool() -> Vec<Formula> {
    ["a", "b", "!a", "a & b", "a | b", "a <-> b"]
        .iter()
        .map(|s| parse(s))
        .collect()
}

/// Every sequence of length 0..=`max_len` over the pool, as index tuples
/// mapped to formulas; 259 sequences for the six-formula pool at length 3.
pub fn sequence_pool(pool: &[Formula], max_len: usize) -> Vec<Vec<Formula>> {
    let mut sequences = vec![Vec::new()];
    let mut last_layer: Vec<Vec<Formula>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next_layer = Vec::with_capacity(last_layer.len() * pool.len());
        for stem in &last_layer {
            for f in pool {
                let mut extended = stem.clone();
                extended.push(f.clone());
                next_layer.push(extended);
            }
        }
        sequences.extend(next_layer.iter().cloned());
        last_layer = next_layer;
    }
    sequences
}

/// Ten Horn clauses over {a, b, c}: six units, three implications, and one
/// tautological clause to exercise stripping.
pub fn horn_clause_pool() -> Vec<Clause> {
    let lit = |name: &str, positive: bool| Literal::new(var(name), positive);
    vec![
        Clause::new([lit("a", true)]),
        Clause::new([lit("b", true)]),
        Clause::new([lit("c", true)]),
        Clause::new([lit("a", false)]),
        Clause::new([lit("b", false)]),
        Clause::new([lit("c", false)]),
        Clause::new([lit("a", false), lit("b", true)]),
        Clause::new([lit("b", false), lit("c", true)]),
        Clause::new([lit("a", false), lit("c", false)]),
        Clause::new([lit("a", true), lit("a", false)]),
    ]
}

/// Every CNF of at most `max_clauses` clauses drawn (without repetition)
/// from the pool; 176 formulas for the ten-clause pool at three clauses.
pub fn cnf_pool(pool: &[Clause], max_clauses: usize) -> Vec<Cnf> {
    let mut cnfs = Vec::new();
    let mut stack: Vec<(usize, Vec<Clause>)> = vec![(0, Vec::new())];
    while let Some((start, chosen)) = stack.pop() {
        cnfs.push(Cnf::new(chosen.clone()));
        if chosen.len() == max_clauses {
            continue;
        }
        for i in start..pool.len() {
            let mut extended = chosen.clone();
            extended.push(pool[i].clone());
            stack.push((i + 1, extended));
        }
    }
    cnfs
}

/// Ten clauses over {x, y, z} for solver sweeps: all six units plus four
/// mixed binary clauses.
pub fn solver_clause_pool() -> Vec<Clause> {
    let lit = |name: &str, positive: bool| Literal::new(var(name), positive);
    vec![
        Clause::new([lit("x", true)]),
        Clause::new([lit("y", true)]),
        Clause::new([lit("z", true)]),
        Clause::new([lit("x", false)]),
        Clause::new([lit("y", false)]),
        Clause::new([lit("z", false)]),
        Clause::new([lit("x", true), lit("y", true)]),
        Clause::new([lit("x", false), lit("z", true)]),
        Clause::new([lit("y", true), lit("z", false)]),
        Clause::new([lit("y", false), lit("z", false)]),
    ]
}
