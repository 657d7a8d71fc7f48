//! Property suite for the Horn procedures: the model-intersection closure
//! that makes them work, soundness of variable elimination, agreement of
//! the negation-equivalence loop with truth tables, agreement of the
//! two-entry redundancy decision with the SAT reduction, fidelity of the
//! hardness construction, and the near-linear scaling claim.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::Rng;

use lexirev::formula::{cnf_to_formula, Alphabet, Clause, Cnf, Formula, Literal, Model, Var};
use lexirev::horn::{
    build_hardness_instance, entailed_by_negvar, entails_var, horn_entails_clause, horn_neg_equiv,
    negativize, percent_remove, redundant_two_horn, HornFormula,
};
use lexirev::semantics::RevisionSequence;
use lexirev_testkit as kit;

fn horn(cnf: Cnf) -> HornFormula {
    HornFormula::new(cnf).unwrap()
}

fn tt_models_of(cnf: &Cnf) -> Vec<Model> {
    let alphabet = Arc::new(Alphabet::new(cnf.vars()));
    kit::all_models(&alphabet)
        .into_iter()
        .filter(|m| kit::tt_eval_cnf(cnf, m))
        .collect()
}

/// Closure under component-wise AND: the semantic property all the Horn
/// shortcuts rest on.
#[test]
fn horn_models_are_closed_under_intersection() {
    let vars = kit::numbered_vars("v", 6);
    let mut rng = kit::rng(61);
    for _ in 0..150 {
        let cnf = kit::random_horn_cnf(&mut rng, &vars, 6);
        let models = tt_models_of(&cnf);
        let alphabet = match models.first() {
            Some(m) => Arc::clone(m.alphabet()),
            None => continue,
        };
        for x in &models {
            for y in &models {
                let meet: Vec<bool> = x
                    .values()
                    .iter()
                    .zip(y.values())
                    .map(|(a, b)| *a && *b)
                    .collect();
                let meet = Model::new(Arc::clone(&alphabet), meet).unwrap();
                assert!(
                    kit::tt_eval_cnf(&cnf, &meet),
                    "intersection escapes the models of {cnf:?}"
                );
            }
        }
    }
}

/// A Horn formula entailing a positive clause of several literals must
/// already entail one of them outright.
#[test]
fn entailed_positive_clauses_collapse_to_a_literal() {
    let vars = kit::numbered_vars("v", 5);
    let mut rng = kit::rng(62);
    let mut entailments = 0;
    for _ in 0..400 {
        let f = horn(kit::random_horn_cnf(&mut rng, &vars, 5));
        let picked = rand::seq::index::sample(&mut rng, vars.len(), 2);
        let clause = Clause::new(
            picked
                .into_iter()
                .map(|i| Literal::positive(vars[i].clone())),
        );
        if !horn_entails_clause(&f, &clause) {
            continue;
        }
        entailments += 1;
        assert!(
            clause
                .iter()
                .any(|lit| horn_entails_clause(&f, &Clause::new([lit.clone()]))),
            "{f:?} entails {clause} but none of its literals"
        );
    }
    assert!(entailments > 5, "the sweep should hit entailed clauses");
}

#[test]
fn clause_entailment_matches_truth_tables() {
    let vars = kit::numbered_vars("v", 5);
    let mut rng = kit::rng(63);
    for _ in 0..300 {
        let f = kit::random_horn_cnf(&mut rng, &vars, 5);
        let clause = kit::random_horn_clause(&mut rng, &vars, 2);
        let goal = Cnf::new(vec![clause.clone()]);
        assert_eq!(
            horn_entails_clause(&horn(f.clone()), &clause),
            kit::tt_entails(&cnf_to_formula(&f), &cnf_to_formula(&goal)),
            "{f:?} vs {clause}"
        );
    }
}

/// Eliminating an entailed variable — or one whose negation entails the
/// formula — loses nothing: the conjunction (disjunction) with the
/// eliminated literal restores the original.
#[test]
fn variable_elimination_is_sound() {
    let mut instances: Vec<Cnf> = kit::cnf_pool(&kit::horn_clause_pool(), 3);
    let vars4 = kit::numbered_vars("v", 4);
    let mut rng = kit::rng(64);
    for _ in 0..150 {
        instances.push(kit::random_horn_cnf(&mut rng, &vars4, 5));
    }
    for f in &instances {
        let formula = cnf_to_formula(f);
        for x in f.vars() {
            if entails_var(f, &x) {
                let rebuilt = Formula::and(vec![
                    Formula::Var(x.clone()),
                    cnf_to_formula(&percent_remove(f, &x)),
                ]);
                assert!(kit::tt_equivalent(&formula, &rebuilt), "{f:?} % {x}");
            }
            if entailed_by_negvar(f, &x) {
                let rebuilt = Formula::or(vec![
                    Formula::not(Formula::Var(x.clone())),
                    cnf_to_formula(&percent_remove(f, &x)),
                ]);
                assert!(kit::tt_equivalent(&formula, &rebuilt), "{f:?} % {x}");
            }
        }
    }
}

/// The elimination loop decides f1 ≡ ¬f2 exactly, across every pair from
/// the frozen pool — 30976 pairs including tautological clauses, empty
/// formulas, and contradictions.
#[test]
fn negation_equivalence_matches_truth_tables_on_the_pool() {
    let pool = kit::cnf_pool(&kit::horn_clause_pool(), 3);
    assert_eq!(pool.len(), 176);
    let formulas: Vec<HornFormula> = pool.iter().map(|c| horn(c.clone())).collect();
    for (i, f1) in formulas.iter().enumerate() {
        for (j, f2) in formulas.iter().enumerate() {
            assert_eq!(
                horn_neg_equiv(f1, f2),
                kit::tt_negation_equivalent(&pool[i], &pool[j]),
                "{:?} vs {:?}",
                pool[i],
                pool[j]
            );
        }
    }
}

#[test]
fn two_entry_redundancy_matches_the_sat_reduction() {
    let vars = kit::numbered_vars("v", 6);
    let names: Vec<&str> = vars.iter().map(Var::name).collect();
    let mut rng = kit::rng(65);
    for _ in 0..250 {
        let f1 = kit::random_horn_cnf(&mut rng, &vars, 4);
        let f2 = kit::random_horn_cnf(&mut rng, &vars, 4);
        let s = RevisionSequence::new(
            vec![cnf_to_formula(&f1), cnf_to_formula(&f2)],
            Alphabet::new(names.iter().map(|n| Var::new(*n).unwrap())),
        )
        .unwrap();
        assert_eq!(
            redundant_two_horn(&horn(f1.clone()), &horn(f2.clone())),
            lexirev::encoder::check_redundant_last(&s)
                .unwrap()
                .is_equivalent(),
            "{f1:?} then {f2:?}"
        );
    }
}

/// Negativization swaps every positive literal for a negated prime; models
/// correspond exactly under x' := ¬x.
#[test]
fn negativization_preserves_models_under_the_prime_convention() {
    let vars = kit::numbered_vars("v", 5);
    let mut rng = kit::rng(66);
    for _ in 0..150 {
        let f = kit::random_cnf(&mut rng, &vars, 5);
        let neg = negativize(&f).unwrap();
        let f_vars = f.vars();
        let alphabet = Arc::new(Alphabet::new(f_vars.clone()));
        let extended_alphabet = Arc::new(Alphabet::new(neg.vars()));
        for m in kit::all_models(&alphabet) {
            let extended_values: Vec<bool> = extended_alphabet
                .iter()
                .map(|v| match m.get(v) {
                    Some(value) => value,
                    // A primed variable: opposite of its base.
                    None => {
                        let base = v.name().strip_suffix("__p").unwrap();
                        !m.get(&Var::new(base).unwrap()).unwrap()
                    }
                })
                .collect();
            let extended = Model::new(Arc::clone(&extended_alphabet), extended_values).unwrap();
            assert_eq!(
                kit::tt_eval_cnf(&f, &m),
                kit::tt_eval_cnf(&neg, &extended),
                "{f:?}"
            );
        }
    }
}

#[test]
fn hardness_instances_decide_source_satisfiability() {
    let vars = kit::numbered_vars("v", 5);
    let mut rng = kit::rng(67);
    let mut unsatisfiable = 0;
    for _ in 0..100 {
        // Densities up to 8 clauses per variable, so both satisfiable and
        // unsatisfiable sources appear.
        let clauses = rng.gen_range(1..=40);
        let f = kit::random_three_cnf(&mut rng, &vars, clauses);
        let inst = build_hardness_instance(&f).unwrap();
        let redundant = lexirev::encoder::check_redundant_last(&inst.sequence)
            .unwrap()
            .is_equivalent();
        let satisfiable = kit::tt_satisfiable_cnf(&f);
        assert_eq!(redundant, !satisfiable, "{f:?}");
        if !satisfiable {
            unsatisfiable += 1;
        }
    }
    assert!(
        unsatisfiable > 5,
        "the sweep should hit unsatisfiable sources"
    );
}

fn timed_batch(instances: &[(HornFormula, HornFormula)], repetitions: u32) -> Duration {
    let start = Instant::now();
    for _ in 0..repetitions {
        for (f1, f2) in instances {
            std::hint::black_box(redundant_two_horn(f1, f2));
        }
    }
    start.elapsed()
}

/// Doubling the clause count must not blow past linear-ish scaling: the
/// 200-clause batch may cost at most 4× the 100-clause batch.
#[test]
fn two_entry_redundancy_scales_near_linearly() {
    let vars = kit::numbered_vars("v", 100);
    let mut rng = kit::rng(68);
    let batch = |rng: &mut _, clauses: usize| -> Vec<(HornFormula, HornFormula)> {
        (0..10)
            .map(|_| {
                let mut left = Vec::with_capacity(clauses);
                let mut right = Vec::with_capacity(clauses);
                for _ in 0..clauses {
                    left.push(kit::random_horn_clause(rng, &vars, 3));
                    right.push(kit::random_horn_clause(rng, &vars, 3));
                }
                (horn(Cnf::new(left)), horn(Cnf::new(right)))
            })
            .collect()
    };
    let hundred = batch(&mut rng, 100);
    let two_hundred = batch(&mut rng, 200);

    // Repeat the smaller batch until it is long enough to time reliably.
    let mut repetitions = 1;
    let mut base = timed_batch(&hundred, repetitions);
    while base < Duration::from_millis(50) {
        repetitions *= 2;
        base = timed_batch(&hundred, repetitions);
    }
    let doubled = timed_batch(&two_hundred, repetitions);
    assert!(
        doubled <= base * 4,
        "100-clause batch took {base:?}, 200-clause batch took {doubled:?}"
    );
}
