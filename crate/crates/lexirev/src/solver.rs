//! A small, deterministic SAT solver.
//!
//! Plain DPLL: unit propagation (two watched literals) plus chronological
//! backtracking, no clause learning and no restarts. Branching always picks
//! the unassigned variable with the lowest index in a fixed order and tries
//! `false` first, so identical inputs always produce identical results —
//! including which model is reported for satisfiable inputs.
//!
//! The default variable order is first appearance in the clause set;
//! [`solve_with_priority`] lets a caller front-load variables it knows are
//! the profitable ones to branch on (the difference encoding does this with
//! the duplicated alphabet so that everything else follows by propagation).
//!
//! [`unit_propagate`] is also exposed directly on clause sets: it is the
//! workhorse of the Horn procedures, where propagation alone is a complete
//! satisfiability test.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::formula::{Clause, Cnf, Literal, Var};
use crate::{Error, Result};

/// A partial truth assignment.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PartialAssignment {
    map: BTreeMap<Var, bool>,
}

impl PartialAssignment {
    pub fn new() -> PartialAssignment {
        PartialAssignment::default()
    }

    pub fn get(&self, v: &Var) -> Option<bool> {
        self.map.get(v).copied()
    }

    /// Binds `v` to `value`, returning the previous binding if any.
    pub fn insert(&mut self, v: Var, value: bool) -> Option<bool> {
        self.map.insert(v, value)
    }

    pub fn contains(&self, v: &Var) -> bool {
        self.map.contains_key(v)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, bool)> {
        self.map.iter().map(|(v, b)| (v, *b))
    }

    /// Truth value of `lit` under this assignment, if its variable is bound.
    pub fn value_of(&self, lit: &Literal) -> Option<bool> {
        self.get(lit.var()).map(|b| b == lit.is_positive())
    }
}

impl fmt::Display for PartialAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (v, b)) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}:{}", u8::from(b))?;
        }
        Ok(())
    }
}

/// Outcome of [`unit_propagate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Propagation {
    /// Some clause has all its literals false under the closure.
    Conflict,
    /// The propagation closure of the input assignment, together with the
    /// clause set reduced under it: satisfied clauses dropped, false
    /// literals removed.
    Fixpoint {
        assignment: PartialAssignment,
        reduced: Cnf,
    },
}

/// Runs unit propagation on `c` starting from `p` until no unit clause
/// remains or a conflict appears.
///
/// Only variables occurring in `c` are ever assigned beyond those already in
/// `p`.
pub fn unit_propagate(c: &Cnf, p: &PartialAssignment) -> Propagation {
    let mut asg = p.clone();
    loop {
        let mut changed = false;
        for clause in c.clauses() {
            let mut satisfied = false;
            let mut unassigned: Option<&Literal> = None;
            let mut open = 0usize;
            for lit in clause.iter() {
                match asg.value_of(lit) {
                    Some(true) => {
                        satisfied = true;
                        break;
                    }
                    Some(false) => {}
                    None => {
                        open += 1;
                        unassigned = Some(lit);
                    }
                }
            }
            if satisfied {
                continue;
            }
            match open {
                0 => return Propagation::Conflict,
                1 => {
                    let lit = unassigned.unwrap();
                    asg.insert(lit.var().clone(), lit.is_positive());
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }

    let mut reduced = Vec::new();
    for clause in c.clauses() {
        let mut keep = Vec::new();
        let mut satisfied = false;
        for lit in clause.iter() {
            match asg.value_of(lit) {
                Some(true) => {
                    satisfied = true;
                    break;
                }
                Some(false) => {}
                None => keep.push(lit.clone()),
            }
        }
        if !satisfied {
            reduced.push(Clause::new(keep));
        }
    }
    Propagation::Fixpoint {
        assignment: asg,
        reduced: Cnf::new(reduced),
    }
}

/// Outcome of [`solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    /// A total assignment over the variables of the input.
    Satisfiable(PartialAssignment),
    Unsatisfiable,
}

impl SolveResult {
    pub fn is_satisfiable(&self) -> bool {
        matches!(self, SolveResult::Satisfiable(_))
    }

    pub fn model(&self) -> Option<&PartialAssignment> {
        match self {
            SolveResult::Satisfiable(m) => Some(m),
            SolveResult::Unsatisfiable => None,
        }
    }
}

/// Decides satisfiability of `c` with the default (first appearance)
/// variable order.
pub fn solve(c: &Cnf) -> SolveResult {
    solve_inner(c, &[], None).expect("unbudgeted search cannot exhaust a budget")
}

/// Like [`solve`], but branches on the variables of `priority` (those that
/// occur in `c`, in the given order) before any others.
pub fn solve_with_priority(c: &Cnf, priority: &[Var]) -> SolveResult {
    solve_inner(c, priority, None).expect("unbudgeted search cannot exhaust a budget")
}

/// Like [`solve`], but gives up with [`Error::StepBudget`] once the search
/// has taken `budget` steps (decisions plus propagated literals).
pub fn solve_budgeted(c: &Cnf, budget: u64) -> Result<SolveResult> {
    solve_inner(c, &[], Some(budget))
}

fn solve_inner(c: &Cnf, priority: &[Var], budget: Option<u64>) -> Result<SolveResult> {
    if c.is_empty() {
        return Ok(SolveResult::Satisfiable(PartialAssignment::new()));
    }
    if c.has_empty_clause() {
        return Ok(SolveResult::Unsatisfiable);
    }

    let mut order: Vec<Var> = Vec::new();
    let cnf_vars = c.vars();
    for v in priority {
        if cnf_vars.contains(v) && !order.contains(v) {
            order.push(v.clone());
        }
    }
    for v in cnf_vars {
        if !order.contains(&v) {
            order.push(v);
        }
    }

    let index: HashMap<&Var, usize> = order.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let clauses: Vec<Vec<i32>> = c
        .clauses()
        .iter()
        .map(|clause| {
            clause
                .iter()
                .map(|lit| {
                    let i = index[lit.var()] as i32 + 1;
                    if lit.is_positive() {
                        i
                    } else {
                        -i
                    }
                })
                .collect()
        })
        .collect();

    let mut search = Search::new(order.len(), &clauses, budget);
    let sat = search.run()?;
    if !sat {
        return Ok(SolveResult::Unsatisfiable);
    }

    let mut model = PartialAssignment::new();
    for (i, v) in order.iter().enumerate() {
        model.insert(v.clone(), search.assignment[i] == 1);
    }
    // A satisfiable verdict is only reported with a model checked against
    // every input clause.
    for clause in c.clauses() {
        assert!(
            clause.iter().any(|lit| model.value_of(lit) == Some(true)),
            "solver produced a model violating a clause"
        );
    }
    Ok(SolveResult::Satisfiable(model))
}

/// Integer-literal DPLL core. Variables are 0-based internally; a literal is
/// the nonzero integer `±(var+1)`. Each clause of length ≥ 2 watches two of
/// its literals; only clauses watching a literal that just became false are
/// visited during propagation.
struct Search<'a> {
    clauses: &'a [Vec<i32>],
    /// The two watched literals of each clause (unused for unit clauses).
    watched: Vec<[i32; 2]>,
    assignment: Vec<i8>,
    watches: Vec<Vec<usize>>,
    trail: Vec<i32>,
    qhead: usize,
    steps: u64,
    budget: Option<u64>,
}

fn watch_slot(lit: i32) -> usize {
    let v = (lit.unsigned_abs() as usize - 1) * 2;
    if lit > 0 {
        v
    } else {
        v + 1
    }
}

impl<'a> Search<'a> {
    fn new(nvars: usize, clauses: &'a [Vec<i32>], budget: Option<u64>) -> Search<'a> {
        Search {
            clauses,
            watched: vec![[0, 0]; clauses.len()],
            assignment: vec![0; nvars],
            watches: vec![Vec::new(); nvars * 2],
            trail: Vec::new(),
            qhead: 0,
            steps: 0,
            budget,
        }
    }

    fn value(&self, lit: i32) -> i8 {
        let v = self.assignment[lit.unsigned_abs() as usize - 1];
        if lit > 0 {
            v
        } else {
            -v
        }
    }

    fn enqueue(&mut self, lit: i32) -> bool {
        match self.value(lit) {
            1 => true,
            -1 => false,
            _ => {
                self.assignment[lit.unsigned_abs() as usize - 1] = if lit > 0 { 1 } else { -1 };
                self.trail.push(lit);
                true
            }
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let lit = self.trail.pop().unwrap();
            self.assignment[lit.unsigned_abs() as usize - 1] = 0;
        }
        self.qhead = mark;
    }

    fn charge(&mut self) -> Result<()> {
        self.steps += 1;
        match self.budget {
            Some(b) if self.steps > b => Err(Error::StepBudget { budget: b }),
            _ => Ok(()),
        }
    }

    /// Processes the propagation queue; false means conflict.
    fn propagate(&mut self) -> Result<bool> {
        while self.qhead < self.trail.len() {
            let lit = self.trail[self.qhead];
            self.qhead += 1;
            self.charge()?;

            let slot = watch_slot(-lit);
            let mut i = 0;
            while i < self.watches[slot].len() {
                let ci = self.watches[slot][i];
                match self.rewatch(ci, -lit) {
                    Rewatch::Moved => {
                        self.watches[slot].swap_remove(i);
                    }
                    Rewatch::Unit(forced) => {
                        if !self.enqueue(forced) {
                            return Ok(false);
                        }
                        i += 1;
                    }
                    Rewatch::Satisfied => {
                        i += 1;
                    }
                    Rewatch::Conflict => return Ok(false),
                }
            }
        }
        Ok(true)
    }

    /// Adjusts clause `ci` after its watched literal `falsified` became
    /// false.
    fn rewatch(&mut self, ci: usize, falsified: i32) -> Rewatch {
        if self.watched[ci][1] == falsified {
            self.watched[ci].swap(0, 1);
        }
        let other = self.watched[ci][1];
        if self.value(other) == 1 {
            return Rewatch::Satisfied;
        }
        for &l in &self.clauses[ci] {
            if l != other && l != falsified && self.value(l) != -1 {
                self.watched[ci][0] = l;
                self.watches[watch_slot(l)].push(ci);
                return Rewatch::Moved;
            }
        }
        match self.value(other) {
            -1 => Rewatch::Conflict,
            _ => Rewatch::Unit(other),
        }
    }

    fn pick(&self) -> Option<usize> {
        self.assignment.iter().position(|&v| v == 0)
    }

    fn run(&mut self) -> Result<bool> {
        // Initial watches and unit clauses.
        for (ci, clause) in self.clauses.iter().enumerate() {
            match clause.len() {
                0 => return Ok(false),
                1 => {
                    if !self.enqueue(clause[0]) {
                        return Ok(false);
                    }
                }
                _ => {
                    self.watched[ci] = [clause[0], clause[1]];
                    self.watches[watch_slot(clause[0])].push(ci);
                    self.watches[watch_slot(clause[1])].push(ci);
                }
            }
        }
        self.search()
    }

    fn search(&mut self) -> Result<bool> {
        self.charge()?;
        if !self.propagate()? {
            return Ok(false);
        }
        let Some(var) = self.pick() else {
            return Ok(true);
        };
        let vlit = var as i32 + 1;
        for lit in [-vlit, vlit] {
            let mark = self.trail.len();
            self.enqueue(lit);
            if self.search()? {
                return Ok(true);
            }
            self.undo_to(mark);
        }
        Ok(false)
    }
}

enum Rewatch {
    Moved,
    Unit(i32),
    Satisfied,
    Conflict,
}

/// Maps variables to the 1-based indices of the DIMACS format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarMap {
    vars: Vec<Var>,
}

impl VarMap {
    /// Indexes `vars` in the given order; duplicates are rejected.
    pub fn new(vars: Vec<Var>) -> Result<VarMap> {
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::Dimacs {
                    line: 0,
                    message: format!("duplicate variable `{v}` in index map"),
                });
            }
        }
        Ok(VarMap { vars })
    }

    /// Variables of `c` in order of first appearance.
    pub fn from_cnf(c: &Cnf) -> VarMap {
        VarMap { vars: c.vars() }
    }

    /// 1-based index of `v`.
    pub fn index_of(&self, v: &Var) -> Option<usize> {
        self.vars.iter().position(|w| w == v).map(|i| i + 1)
    }

    /// Variable with 1-based index `idx`.
    pub fn var_at(&self, idx: usize) -> Option<&Var> {
        idx.checked_sub(1).and_then(|i| self.vars.get(i))
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Var> {
        self.vars.iter()
    }
}

/// Renders `c` in DIMACS CNF: header `p cnf V C`, one clause per line, each
/// terminated by `0`, literals ordered by variable index with the negative
/// polarity first. No trailing newline.
pub fn export_dimacs(c: &Cnf, map: &VarMap) -> Result<String> {
    let mut lines = vec![format!("p cnf {} {}", map.len(), c.len())];
    for clause in c.clauses() {
        let mut lits: Vec<(usize, bool)> = Vec::with_capacity(clause.len());
        for lit in clause.iter() {
            let idx = map.index_of(lit.var()).ok_or_else(|| Error::Dimacs {
                line: 0,
                message: format!("variable `{}` missing from the index map", lit.var()),
            })?;
            lits.push((idx, lit.is_positive()));
        }
        lits.sort();
        let mut line = String::new();
        for (idx, positive) in lits {
            if positive {
                line.push_str(&format!("{idx} "));
            } else {
                line.push_str(&format!("-{idx} "));
            }
        }
        line.push('0');
        lines.push(line);
    }
    Ok(lines.join("\n"))
}

/// [`export_dimacs`] preceded by comment lines `c var <n> = <name>` naming
/// every index.
pub fn export_dimacs_named(c: &Cnf, map: &VarMap) -> Result<String> {
    let mut out = String::new();
    for (i, v) in map.iter().enumerate() {
        out.push_str(&format!("c var {} = {}\n", i + 1, v));
    }
    out.push_str(&export_dimacs(c, map)?);
    Ok(out)
}

/// Parses DIMACS CNF text into a clause set and its variable map.
///
/// Variables are named `x<index>` unless a comment of the form
/// `c var <n> = <name>` supplies a name. A supplied name is advisory: one the
/// formula grammar would not accept back (malformed, a keyword, or in the
/// reserved `__` namespace) is ignored in favor of the synthetic name, so an
/// imported problem can always be re-emitted in readable form. Clauses may
/// span lines; the clause count must match the header.
pub fn import_dimacs(text: &str) -> Result<(Cnf, VarMap)> {
    let mut header: Option<(usize, usize)> = None;
    let mut names: BTreeMap<usize, String> = BTreeMap::new();
    let mut ints: Vec<(i64, usize)> = Vec::new();

    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('c') {
            // Name-map comments; all other comments are ignored.
            let rest = rest.trim();
            if let Some(binding) = rest.strip_prefix("var ") {
                if let Some((idx, name)) = binding.split_once('=') {
                    if let Ok(idx) = idx.trim().parse::<usize>() {
                        names.insert(idx, name.trim().to_string());
                    }
                }
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if header.is_some() {
                return Err(Error::Dimacs {
                    line: lineno,
                    message: "duplicate header".into(),
                });
            }
            let fields: Vec<&str> = rest.split_whitespace().collect();
            let parsed = match fields.as_slice() {
                ["cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                _ => None,
            };
            header = Some(parsed.ok_or(Error::Dimacs {
                line: lineno,
                message: "malformed header, expected `p cnf <vars> <clauses>`".into(),
            })?);
            continue;
        }
        if header.is_none() {
            return Err(Error::Dimacs {
                line: lineno,
                message: "clause data before header".into(),
            });
        }
        for tok in line.split_whitespace() {
            let n: i64 = tok.parse().map_err(|_| Error::Dimacs {
                line: lineno,
                message: format!("expected a literal, found `{tok}`"),
            })?;
            ints.push((n, lineno));
        }
    }

    let (nvars, nclauses) = header.ok_or(Error::Dimacs {
        line: 0,
        message: "missing header".into(),
    })?;

    let kept: BTreeMap<usize, &String> = names
        .iter()
        .filter(|(_, name)| Var::new(name.as_str()).is_ok() && !Var::reserved(name))
        .map(|(&i, name)| (i, name))
        .collect();
    let taken: BTreeSet<&str> = kept.values().map(|name| name.as_str()).collect();
    let mut vars = Vec::with_capacity(nvars);
    for i in 1..=nvars {
        let name = match kept.get(&i) {
            Some(name) => (*name).clone(),
            None => {
                let mut fallback = format!("x{i}");
                while taken.contains(fallback.as_str()) {
                    fallback.push('_');
                }
                fallback
            }
        };
        vars.push(Var::new(name).expect("synthetic and vetted names are valid"));
    }
    let map = VarMap::new(vars).map_err(|_| Error::Dimacs {
        line: 0,
        message: "duplicate names in `c var` comments".into(),
    })?;

    let mut clauses = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    for (n, lineno) in ints {
        if n == 0 {
            clauses.push(Clause::new(current.drain(..)));
            continue;
        }
        let idx = n.unsigned_abs() as usize;
        let var = map.var_at(idx).ok_or(Error::Dimacs {
            line: lineno,
            message: format!("literal {n} is outside the declared {nvars} variables"),
        })?;
        current.push(Literal::new(var.clone(), n > 0));
    }
    if !current.is_empty() {
        return Err(Error::Dimacs {
            line: 0,
            message: "last clause is not terminated by 0".into(),
        });
    }
    if clauses.len() != nclauses {
        return Err(Error::Dimacs {
            line: 0,
            message: format!(
                "header declares {nclauses} clauses, found {}",
                clauses.len()
            ),
        });
    }
    Ok((Cnf::new(clauses), map))
}
