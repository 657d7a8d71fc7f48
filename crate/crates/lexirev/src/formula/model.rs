//! Alphabets, models and model enumeration.

use std::fmt;
use std::sync::Arc;

use super::{Formula, Var};
use crate::{Error, Result};

/// Default bound on the number of variables accepted by model enumeration.
pub const DEFAULT_VAR_CAP: usize = 20;

/// An ordered, duplicate-free collection of variables.
///
/// The order matters: it fixes the binary-counting order of
/// [`enumerate_models`] and thereby every "first witness" reported by the
/// brute-force procedures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    vars: Vec<Var>,
}

impl Alphabet {
    /// Builds an alphabet keeping the first occurrence of each variable.
    pub fn new(vars: impl IntoIterator<Item = Var>) -> Alphabet {
        let mut out = Vec::new();
        for v in vars {
            if !out.contains(&v) {
                out.push(v);
            }
        }
        Alphabet { vars: out }
    }

    /// Union of the variables mentioned by `formulas`, in order of first
    /// appearance.
    pub fn from_formulas<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Alphabet {
        Alphabet::new(formulas.into_iter().flat_map(Formula::vars))
    }

    /// `self` followed by the variables of `other` not already present.
    pub fn union(&self, other: &Alphabet) -> Alphabet {
        Alphabet::new(self.vars.iter().chain(other.vars.iter()).cloned())
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn contains(&self, v: &Var) -> bool {
        self.vars.contains(v)
    }

    pub fn index_of(&self, v: &Var) -> Option<usize> {
        self.vars.iter().position(|w| w == v)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Var> {
        self.vars.iter()
    }

    pub fn as_slice(&self) -> &[Var] {
        &self.vars
    }
}

/// A total truth assignment over one alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    alphabet: Arc<Alphabet>,
    values: Vec<bool>,
}

impl Model {
    /// Pairs `values` with the alphabet positionally.
    pub fn new(alphabet: Arc<Alphabet>, values: Vec<bool>) -> Result<Model> {
        if values.len() != alphabet.len() {
            return Err(Error::AlphabetMismatch(format!(
                "{} values for {} variables",
                values.len(),
                alphabet.len()
            )));
        }
        Ok(Model { alphabet, values })
    }

    /// The `index`-th model in binary-counting order: the first variable of
    /// the alphabet is the most significant bit, so index 0 is all-false.
    pub fn from_index(alphabet: Arc<Alphabet>, index: u64) -> Model {
        let n = alphabet.len();
        let values = (0..n).map(|i| index >> (n - 1 - i) & 1 == 1).collect();
        Model { alphabet, values }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn get(&self, v: &Var) -> Option<bool> {
        self.alphabet.index_of(v).map(|i| self.values[i])
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, bool)> {
        self.alphabet.iter().zip(self.values.iter().copied())
    }
}

impl fmt::Display for Model {
    /// `var:1 var:0 …` in alphabet order.
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

/// All models over `alphabet` in binary-counting order: the all-false model
/// first, then counting up with the last variable as least significant bit.
///
/// Fails when the alphabet is larger than `cap`, the guard against
/// accidentally exponential enumerations.
pub fn enumerate_models(alphabet: &Alphabet, cap: usize) -> Result<ModelIter> {
    let n = alphabet.len();
    if n > cap || n >= 64 {
        return Err(Error::EnumerationCap {
            vars: n,
            cap: cap.min(63),
        });
    }
    Ok(ModelIter {
        alphabet: Arc::new(alphabet.clone()),
        next: 0,
        total: 1u64 << n,
    })
}

/// Iterator returned by [`enumerate_models`].
#[derive(Debug, Clone)]
pub struct ModelIter {
    alphabet: Arc<Alphabet>,
    next: u64,
    total: u64,
}

impl Iterator for ModelIter {
    type Item = Model;

    fn next(&mut self) -> Option<Model> {
        if self.next >= self.total {
            return None;
        }
        let m = Model::from_index(self.alphabet.clone(), self.next);
        self.next += 1;
        Some(m)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for ModelIter {}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(names: &[&str]) -> Alphabet {
        Alphabet::new(names.iter().map(|n| Var::new(*n).unwrap()))
    }

    #[test]
    fn alphabet_keeps_first_occurrence_order() {
        let a = Alphabet::new(["b", "a", "b", "c"].iter().map(|n| Var::new(*n).unwrap()));
        let names: Vec<_> = a.iter().map(Var::name).collect();
        assert_eq!(names, ["b", "a", "c"]);
    }

    #[test]
    fn enumeration_starts_all_false_and_counts_up() {
        let models: Vec<Model> = enumerate_models(&vars(&["a"]), DEFAULT_VAR_CAP)
            .unwrap()
            .collect();
        assert_eq!(models.len(), 2);
        assert_eq!(models[0].values(), &[false]);
        assert_eq!(models[1].values(), &[true]);

        let models: Vec<Model> = enumerate_models(&vars(&["a", "b"]), DEFAULT_VAR_CAP)
            .unwrap()
            .collect();
        let bits: Vec<&[bool]> = models.iter().map(Model::values).collect();
        assert_eq!(
            bits,
            [
                &[false, false][..],
                &[false, true],
                &[true, false],
                &[true, true]
            ]
        );
    }

    #[test]
    fn empty_alphabet_has_one_model() {
        let models: Vec<Model> = enumerate_models(&vars(&[]), DEFAULT_VAR_CAP)
            .unwrap()
            .collect();
        assert_eq!(models.len(), 1);
    }

    #[test]
    fn enumeration_respects_the_cap() {
        let names: Vec<String> = (0..21).map(|i| format!("v{i}")).collect();
        let a = Alphabet::new(names.iter().map(|n| Var::new(n.clone()).unwrap()));
        assert!(matches!(
            enumerate_models(&a, DEFAULT_VAR_CAP),
            Err(Error::EnumerationCap { vars: 21, cap: 20 })
        ));
    }

    #[test]
    fn model_display_lists_bindings() {
        let m = Model::from_index(Arc::new(vars(&["a", "b"])), 2);
        assert_eq!(m.to_string(), "a:1 b:0");
    }
}
