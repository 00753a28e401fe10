use std::collections::BTreeMap;

use super::{Lit, Var};

/// A truth assignment defined on a subset of the variables. Lookups outside
/// the domain return `None`, never `false`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialAssignment {
    values: BTreeMap<Var, bool>,
}

impl PartialAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, bool)>) -> Self {
        PartialAssignment {
            values: pairs.into_iter().collect(),
        }
    }

    /// Assignment over `vars` read from the low bits of `mask` (bit `j` is
    /// the value of `vars[j]`).
    pub fn from_mask(vars: &[Var], mask: u64) -> Self {
        Self::from_pairs(
            vars.iter()
                .enumerate()
                .map(|(j, &v)| (v, mask >> j & 1 == 1)),
        )
    }

    pub fn set(&mut self, var: Var, value: bool) {
        self.values.insert(var, value);
    }

    pub fn get(&self, var: Var) -> Option<bool> {
        self.values.get(&var).copied()
    }

    pub fn lit_value(&self, lit: Lit) -> Option<bool> {
        self.get(lit.var()).map(|v| v == lit.is_positive())
    }

    pub fn contains(&self, var: Var) -> bool {
        self.values.contains_key(&var)
    }

    pub fn domain(&self) -> impl Iterator<Item = Var> + '_ {
        self.values.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, bool)> + '_ {
        self.values.iter().map(|(&v, &b)| (v, b))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Union of two assignments; `other` wins on overlap.
    pub fn union(&self, other: &PartialAssignment) -> PartialAssignment {
        let mut values = self.values.clone();
        values.extend(other.values.iter().map(|(&v, &b)| (v, b)));
        PartialAssignment { values }
    }
}
