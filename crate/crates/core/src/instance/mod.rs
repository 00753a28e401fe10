//! Abduction instances `⟨V, H, M, T⟩`, their file formats, a brute-force
//! oracle and a seeded generator with planted backdoors.

mod families;
mod oracle;
mod parse;
mod random;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use families::{horn_chain_family, krom_pairs_family};
pub use oracle::{
    oracle_is_solution, oracle_solve, oracle_subset_minimal, Oracle, DEFAULT_ORACLE_HYPS,
    DEFAULT_ORACLE_VARS,
};
pub use parse::{parse_instance, parse_instance_json, parse_instance_text, InstanceJson};
pub use random::{corpus_instance, random_instance, Limits, Planted, CORPUS_LIMITS};

use crate::cnf::{Cnf, Var, VarTable};
use crate::error::{Error, Result};

/// A propositional abduction instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    names: VarTable,
    hyps: Vec<Var>,
    mans: Vec<Var>,
    theory: Cnf,
}

impl Instance {
    /// Validates `H ⊆ V`, `M ⊆ V`, `M ∩ H = ∅` and `var(T) ⊆ V`.
    pub fn new(names: VarTable, hyps: impl IntoIterator<Item = Var>, mans: impl IntoIterator<Item = Var>, theory: Cnf) -> Result<Self> {
        let n = names.len() as u32;
        let hyps: BTreeSet<Var> = hyps.into_iter().collect();
        let mans: BTreeSet<Var> = mans.into_iter().collect();
        if let Some(v) = hyps.iter().chain(&mans).find(|v| v.0 >= n) {
            return Err(Error::Semantic(format!("variable index {} is not declared", v.0)));
        }
        if let Some(v) = hyps.intersection(&mans).next() {
            return Err(Error::Semantic(format!(
                "M ∩ H ≠ ∅: `{}` is both a hypothesis and a manifestation",
                names.name(*v)
            )));
        }
        if let Some(v) = theory.vars().into_iter().find(|v| v.0 >= n) {
            return Err(Error::Semantic(format!("theory mentions undeclared variable {}", v.0)));
        }
        let mut theory = theory;
        theory.ensure_vars(n);
        Ok(Instance {
            names,
            hyps: hyps.into_iter().collect(),
            mans: mans.into_iter().collect(),
            theory,
        })
    }

    pub fn names(&self) -> &VarTable {
        &self.names
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> {
        (0..self.names.len() as u32).map(Var)
    }

    /// Hypotheses in index order.
    pub fn hyps(&self) -> &[Var] {
        &self.hyps
    }

    /// Manifestations in index order.
    pub fn mans(&self) -> &[Var] {
        &self.mans
    }

    pub fn theory(&self) -> &Cnf {
        &self.theory
    }

    pub fn is_hyp(&self, v: Var) -> bool {
        self.hyps.binary_search(&v).is_ok()
    }

    pub fn is_man(&self, v: Var) -> bool {
        self.mans.binary_search(&v).is_ok()
    }

    pub fn var(&self, name: &str) -> Result<Var> {
        self.names
            .get(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_owned()))
    }

    pub fn hyp(&self, name: &str) -> Result<Var> {
        let v = self.var(name)?;
        if self.is_hyp(v) {
            Ok(v)
        } else {
            Err(Error::NotAHypothesis(name.to_owned()))
        }
    }

    /// Parses a comma- or whitespace-separated list of hypothesis names.
    pub fn solution_from_names(&self, list: &str) -> Result<Solution> {
        let mut out = BTreeSet::new();
        for name in list.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
            out.insert(self.hyp(name)?);
        }
        Ok(Solution(out))
    }

    pub fn solution_names(&self, s: &Solution) -> Vec<String> {
        s.iter().map(|v| self.names.name(v).to_owned()).collect()
    }

    /// Writes the instance in the line-oriented text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let join = |vs: &mut dyn Iterator<Item = &str>| vs.collect::<Vec<_>>().join(" ");
        out.push_str(&format!("var {}\n", join(&mut self.names.iter().map(|(_, n)| n))));
        out.push_str(&format!("hyp {}\n", join(&mut self.hyps.iter().map(|&v| self.names.name(v)))));
        out.push_str(&format!("man {}\n", join(&mut self.mans.iter().map(|&v| self.names.name(v)))));
        for c in self.theory.clauses() {
            let lits: Vec<String> = c.lits().iter().map(|&l| self.names.lit_name(l)).collect();
            if lits.is_empty() {
                out.push_str("clause\n");
            } else {
                out.push_str(&format!("clause {}\n", lits.join(" ")));
            }
        }
        out
    }
}

/// A candidate explanation: a subset of the hypotheses.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Solution(BTreeSet<Var>);

impl Solution {
    pub fn new(hyps: impl IntoIterator<Item = Var>) -> Self {
        Solution(hyps.into_iter().collect())
    }

    pub fn contains(&self, v: Var) -> bool {
        self.0.contains(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &Solution) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn as_set(&self) -> &BTreeSet<Var> {
        &self.0
    }

    /// Subset of `hyps` selected by the low bits of `mask`.
    pub fn from_mask(hyps: &[Var], mask: u64) -> Self {
        Solution::new(
            hyps.iter()
                .enumerate()
                .filter(|(j, _)| mask >> j & 1 == 1)
                .map(|(_, &h)| h),
        )
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// The skiing-trip instance used throughout the documentation and tests.
pub fn skiing_example() -> Instance {
    parse_instance_text(SKIING_TEXT).expect("built-in example parses")
}

pub const SKIING_TEXT: &str = "\
# Why did the skiing trip go wrong?
var snows rains precipitation warm hurt sad
hyp precipitation warm hurt
man sad
clause -precipitation rains snows
clause -hurt sad
clause -warm -snows
clause -rains sad
";
