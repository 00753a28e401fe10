//! Clause-set representation of propositional formulas.
//!
//! Variables are dense indices; names live in [`VarTable`]. Clauses are kept
//! duplicate-free in a canonical literal order (by variable index, negative
//! before positive), which makes clause equality and tautology checks linear.

mod assignment;
mod formula;
mod resolution;
mod tseitin;

use std::collections::BTreeSet;
use std::collections::HashMap;
use std::fmt;
use std::ops::Not;

use serde::{Deserialize, Serialize};

pub use assignment::PartialAssignment;
pub use formula::Formula;
pub use resolution::{resolution_closure, resolution_closure_capped, DEFAULT_CLOSURE_CAP};
pub use tseitin::{tseitin, tseitin_into, VarAllocator};

use crate::error::{Error, Result};

/// A propositional variable, identified by its dense index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Var(pub u32);

impl Var {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn pos(self) -> Lit {
        Lit::new(self, true)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Lit {
        Lit::new(self, false)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A literal packed as `2 * var + polarity`, so the derived order is the
/// canonical one: by variable, negative first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    pub fn new(var: Var, positive: bool) -> Self {
        Lit(var.0 * 2 + positive as u32)
    }

    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn code(self) -> usize {
        self.0 as usize
    }

    /// DIMACS form (1-based, sign = polarity).
    pub fn to_dimacs(self) -> i64 {
        let v = self.var().0 as i64 + 1;
        if self.is_positive() {
            v
        } else {
            -v
        }
    }

    pub fn from_dimacs(value: i64) -> Option<Self> {
        if value == 0 {
            return None;
        }
        let var = Var((value.unsigned_abs() - 1) as u32);
        Some(Lit::new(var, value > 0))
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "{}", self.var())
        } else {
            write!(f, "-{}", self.var())
        }
    }
}

/// A set of literals. The empty clause is a clause with no literals and is
/// never dropped implicitly.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Clause {
    lits: Vec<Lit>,
}

impl Clause {
    pub fn new(lits: impl IntoIterator<Item = Lit>) -> Self {
        let mut lits: Vec<Lit> = lits.into_iter().collect();
        lits.sort_unstable();
        lits.dedup();
        Clause { lits }
    }

    pub fn empty() -> Self {
        Clause { lits: Vec::new() }
    }

    pub fn unit(lit: Lit) -> Self {
        Clause { lits: vec![lit] }
    }

    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn contains(&self, lit: Lit) -> bool {
        self.lits.binary_search(&lit).is_ok()
    }

    pub fn is_tautological(&self) -> bool {
        // x and -x are adjacent in canonical order
        self.lits.windows(2).any(|w| w[0].var() == w[1].var())
    }

    pub fn positive_count(&self) -> usize {
        self.lits.iter().filter(|l| l.is_positive()).count()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        let mut last = None;
        self.lits.iter().filter_map(move |l| {
            let v = l.var();
            if last == Some(v) {
                None
            } else {
                last = Some(v);
                Some(v)
            }
        })
    }

    /// `self ⊆ other` as literal sets.
    pub fn is_subset_of(&self, other: &Clause) -> bool {
        self.lits.iter().all(|l| other.contains(*l))
    }

    pub fn is_satisfied_by(&self, tau: &PartialAssignment) -> bool {
        self.lits.iter().any(|l| tau.lit_value(*l) == Some(true))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lits.is_empty() {
            return f.write_str("□");
        }
        f.write_str("{")?;
        for (i, l) in self.lits.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

/// A CNF formula over the variable universe `0..num_vars`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Cnf {
    num_vars: u32,
    clauses: Vec<Clause>,
}

impl Cnf {
    pub fn new(num_vars: u32) -> Self {
        Cnf {
            num_vars,
            clauses: Vec::new(),
        }
    }

    /// Builds a formula; the universe is widened to cover every literal.
    pub fn from_clauses(num_vars: u32, clauses: impl IntoIterator<Item = Clause>) -> Self {
        let mut cnf = Cnf::new(num_vars);
        for c in clauses {
            cnf.push(c);
        }
        cnf
    }

    pub fn push(&mut self, clause: Clause) {
        if let Some(max) = clause.lits.iter().map(|l| l.var().0 + 1).max() {
            self.num_vars = self.num_vars.max(max);
        }
        self.clauses.push(clause);
    }

    pub fn extend(&mut self, clauses: impl IntoIterator<Item = Clause>) {
        for c in clauses {
            self.push(c);
        }
    }

    pub fn ensure_vars(&mut self, num_vars: u32) {
        self.num_vars = self.num_vars.max(num_vars);
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(Clause::is_empty)
    }

    /// `var(φ)`: the variables that actually occur.
    pub fn vars(&self) -> BTreeSet<Var> {
        self.clauses.iter().flat_map(|c| c.vars()).collect()
    }

    /// `φ[τ]`: drops satisfied clauses and falsified literals. A clause whose
    /// literals are all falsified becomes (and stays) the empty clause.
    pub fn reduct(&self, tau: &PartialAssignment) -> Cnf {
        let clauses = self
            .clauses
            .iter()
            .filter(|c| !c.is_satisfied_by(tau))
            .map(|c| Clause {
                lits: c
                    .lits
                    .iter()
                    .copied()
                    .filter(|l| tau.lit_value(*l).is_none())
                    .collect(),
            })
            .collect();
        Cnf {
            num_vars: self.num_vars,
            clauses,
        }
    }

    /// At most one positive literal per clause. Tautological clauses are
    /// satisfied by every assignment and are not constrained.
    pub fn is_horn(&self) -> bool {
        self.clauses
            .iter()
            .all(|c| c.positive_count() <= 1 || c.is_tautological())
    }

    /// At most two literals per clause, tautological clauses exempt.
    pub fn is_krom(&self) -> bool {
        self.clauses
            .iter()
            .all(|c| c.len() <= 2 || c.is_tautological())
    }

    /// Evaluates under an assignment that must be total on `var(φ)`.
    /// Tautological clauses count as satisfied.
    pub fn evaluate(&self, tau: &PartialAssignment) -> Result<bool> {
        for c in &self.clauses {
            if let Some(missing) = c.vars().find(|v| tau.get(*v).is_none()) {
                return Err(Error::PartialAssignment(missing.0));
            }
        }
        Ok(self
            .clauses
            .iter()
            .all(|c| c.is_tautological() || c.is_satisfied_by(tau)))
    }

    /// Evaluation against a dense model (`model[v]` is the value of `v`).
    pub fn is_satisfied_by_model(&self, model: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.is_tautological()
                || c.lits.iter().any(|l| {
                    model
                        .get(l.var().index())
                        .is_some_and(|&val| val == l.is_positive())
                })
        })
    }
}

impl fmt::Display for Cnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

/// Bijective name ↔ index table for one instance.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    index: HashMap<String, Var>,
}

impl VarTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts `name`, returning `None` if it was already declared.
    pub fn insert(&mut self, name: &str) -> Option<Var> {
        if self.index.contains_key(name) {
            return None;
        }
        let v = Var(self.names.len() as u32);
        self.names.push(name.to_owned());
        self.index.insert(name.to_owned(), v);
        Some(v)
    }

    pub fn get(&self, name: &str) -> Option<Var> {
        self.index.get(name).copied()
    }

    pub fn name(&self, v: Var) -> &str {
        &self.names[v.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, &str)> {
        self.names
            .iter()
            .enumerate()
            .map(|(i, n)| (Var(i as u32), n.as_str()))
    }

    pub fn lit_name(&self, lit: Lit) -> String {
        if lit.is_positive() {
            self.name(lit.var()).to_owned()
        } else {
            format!("-{}", self.name(lit.var()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> Var {
        Var(i)
    }

    #[test]
    fn clause_is_canonical() {
        let c = Clause::new([v(2).pos(), v(0).neg(), v(2).pos(), v(0).pos()]);
        assert_eq!(c.lits(), &[v(0).neg(), v(0).pos(), v(2).pos()]);
        assert!(c.is_tautological());
        assert_eq!(c.vars().collect::<Vec<_>>(), vec![v(0), v(2)]);
    }

    #[test]
    fn negation_is_involution() {
        let l = v(7).neg();
        assert_eq!(!!l, l);
        assert_eq!((!l).var(), v(7));
        assert!((!l).is_positive());
    }

    #[test]
    fn reduct_drops_and_shrinks() {
        let phi = Cnf::from_clauses(2, [Clause::new([v(0).pos(), v(1).pos()])]);
        let tau = PartialAssignment::from_pairs([(v(0), false), (v(1), false)]);
        let r = phi.reduct(&tau);
        assert_eq!(r.clauses(), &[Clause::empty()]);
        assert_eq!(phi.reduct(&PartialAssignment::new()), phi);
    }

    #[test]
    fn horn_krom_membership() {
        let a = v(0);
        let b = v(1);
        let c = v(2);
        let horn = Cnf::from_clauses(3, [Clause::new([a.neg(), b.pos()]), Clause::new([b.neg(), c.neg()])]);
        assert!(horn.is_horn());
        assert!(Cnf::new(0).is_horn());
        let krom = Cnf::from_clauses(2, [Clause::new([a.pos(), b.pos()]), Clause::unit(a.neg())]);
        assert!(krom.is_krom());
        assert!(Cnf::from_clauses(0, [Clause::empty()]).is_krom());
    }

    #[test]
    fn evaluate_requires_total_assignment() {
        let phi = Cnf::from_clauses(2, [Clause::new([v(0).pos(), v(1).pos()])]);
        let tau = PartialAssignment::from_pairs([(v(0), true), (v(1), false)]);
        assert!(phi.evaluate(&tau).unwrap());
        let partial = PartialAssignment::from_pairs([(v(0), true)]);
        assert!(matches!(phi.evaluate(&partial), Err(Error::PartialAssignment(1))));
        let bottom = Cnf::from_clauses(1, [Clause::empty()]);
        assert!(!bottom.evaluate(&PartialAssignment::from_pairs([(v(0), true)])).unwrap());
    }

    #[test]
    fn tautologies_are_satisfied() {
        let phi = Cnf::from_clauses(1, [Clause::new([v(0).pos(), v(0).neg()])]);
        assert!(phi.evaluate(&PartialAssignment::from_pairs([(v(0), false)])).unwrap());
        assert!(phi.is_satisfied_by_model(&[true]));
    }

    #[test]
    fn dimacs_literals() {
        assert_eq!(v(0).pos().to_dimacs(), 1);
        assert_eq!(v(1).neg().to_dimacs(), -2);
        assert_eq!(Lit::from_dimacs(-2), Some(v(1).neg()));
        assert_eq!(Lit::from_dimacs(0), None);
    }
}
