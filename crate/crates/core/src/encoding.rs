//! CNF encodings together with the role of every CNF variable.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cnf::{Clause, Cnf, Var, VarAllocator, VarTable};
use crate::error::{Error, Result};
use crate::instance::Solution;

/// What a CNF variable stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum Role {
    /// A variable of the abduction instance.
    Theory { var: Var },
    /// `s_h`: hypothesis `hyp` is part of the solution.
    Selector { hyp: Var },
    /// Value of `var` after `step` rounds of least-model computation under
    /// the `block`-th backdoor assignment.
    Step { block: u32, step: u32, var: Var },
    /// Copy of `var` used by the non-entailment witness for `hyp`.
    Copy { hyp: Var, var: Var },
    /// Sequential-counter register.
    Counter,
    /// Tseitin auxiliary.
    Aux,
}

/// Which CNF variables a solution is read from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Projection {
    pub kind: ProjectionKind,
    /// `(hypothesis, CNF variable)` pairs in hypothesis order.
    pub vars: Vec<(Var, Var)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProjectionKind {
    Hypotheses,
    Selectors,
}

impl Projection {
    pub fn empty() -> Self {
        Projection {
            kind: ProjectionKind::Hypotheses,
            vars: Vec::new(),
        }
    }

    pub fn hypotheses(hyps: &[Var]) -> Self {
        Projection {
            kind: ProjectionKind::Hypotheses,
            vars: hyps.iter().map(|&h| (h, h)).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Encoding {
    pub cnf: Cnf,
    pub roles: Vec<Role>,
    pub projection: Projection,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EncodingStats {
    pub vars: usize,
    pub clauses: usize,
    pub literals: usize,
    pub step_vars: usize,
    pub selector_vars: usize,
    pub copy_vars: usize,
    pub aux_vars: usize,
}

impl Encoding {
    pub fn role(&self, v: Var) -> Role {
        self.roles[v.index()]
    }

    pub fn stats(&self) -> EncodingStats {
        let count = |pred: fn(&Role) -> bool| self.roles.iter().filter(|r| pred(r)).count();
        EncodingStats {
            vars: self.cnf.num_vars() as usize,
            clauses: self.cnf.len(),
            literals: self.cnf.clauses().iter().map(Clause::len).sum(),
            step_vars: count(|r| matches!(r, Role::Step { .. })),
            selector_vars: count(|r| matches!(r, Role::Selector { .. })),
            copy_vars: count(|r| matches!(r, Role::Copy { .. })),
            aux_vars: count(|r| matches!(r, Role::Aux | Role::Counter)),
        }
    }

    /// Adds clauses whose fresh variables were taken from [`Encoding::fresh`].
    pub fn add_clauses(&mut self, clauses: impl IntoIterator<Item = Clause>) {
        self.cnf.extend(clauses);
    }

    pub fn fresh(&mut self, role: Role) -> Var {
        let v = Var(self.roles.len() as u32);
        self.roles.push(role);
        self.cnf.ensure_vars(self.roles.len() as u32);
        v
    }

    /// The CNF variable carrying `s_h` (or `h` when not decoupled).
    pub fn solution_var(&self, hyp: Var) -> Option<Var> {
        self.projection
            .vars
            .iter()
            .find(|(h, _)| *h == hyp)
            .map(|&(_, v)| v)
    }

    /// Reads the projected solution off a model, which must satisfy the CNF.
    pub fn decode(&self, model: &[bool]) -> Result<Solution> {
        if model.len() < self.cnf.num_vars() as usize || !self.cnf.is_satisfied_by_model(model) {
            return Err(Error::NotAModel);
        }
        Ok(self.project(model))
    }

    /// Projection without re-checking the model.
    pub fn project(&self, model: &[bool]) -> Solution {
        Solution::new(
            self.projection
                .vars
                .iter()
                .filter(|(_, v)| model[v.index()])
                .map(|&(h, _)| h),
        )
    }

    /// Serializable role map for decoding third-party solver output.
    pub fn role_map(&self, names: &VarTable) -> RoleMap {
        RoleMap {
            num_vars: self.cnf.num_vars(),
            projection_kind: self.projection.kind,
            projection: self
                .projection
                .vars
                .iter()
                .map(|&(h, v)| ProjectedVar {
                    hypothesis: names.name(h).to_owned(),
                    dimacs: v.0 as i64 + 1,
                })
                .collect(),
            roles: self
                .roles
                .iter()
                .enumerate()
                .filter(|(_, r)| !matches!(r, Role::Aux | Role::Counter))
                .map(|(i, r)| RoleEntry {
                    dimacs: i as i64 + 1,
                    role: *r,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoleMap {
    pub num_vars: u32,
    pub projection_kind: ProjectionKind,
    pub projection: Vec<ProjectedVar>,
    /// Non-auxiliary variables only.
    pub roles: Vec<RoleEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectedVar {
    pub hypothesis: String,
    pub dimacs: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoleEntry {
    pub dimacs: i64,
    #[serde(flatten)]
    pub role: Role,
}

impl RoleMap {
    /// Hypothesis names set true by a DIMACS value list.
    pub fn decode_values(&self, values: &[i64]) -> BTreeSet<String> {
        let truthy: BTreeSet<i64> = values.iter().copied().filter(|&x| x > 0).collect();
        self.projection
            .iter()
            .filter(|p| truthy.contains(&p.dimacs))
            .map(|p| p.hypothesis.clone())
            .collect()
    }
}

/// Allocates CNF variables and records their roles. Theory variables keep
/// their instance indices.
#[derive(Clone, Debug, Default)]
pub struct EncodingBuilder {
    roles: Vec<Role>,
}

impl EncodingBuilder {
    pub fn with_theory(num_vars: usize) -> Self {
        EncodingBuilder {
            roles: (0..num_vars as u32)
                .map(|i| Role::Theory { var: Var(i) })
                .collect(),
        }
    }

    pub fn fresh(&mut self, role: Role) -> Var {
        let v = Var(self.roles.len() as u32);
        self.roles.push(role);
        v
    }

    pub fn num_vars(&self) -> usize {
        self.roles.len()
    }

    pub fn finish(self, clauses: Vec<Clause>, projection: Projection) -> Encoding {
        let mut cnf = Cnf::new(self.roles.len() as u32);
        cnf.extend(clauses);
        debug_assert_eq!(cnf.num_vars() as usize, self.roles.len());
        Encoding {
            cnf,
            roles: self.roles,
            projection,
        }
    }
}

impl VarAllocator for EncodingBuilder {
    fn fresh_aux(&mut self) -> Var {
        self.fresh(Role::Aux)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decode_rejects_non_models() {
        let mut b = EncodingBuilder::with_theory(2);
        let s = b.fresh(Role::Selector { hyp: Var(0) });
        let enc = b.finish(
            vec![Clause::new([s.neg(), Var(0).pos()])],
            Projection {
                kind: ProjectionKind::Selectors,
                vars: vec![(Var(0), s)],
            },
        );
        let sol = enc.decode(&[true, false, true]).unwrap();
        assert_eq!(sol, Solution::new([Var(0)]));
        // the projection reads s_h, not h
        assert_eq!(enc.decode(&[true, false, false]).unwrap(), Solution::new([]));
        assert!(matches!(enc.decode(&[false, false, true]), Err(Error::NotAModel)));
    }

    #[test]
    fn role_map_round_trips_through_json() {
        let mut names = VarTable::new();
        names.insert("h");
        let mut b = EncodingBuilder::with_theory(1);
        b.fresh(Role::Step { block: 0, step: 1, var: Var(0) });
        b.fresh(Role::Aux);
        let enc = b.finish(Vec::new(), Projection::hypotheses(&[Var(0)]));
        let map = enc.role_map(&names);
        assert_eq!(map.roles.len(), 2);
        let text = serde_json::to_string(&map).unwrap();
        let back: RoleMap = serde_json::from_str(&text).unwrap();
        assert_eq!(back, map);
        assert_eq!(back.decode_values(&[1, -2, 3]), ["h".to_owned()].into());
    }
}
