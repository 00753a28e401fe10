//! Ground truth by exhaustive enumeration of total assignments.
//!
//! Nothing here touches the SAT machinery, the reducts, or the backdoor
//! code; the oracle only evaluates clauses under bitmask assignments.

use std::collections::BTreeSet;

use super::{Instance, Solution};
use crate::error::{Error, Result};
use crate::exec::Exec;

pub const DEFAULT_ORACLE_VARS: usize = 20;
pub const DEFAULT_ORACLE_HYPS: usize = 12;

/// All models of `T`, precomputed once per instance.
#[derive(Clone, Debug)]
pub struct Oracle<'a> {
    instance: &'a Instance,
    /// Total assignments satisfying `T`, as bitmasks over `V`.
    models: Vec<u32>,
    hyp_limit: usize,
}

impl<'a> Oracle<'a> {
    pub fn new(instance: &'a Instance) -> Result<Self> {
        Self::with_limits(instance, DEFAULT_ORACLE_VARS, DEFAULT_ORACLE_HYPS, Exec::default())
    }

    pub fn with_limits(instance: &'a Instance, var_limit: usize, hyp_limit: usize, exec: Exec) -> Result<Self> {
        let n = instance.num_vars();
        if n > var_limit.min(31) {
            return Err(Error::ResourceCap { what: "oracle variable count", limit: var_limit, actual: n });
        }
        // (positive mask, negative mask) per clause; tautologies are dropped
        let clauses: Vec<(u32, u32)> = instance
            .theory()
            .clauses()
            .iter()
            .filter(|c| !c.is_tautological())
            .map(|c| {
                c.lits().iter().fold((0u32, 0u32), |(p, q), l| {
                    let bit = 1u32 << l.var().0;
                    if l.is_positive() { (p | bit, q) } else { (p, q | bit) }
                })
            })
            .collect();
        let models = exec.filter_map(1u64 << n, |m| {
            let m = m as u32;
            clauses
                .iter()
                .all(|&(pos, neg)| m & pos != 0 || !m & neg != 0)
                .then_some(m)
        });
        Ok(Oracle { instance, models, hyp_limit })
    }

    pub fn models(&self) -> &[u32] {
        &self.models
    }

    fn mask_of(&self, s: &Solution) -> u32 {
        s.iter().fold(0, |acc, v| acc | 1 << v.0)
    }

    fn man_mask(&self) -> u32 {
        self.instance.mans().iter().fold(0, |acc, v| acc | 1 << v.0)
    }

    /// `T ∪ S` consistent and `T ∪ S ⊨ M`.
    pub fn is_solution(&self, s: &Solution) -> bool {
        let smask = self.mask_of(s);
        let mmask = self.man_mask();
        let mut consistent = false;
        for &m in &self.models {
            if m & smask == smask {
                consistent = true;
                if m & mmask != mmask {
                    return false;
                }
            }
        }
        consistent
    }

    /// `T ∪ S` consistent.
    pub fn is_consistent(&self, s: &Solution) -> bool {
        let smask = self.mask_of(s);
        self.models.iter().any(|&m| m & smask == smask)
    }

    /// Every solution, in increasing hypothesis-mask order.
    pub fn solve(&self) -> Result<Vec<Solution>> {
        let hyps = self.instance.hyps();
        if hyps.len() > self.hyp_limit {
            return Err(Error::ResourceCap {
                what: "oracle hypothesis count",
                limit: self.hyp_limit,
                actual: hyps.len(),
            });
        }
        let k = hyps.len();
        let mmask = self.man_mask();
        let project = |m: u32| {
            hyps.iter()
                .enumerate()
                .filter(|(_, h)| m >> h.0 & 1 == 1)
                .fold(0usize, |acc, (j, _)| acc | 1 << j)
        };
        // reach[S]: some model makes every h ∈ S true; bad[S]: some such
        // model also falsifies a manifestation
        let mut reach = vec![false; 1 << k];
        let mut bad = vec![false; 1 << k];
        for &m in &self.models {
            let hm = project(m);
            reach[hm] = true;
            if m & mmask != mmask {
                bad[hm] = true;
            }
        }
        for bit in 0..k {
            for s in (0..1usize << k).rev() {
                if s >> bit & 1 == 0 {
                    reach[s] |= reach[s | 1 << bit];
                    bad[s] |= bad[s | 1 << bit];
                }
            }
        }
        Ok((0..1usize << k)
            .filter(|&s| reach[s] && !bad[s])
            .map(|s| Solution::from_mask(hyps, s as u64))
            .collect())
    }

    /// The ⊆-minimal elements of [`Oracle::solve`].
    pub fn subset_minimal(&self) -> Result<Vec<Solution>> {
        let all = self.solve()?;
        Ok(minimal_elements(&all))
    }
}

pub(crate) fn minimal_elements(sets: &[Solution]) -> Vec<Solution> {
    let unique: BTreeSet<&Solution> = sets.iter().collect();
    unique
        .iter()
        .filter(|s| !unique.iter().any(|t| t != *s && t.is_subset(s)))
        .map(|s| (*s).clone())
        .collect()
}

pub fn oracle_is_solution(p: &Instance, s: &Solution) -> Result<bool> {
    if let Some(h) = s.iter().find(|h| !p.is_hyp(*h)) {
        return Err(Error::NotAHypothesis(format!("variable {}", h.0)));
    }
    Ok(Oracle::new(p)?.is_solution(s))
}

pub fn oracle_solve(p: &Instance) -> Result<Vec<Solution>> {
    Oracle::new(p)?.solve()
}

pub fn oracle_subset_minimal(p: &Instance) -> Result<Vec<Solution>> {
    Oracle::new(p)?.subset_minimal()
}
