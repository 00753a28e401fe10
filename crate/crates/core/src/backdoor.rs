//! Strong Horn- and Krom-backdoor sets: definitional verification over all
//! `2^|B|` assignments, and detection through their structural
//! characterizations (vertex cover of positive pairs for Horn, hitting every
//! triple of a clause for Krom) solved by bounded search trees.
//!
//! The search trees are the plain 2-way / 3-way branching algorithms. Faster
//! parameterized algorithms for vertex cover and 3-hitting set would slot in
//! behind [`detect_horn_backdoor`] and [`detect_krom_backdoor`] unchanged.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cnf::{Cnf, PartialAssignment, Var};
use crate::error::{Error, Result};
use crate::exec::Exec;

/// Largest backdoor accepted by the definitional check.
pub const DEFAULT_VERIFY_LIMIT: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseClass {
    Horn,
    Krom,
}

impl BaseClass {
    pub fn contains(self, phi: &Cnf) -> bool {
        match self {
            BaseClass::Horn => phi.is_horn(),
            BaseClass::Krom => phi.is_krom(),
        }
    }
}

impl fmt::Display for BaseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaseClass::Horn => "horn",
            BaseClass::Krom => "krom",
        })
    }
}

impl FromStr for BaseClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "horn" => Ok(BaseClass::Horn),
            "krom" => Ok(BaseClass::Krom),
            other => Err(format!("unknown base class `{other}` (expected horn or krom)")),
        }
    }
}

/// A strong backdoor set that has passed [`verify_strong_backdoor`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Backdoor {
    vars: Vec<Var>,
    class: BaseClass,
    /// Requested variables that do not occur in the theory.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pruned: Vec<Var>,
}

impl Backdoor {
    /// Checks `vars` against `phi` and keeps it if it verifies. Variables
    /// outside `var(phi)` are dropped and reported in [`Backdoor::pruned`].
    pub fn verified(phi: &Cnf, vars: impl IntoIterator<Item = Var>, class: BaseClass) -> Result<Self> {
        let occurring = phi.vars();
        let (vars, pruned): (BTreeSet<Var>, BTreeSet<Var>) =
            vars.into_iter().partition(|v| occurring.contains(v));
        let vars: Vec<Var> = vars.into_iter().collect();
        if !verify_strong_backdoor(phi, &vars, class)? {
            return Err(Error::BackdoorVerification(format!(
                "not a strong {class}-backdoor set"
            )));
        }
        Ok(Backdoor { vars, class, pruned: pruned.into_iter().collect() })
    }

    /// Smallest backdoor found by iterative deepening up to `max_k`.
    pub fn smallest(phi: &Cnf, class: BaseClass, max_k: usize) -> Result<Self> {
        for k in 0..=max_k {
            let found = match class {
                BaseClass::Horn => detect_horn_backdoor(phi, k),
                BaseClass::Krom => detect_krom_backdoor(phi, k),
            };
            if let Some(vars) = found {
                return Backdoor::verified(phi, vars, class);
            }
        }
        Err(Error::ResourceCap {
            what: "backdoor size",
            limit: max_k,
            actual: max_k + 1,
        })
    }

    /// Variables sorted by index.
    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn class(&self) -> BaseClass {
        self.class
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn pruned(&self) -> &[Var] {
        &self.pruned
    }

    pub fn contains(&self, v: Var) -> bool {
        self.vars.binary_search(&v).is_ok()
    }

    pub(crate) fn expect_class(&self, class: BaseClass) -> Result<()> {
        if self.class == class {
            Ok(())
        } else {
            Err(Error::WrongClass { expected: class, got: self.class })
        }
    }

    /// The `i`-th assignment in binary counting order (bit `j` of `i` is
    /// the value of the `j`-th backdoor variable).
    pub fn assignment(&self, i: u64) -> PartialAssignment {
        PartialAssignment::from_mask(&self.vars, i)
    }

    pub fn num_assignments(&self) -> u64 {
        1u64 << self.vars.len()
    }
}

/// Largest backdoor the encoders accept.
pub const MAX_ENCODE_BACKDOOR: usize = 20;

/// Rejects a backdoor that does not fit `phi` or is too large to encode.
pub(crate) fn ensure_backdoor_of(phi: &Cnf, b: &Backdoor) -> Result<()> {
    if b.len() > MAX_ENCODE_BACKDOOR {
        return Err(Error::ResourceCap { what: "backdoor size", limit: MAX_ENCODE_BACKDOOR, actual: b.len() });
    }
    if !satisfies_structurally(phi, b.vars(), b.class()) {
        return Err(Error::BackdoorVerification(format!("not a strong {}-backdoor set of this theory", b.class())));
    }
    Ok(())
}

/// `smallest_backdoor` as a free function.
pub fn smallest_backdoor(phi: &Cnf, class: BaseClass, max_k: usize) -> Result<Backdoor> {
    Backdoor::smallest(phi, class, max_k)
}

/// True iff `phi[τ]` is in `class` for every `τ` over `b`.
pub fn verify_strong_backdoor(phi: &Cnf, b: &[Var], class: BaseClass) -> Result<bool> {
    verify_strong_backdoor_with(phi, b, class, Exec::default())
}

pub fn verify_strong_backdoor_with(phi: &Cnf, b: &[Var], class: BaseClass, exec: Exec) -> Result<bool> {
    let b: Vec<Var> = b.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    if b.len() > DEFAULT_VERIFY_LIMIT {
        return Err(Error::ResourceCap {
            what: "backdoor verification size",
            limit: DEFAULT_VERIFY_LIMIT,
            actual: b.len(),
        });
    }
    Ok(exec.all(1u64 << b.len(), |mask| {
        class.contains(&phi.reduct(&PartialAssignment::from_mask(&b, mask)))
    }))
}

/// Structural test: every non-tautological clause has at most one positive
/// variable (Horn) or at most two variables (Krom) outside `b`.
pub fn satisfies_structurally(phi: &Cnf, b: &[Var], class: BaseClass) -> bool {
    phi.clauses().iter().filter(|c| !c.is_tautological()).all(|c| {
        let outside = c.lits().iter().filter(|l| !b.contains(&l.var()));
        match class {
            BaseClass::Horn => outside.filter(|l| l.is_positive()).count() <= 1,
            BaseClass::Krom => outside.count() <= 2,
        }
    })
}

/// Strong Horn-backdoor of size ≤ `k`: a vertex cover of the graph joining
/// every two positive variables that share a clause.
pub fn detect_horn_backdoor(phi: &Cnf, k: usize) -> Option<Vec<Var>> {
    let mut edges: Vec<Vec<Var>> = Vec::new();
    for c in phi.clauses().iter().filter(|c| !c.is_tautological()) {
        let pos: Vec<Var> = c.lits().iter().filter(|l| l.is_positive()).map(|l| l.var()).collect();
        for (i, &x) in pos.iter().enumerate() {
            for &y in &pos[i + 1..] {
                edges.push(vec![x, y]);
            }
        }
    }
    hitting_search(edges, 2, k)
}

/// Strong Krom-backdoor of size ≤ `k`: hits every clause until at most two
/// of its variables are left uncovered.
pub fn detect_krom_backdoor(phi: &Cnf, k: usize) -> Option<Vec<Var>> {
    let sets: Vec<Vec<Var>> = phi
        .clauses()
        .iter()
        .filter(|c| !c.is_tautological() && c.len() > 2)
        .map(|c| c.vars().collect())
        .collect();
    hitting_search(sets, 3, k)
}

/// Finds `B` with `|B| ≤ k` leaving fewer than `arity` uncovered elements in
/// every set, branching on the lexicographically smallest violated
/// `arity`-tuple and trying its smaller variables first.
fn hitting_search(mut sets: Vec<Vec<Var>>, arity: usize, k: usize) -> Option<Vec<Var>> {
    sets.sort();
    sets.dedup();
    let mut chosen = BTreeSet::new();
    branch(&sets, arity, k, &mut chosen).then(|| chosen.into_iter().collect())
}

fn branch(sets: &[Vec<Var>], arity: usize, budget: usize, chosen: &mut BTreeSet<Var>) -> bool {
    let violated = sets
        .iter()
        .filter_map(|s| {
            let uncovered: Vec<Var> = s.iter().copied().filter(|v| !chosen.contains(v)).collect();
            (uncovered.len() >= arity).then(|| uncovered[..arity].to_vec())
        })
        .min();
    let Some(tuple) = violated else { return true };
    if budget == 0 {
        return false;
    }
    for v in tuple {
        chosen.insert(v);
        if branch(sets, arity, budget - 1, chosen) {
            return true;
        }
        chosen.remove(&v);
    }
    false
}
