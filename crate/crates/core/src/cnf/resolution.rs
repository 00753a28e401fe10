use std::collections::{BTreeSet, HashMap, HashSet};

use super::{Clause, Cnf, Lit};
use crate::error::{Error, Result};

/// Default bound on the number of clauses in a closure.
pub const DEFAULT_CLOSURE_CAP: usize = 200_000;

/// `Res(φ)` with the default cap.
pub fn resolution_closure(phi: &Cnf) -> Result<BTreeSet<Clause>> {
    resolution_closure_capped(phi, DEFAULT_CLOSURE_CAP)
}

/// Closure of `φ` under binary resolution. Tautological clauses (input or
/// derived) are dropped; identical clauses are stored once. No subsumption
/// deletion takes place.
pub fn resolution_closure_capped(phi: &Cnf, cap: usize) -> Result<BTreeSet<Clause>> {
    let mut seen: HashSet<Clause> = HashSet::new();
    let mut list: Vec<Clause> = Vec::new();
    // literal code -> indices of clauses containing that literal
    let mut occurs: HashMap<Lit, Vec<usize>> = HashMap::new();

    let add = |c: Clause,
                   seen: &mut HashSet<Clause>,
                   list: &mut Vec<Clause>,
                   occurs: &mut HashMap<Lit, Vec<usize>>|
     -> Result<()> {
        if c.is_tautological() || seen.contains(&c) {
            return Ok(());
        }
        if list.len() >= cap {
            return Err(Error::ResourceCap {
                what: "resolution closure",
                limit: cap,
                actual: list.len() + 1,
            });
        }
        for &l in c.lits() {
            occurs.entry(l).or_default().push(list.len());
        }
        seen.insert(c.clone());
        list.push(c);
        Ok(())
    };

    for c in phi.clauses() {
        add(c.clone(), &mut seen, &mut list, &mut occurs)?;
    }

    let mut next = 0;
    while next < list.len() {
        let c = list[next].clone();
        next += 1;
        for &l in c.lits() {
            let partners = occurs.get(&!l).cloned().unwrap_or_default();
            for j in partners {
                let d = &list[j];
                let resolvent = Clause::new(
                    c.lits()
                        .iter()
                        .copied()
                        .filter(|&x| x != l)
                        .chain(d.lits().iter().copied().filter(|&x| x != !l)),
                );
                add(resolvent, &mut seen, &mut list, &mut occurs)?;
            }
        }
    }

    Ok(list.into_iter().collect())
}
