use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Instance;
use crate::backdoor::BaseClass;
use crate::cnf::{Clause, Cnf, Lit, Var, VarTable};
use crate::error::{Error, Result};

/// Size limits for [`random_instance`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Exact number of variables.
    pub vars: usize,
    /// Upper bound on hypotheses (at least one is drawn).
    pub hyps: usize,
    /// Upper bound on manifestations (at least one is drawn).
    pub mans: usize,
    /// Upper bound on the number of clauses (at least one is drawn).
    pub clauses: usize,
    /// Upper bound on the clause width.
    pub width: usize,
}

/// The backdoor to plant: `k` variables outside `M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Planted {
    pub class: BaseClass,
    pub k: usize,
}

/// Deterministic random instance whose theory has a strong backdoor of the
/// planted class and size at most `k`. Returns the instance together with
/// the planted variables (sorted by index).
pub fn random_instance(seed: u64, limits: Limits, planted: Planted) -> Result<(Instance, Vec<Var>)> {
    let Limits { vars: n, hyps, mans, clauses, width } = limits;
    if n == 0 || hyps == 0 || mans == 0 || clauses == 0 || width == 0 {
        return Err(Error::Semantic("random instance limits must be positive".into()));
    }
    if hyps + mans > n {
        return Err(Error::Semantic(format!("{hyps} hypotheses and {mans} manifestations do not fit in {n} variables")));
    }
    if planted.k > n - mans {
        return Err(Error::Semantic(format!("backdoor size {} exceeds |V| - |M| = {}", planted.k, n - mans)));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut names = VarTable::new();
    for i in 0..n {
        names.insert(&format!("v{i}"));
    }
    let mut order: Vec<Var> = (0..n as u32).map(Var).collect();
    order.shuffle(&mut rng);
    let num_h = rng.gen_range(1..=hyps);
    let num_m = rng.gen_range(1..=mans);
    let h_set: Vec<Var> = order[..num_h].to_vec();
    let m_set: Vec<Var> = order[num_h..num_h + num_m].to_vec();

    let mut non_man: Vec<Var> = (0..n as u32).map(Var).filter(|v| !m_set.contains(v)).collect();
    non_man.shuffle(&mut rng);
    let mut backdoor: Vec<Var> = non_man[..planted.k].to_vec();
    backdoor.sort();

    let num_clauses = rng.gen_range(1..=clauses);
    let mut theory = Cnf::new(n as u32);
    for _ in 0..num_clauses {
        let w = rng.gen_range(1..=width.min(n));
        let mut vs: Vec<Var> = (0..n as u32).map(Var).collect();
        vs.shuffle(&mut rng);
        vs.truncate(w);
        let mut lits: Vec<Lit> = vs
            .into_iter()
            .map(|v| {
                // hypotheses lean negative and manifestations positive, so
                // clauses tend to read as "hypotheses explain observations"
                let p_pos = if h_set.contains(&v) {
                    0.3
                } else if m_set.contains(&v) {
                    0.7
                } else {
                    0.5
                };
                Lit::new(v, rng.gen_bool(p_pos))
            })
            .collect();
        match planted.class {
            BaseClass::Horn => {
                let mut seen_positive = false;
                for l in lits.iter_mut() {
                    if backdoor.contains(&l.var()) || !l.is_positive() {
                        continue;
                    }
                    if seen_positive {
                        *l = !*l;
                    }
                    seen_positive = true;
                }
            }
            BaseClass::Krom => {
                let mut outside = 0;
                lits.retain(|l| {
                    if backdoor.contains(&l.var()) {
                        return true;
                    }
                    outside += 1;
                    outside <= 2
                });
            }
        }
        theory.push(Clause::new(lits));
    }

    let instance = Instance::new(names, h_set, m_set, theory)?;
    Ok((instance, backdoor))
}

/// Shape of the small seeded corpus: at most 7 variables, 3 hypotheses,
/// 2 manifestations, 10 clauses of width at most 4.
pub const CORPUS_LIMITS: Limits = Limits { vars: 7, hyps: 3, mans: 2, clauses: 10, width: 4 };

/// The corpus instance for `seed`: between 5 and 7 variables and a planted
/// backdoor of size between 0 and 3, all drawn from the seed.
pub fn corpus_instance(seed: u64, class: BaseClass) -> Result<(Instance, Vec<Var>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_c0de);
    let vars = rng.gen_range(5..=CORPUS_LIMITS.vars);
    let k = rng.gen_range(0..=3);
    random_instance(seed, Limits { vars, ..CORPUS_LIMITS }, Planted { class, k })
}
