//! The Horn base class: least models, the solution checker, a direct
//! solver, and the SAT encoding that unrolls least-model computation.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::backdoor::{Backdoor, BaseClass};
use crate::cnf::{Cnf, Formula, Var};
use crate::encoding::{Encoding, Role};
use crate::error::{Error, Result};
use crate::instance::{Instance, Solution};
use crate::solv::{
    backdoor_manifestations_hold, check_subset_of_hyps, compatible_assignments, encode_solv, negated_guard, Block,
    LocalAlloc, Shell, SolvOptions,
};

/// A definite clause `body → head`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rule {
    pub head: Var,
    pub body: Vec<Var>,
}

/// A Horn formula split into rules (exactly one positive literal) and
/// constraints (purely negative clauses, `□` included as the empty one).
/// Tautological clauses are dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HornDecomposition {
    pub rules: Vec<Rule>,
    pub constraints: Vec<Vec<Var>>,
}

impl HornDecomposition {
    pub fn new(phi: &Cnf) -> Result<Self> {
        if !phi.is_horn() {
            return Err(Error::NotInClass(BaseClass::Horn));
        }
        let mut out = HornDecomposition::default();
        for c in phi.clauses().iter().filter(|c| !c.is_tautological()) {
            let negatives: Vec<Var> = c.lits().iter().filter(|l| !l.is_positive()).map(|l| l.var()).collect();
            match c.lits().iter().find(|l| l.is_positive()) {
                Some(head) => out.rules.push(Rule { head: head.var(), body: negatives }),
                None => out.constraints.push(negatives),
            }
        }
        Ok(out)
    }

    pub fn has_empty_constraint(&self) -> bool {
        self.constraints.iter().any(Vec::is_empty)
    }
}

/// Result of a least-model computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeastModel {
    /// The variables that are true in the unique minimal model.
    Model(BTreeSet<Var>),
    Inconsistent,
}

impl LeastModel {
    pub fn is_consistent(&self) -> bool {
        matches!(self, LeastModel::Model(_))
    }

    pub fn model(&self) -> Option<&BTreeSet<Var>> {
        match self {
            LeastModel::Model(m) => Some(m),
            LeastModel::Inconsistent => None,
        }
    }
}

/// Unique minimal model of `t ∪ s` (each element of `s` read as a unit
/// clause), by counter-based forward propagation in linear time.
pub fn least_model(t: &Cnf, s: &[Var]) -> Result<LeastModel> {
    let d = HornDecomposition::new(t)?;
    Ok(least_model_of(&d, s))
}

pub fn least_model_of(d: &HornDecomposition, s: &[Var]) -> LeastModel {
    let mut missing: Vec<usize> = d.rules.iter().map(|r| r.body.len()).collect();
    let mut watchers: BTreeMap<Var, Vec<usize>> = BTreeMap::new();
    for (i, r) in d.rules.iter().enumerate() {
        for &b in &r.body {
            watchers.entry(b).or_default().push(i);
        }
    }
    let mut truth: BTreeSet<Var> = BTreeSet::new();
    let mut queue: VecDeque<Var> = VecDeque::new();
    let make_true = |v: Var, truth: &mut BTreeSet<Var>, queue: &mut VecDeque<Var>| {
        if truth.insert(v) {
            queue.push_back(v);
        }
    };
    for &v in s {
        make_true(v, &mut truth, &mut queue);
    }
    for r in d.rules.iter().filter(|r| r.body.is_empty()) {
        make_true(r.head, &mut truth, &mut queue);
    }
    while let Some(v) = queue.pop_front() {
        for &i in watchers.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
            // bodies are duplicate-free, so each rule counts `v` once
            missing[i] -= 1;
            if missing[i] == 0 {
                make_true(d.rules[i].head, &mut truth, &mut queue);
            }
        }
    }
    if d.constraints.iter().any(|c| c.iter().all(|v| truth.contains(v))) {
        LeastModel::Inconsistent
    } else {
        LeastModel::Model(truth)
    }
}

/// Least model by synchronous rounds, each firing every rule whose body was
/// true after the previous round. Returns the true set and the number of
/// rounds after which nothing changed.
pub fn least_model_rounds(d: &HornDecomposition, s: &[Var]) -> (BTreeSet<Var>, usize) {
    let mut truth: BTreeSet<Var> = s.iter().copied().collect();
    let mut rounds = 0;
    loop {
        let fired: Vec<Var> = d
            .rules
            .iter()
            .filter(|r| !truth.contains(&r.head) && r.body.iter().all(|b| truth.contains(b)))
            .map(|r| r.head)
            .collect();
        if fired.is_empty() {
            return (truth, rounds);
        }
        truth.extend(fired);
        rounds += 1;
    }
}

/// Decides whether `S` is a solution by running the least-model check under
/// every backdoor assignment compatible with `S`.
pub fn check_solution_horn(p: &Instance, b: &Backdoor, s: &Solution) -> Result<bool> {
    b.expect_class(BaseClass::Horn)?;
    crate::backdoor::ensure_backdoor_of(p.theory(), b)?;
    check_subset_of_hyps(p, s)?;
    let rest: Vec<Var> = s.iter().filter(|&h| !b.contains(h)).collect();
    let mut consistent = false;
    let mut entailment = true;
    for tau in compatible_assignments(b, s) {
        let reduced = p.theory().reduct(&tau);
        let LeastModel::Model(u) = least_model(&reduced, &rest)? else { continue };
        consistent = true;
        let holds = p.mans().iter().all(|&m| match tau.get(m) {
            Some(value) => value,
            None => u.contains(&m),
        });
        if !holds {
            entailment = false;
        }
    }
    Ok(consistent && entailment)
}

/// First solution in binary counting order over `H` (sorted by index), by
/// running the checker on every candidate.
pub fn solve_bruteforce_horn(p: &Instance, b: &Backdoor) -> Result<Option<Solution>> {
    let hyps = p.hyps();
    if hyps.len() > 30 {
        return Err(Error::ResourceCap { what: "hypothesis count", limit: 30, actual: hyps.len() });
    }
    for mask in 0..1u64 << hyps.len() {
        let s = Solution::from_mask(hyps, mask);
        if check_solution_horn(p, b, &s)? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Horn solution encoding with default options.
pub fn encode_horn_solv(p: &Instance, b: &Backdoor) -> Result<Encoding> {
    encode_horn_solv_with(p, b, &SolvOptions::default())
}

pub fn encode_horn_solv_with(p: &Instance, b: &Backdoor, opts: &SolvOptions) -> Result<Encoding> {
    b.expect_class(BaseClass::Horn)?;
    encode_solv(p, b, opts)
}

/// Projects a model of a solution encoding onto the hypotheses (or onto the
/// selectors, for decoupled encodings).
pub fn decode_solution(enc: &Encoding, model: &[bool]) -> Result<Solution> {
    enc.decode(model)
}

/// Entailment block for the `i`-th backdoor assignment: unrolled least-model
/// steps of the reduct, then "guard ∧ no constraint violated → all
/// manifestations derived".
pub(crate) fn horn_block(
    p: &Instance,
    b: &Backdoor,
    shell: &Shell,
    i: u64,
    base: u32,
    opts: &SolvOptions,
) -> Result<Block> {
    let tau = b.assignment(i);
    let reduced = p.theory().reduct(&tau);
    let d = HornDecomposition::new(&reduced)?;
    if d.has_empty_constraint() {
        // the reduct is inconsistent, so the block holds vacuously
        return Ok(Block::default());
    }
    let steps = if opts.tight_steps { d.rules.len() } else { p.theory().len().min(p.num_vars()) };

    let mut alloc = LocalAlloc::new(base);
    let mut defs: Vec<Formula> = Vec::new();
    let free: Vec<Var> = p.vars().filter(|v| !b.contains(*v)).collect();
    let mut layer: BTreeMap<Var, Formula> = free
        .iter()
        .map(|&v| {
            let init = if p.is_hyp(v) { Formula::atom(shell.x(v)) } else { Formula::FALSE };
            (v, init)
        })
        .collect();
    let mut by_head: BTreeMap<Var, Vec<&[Var]>> = BTreeMap::new();
    for r in &d.rules {
        by_head.entry(r.head).or_default().push(&r.body);
    }
    for step in 1..=steps {
        let mut next = BTreeMap::new();
        let mut changed = false;
        for &v in &free {
            let prev = layer[&v].clone();
            let fired = by_head.get(&v).into_iter().flatten().map(|body| {
                Formula::and(body.iter().map(|w| layer[w].clone()))
            });
            let rhs = Formula::or(std::iter::once(prev.clone()).chain(fired));
            let value = match rhs {
                Formula::Const(_) | Formula::Atom(_) => rhs,
                _ => {
                    let u = alloc.fresh(Role::Step { block: i as u32, step: step as u32, var: v });
                    defs.push(Formula::iff(Formula::atom(u), rhs));
                    Formula::atom(u)
                }
            };
            changed |= value != prev;
            next.insert(v, value);
        }
        layer = next;
        if !changed {
            // every later layer would repeat this one
            break;
        }
    }

    let check = Formula::and(
        d.constraints.iter().map(|c| Formula::or(c.iter().map(|v| Formula::not(layer[v].clone())))),
    );
    let man = if backdoor_manifestations_hold(p, &tau) {
        Formula::and(p.mans().iter().filter(|m| !b.contains(**m)).map(|m| layer[m].clone()))
    } else {
        Formula::FALSE
    };
    let entail = Formula::or(negated_guard(p, shell, &tau).into_iter().chain([Formula::not(check), man]));
    if entail.as_const() == Some(true) {
        return Ok(Block::default());
    }
    defs.push(entail);
    Ok(Block::from_formula(&Formula::and(defs), alloc))
}
