//! Encodings deciding whether a hypothesis belongs to some subset-minimal
//! solution.
//!
//! The decoupled solution encoding guarantees that the selected set `S` is a
//! solution. For every selected `h`, a block over fresh copies of `V`
//! exhibits a model of `T ∪ (S ∖ {h})` falsifying a manifestation, so
//! `S ∖ {h}` entails less than `M`. Since `S` is consistent, so is every
//! subset, and this certifies that no proper subset of `S` is a solution.

use crate::backdoor::Backdoor;
use crate::cnf::{Clause, Lit, Var};
use crate::encoding::{Encoding, Role};
use crate::error::{Error, Result};
use crate::instance::{Instance, Solution};
use crate::solv::{encode_solv_shell, Block, LocalAlloc, SolvOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinOptions {
    /// Require the witness for `S ∖ {h}` to falsify every manifestation
    /// instead of at least one.
    pub all_manifestations_false: bool,
    /// Options of the underlying solution encoding; it is always decoupled.
    pub solv: SolvOptions,
}

impl Default for MinOptions {
    fn default() -> Self {
        MinOptions { all_manifestations_false: false, solv: SolvOptions::decoupled() }
    }
}

/// Satisfiable iff `h_star` is in some subset-minimal solution; models
/// project (through the selectors) onto such solutions.
pub fn encode_subsetmin(p: &Instance, b: &Backdoor, h_star: Var, opts: &MinOptions) -> Result<Encoding> {
    if !p.is_hyp(h_star) {
        let name = if h_star.index() < p.num_vars() { p.names().name(h_star).to_owned() } else { h_star.to_string() };
        return Err(Error::NotAHypothesis(name));
    }
    let solv = SolvOptions { decoupled: true, ..opts.solv };
    let mut shell = encode_solv_shell(p, b, &solv)?;
    shell.clauses.push(Clause::unit(shell.x(h_star).pos()));

    let base = shell.base();
    let selectors: Vec<(Var, Var)> = p.hyps().iter().map(|&h| (h, shell.x(h))).collect();
    let blocks: Vec<Block> = solv.exec.map_slice(&selectors, |&(h, s_h)| {
        non_entailment_block(p, h, s_h, &selectors, base, opts.all_manifestations_false)
    });
    shell.add_blocks(blocks);
    Ok(shell.finish())
}

pub fn encode_horn_subsetmin(p: &Instance, b: &Backdoor, h_star: Var) -> Result<Encoding> {
    b.expect_class(crate::backdoor::BaseClass::Horn)?;
    encode_subsetmin(p, b, h_star, &MinOptions::default())
}

pub fn encode_krom_subsetmin(p: &Instance, b: &Backdoor, h_star: Var) -> Result<Encoding> {
    b.expect_class(crate::backdoor::BaseClass::Krom)?;
    encode_subsetmin(p, b, h_star, &MinOptions::default())
}

/// The selected hypotheses of a model of a subset-minimal encoding.
pub fn decode_minimal_solution(enc: &Encoding, model: &[bool]) -> Result<Solution> {
    enc.decode(model)
}

/// `s_h → (¬h^h ∧ ∧_{v∈H∖{h}}(s_v → v^h) ∧ T^h ∧ M̄^h)` over copies `v^h`.
fn non_entailment_block(
    p: &Instance,
    h: Var,
    s_h: Var,
    selectors: &[(Var, Var)],
    base: u32,
    all_false: bool,
) -> Block {
    let mut alloc = LocalAlloc::new(base);
    let copy: Vec<Var> = p.vars().map(|v| alloc.fresh(Role::Copy { hyp: h, var: v })).collect();
    let c = |v: Var| copy[v.index()];
    let guarded = |lits: Vec<Lit>| Clause::new(std::iter::once(s_h.neg()).chain(lits));

    let mut clauses: Vec<Clause> = p
        .theory()
        .clauses()
        .iter()
        .map(|cl| guarded(cl.lits().iter().map(|l| Lit::new(c(l.var()), l.is_positive())).collect()))
        .collect();
    clauses.push(guarded(vec![c(h).neg()]));
    for &(v, s_v) in selectors.iter().filter(|(v, _)| *v != h) {
        clauses.push(guarded(vec![s_v.neg(), c(v).pos()]));
    }
    if all_false {
        clauses.extend(p.mans().iter().map(|&m| guarded(vec![c(m).neg()])));
    } else {
        clauses.push(guarded(p.mans().iter().map(|&m| c(m).neg()).collect()));
    }
    alloc.finish(clauses)
}
