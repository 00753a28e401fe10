//! The shell shared by the Horn and Krom solution encodings: the theory,
//! optional selector variables, and one entailment block per backdoor
//! assignment, assembled in block order.

use std::collections::BTreeMap;

use crate::backdoor::{Backdoor, BaseClass};
use crate::cnf::{tseitin_into, Clause, Formula, PartialAssignment, Var, VarAllocator};
use crate::encoding::{Encoding, EncodingBuilder, Projection, ProjectionKind, Role};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::instance::Instance;

/// Options shared by the solution encodings.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolvOptions {
    /// Read hypotheses from selector variables `s_h` with `s_h → h`, so that
    /// models project onto exactly the solutions.
    pub decoupled: bool,
    /// Krom only: emit the manifestation branch without the inconsistency
    /// disjuncts.
    pub strict: bool,
    /// Horn only: unroll as many steps as the reduct has rules instead of
    /// `min(|T|, |V|)`.
    pub tight_steps: bool,
    pub exec: Exec,
}

impl SolvOptions {
    pub fn decoupled() -> Self {
        SolvOptions { decoupled: true, ..Self::default() }
    }
}

/// Allocator for variables local to one block. Blocks of one batch are all
/// numbered from the same base and shifted into place on assembly.
pub(crate) struct LocalAlloc {
    base: u32,
    roles: Vec<Role>,
}

impl LocalAlloc {
    pub(crate) fn new(base: u32) -> Self {
        LocalAlloc { base, roles: Vec::new() }
    }

    pub(crate) fn fresh(&mut self, role: Role) -> Var {
        let v = Var(self.base + self.roles.len() as u32);
        self.roles.push(role);
        v
    }

    pub(crate) fn finish(self, clauses: Vec<Clause>) -> Block {
        Block { clauses, roles: self.roles }
    }
}

impl VarAllocator for LocalAlloc {
    fn fresh_aux(&mut self) -> Var {
        self.fresh(Role::Aux)
    }
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Block {
    pub(crate) clauses: Vec<Clause>,
    pub(crate) roles: Vec<Role>,
}

impl Block {
    pub(crate) fn from_formula(f: &Formula, mut alloc: LocalAlloc) -> Block {
        let clauses = tseitin_into(f, &mut alloc);
        alloc.finish(clauses)
    }
}

/// Global part of an encoding under construction.
pub(crate) struct Shell {
    pub(crate) roles: Vec<Role>,
    pub(crate) clauses: Vec<Clause>,
    /// hypothesis → the global variable standing for "h ∈ S"
    pub(crate) hyp_var: BTreeMap<Var, Var>,
    pub(crate) projection: Projection,
}

impl Shell {
    /// `T`, plus `s_h → h` for every hypothesis when decoupled.
    pub(crate) fn new(p: &Instance, decoupled: bool) -> Shell {
        let mut builder = EncodingBuilder::with_theory(p.num_vars());
        let mut clauses: Vec<Clause> = p.theory().clauses().to_vec();
        let mut hyp_var = BTreeMap::new();
        for &h in p.hyps() {
            if decoupled {
                let s = builder.fresh(Role::Selector { hyp: h });
                clauses.push(Clause::new([s.neg(), h.pos()]));
                hyp_var.insert(h, s);
            } else {
                hyp_var.insert(h, h);
            }
        }
        let projection = Projection {
            kind: if decoupled { ProjectionKind::Selectors } else { ProjectionKind::Hypotheses },
            vars: hyp_var.iter().map(|(&h, &v)| (h, v)).collect(),
        };
        let roles = builder.finish(Vec::new(), Projection::empty()).roles;
        Shell { roles, clauses, hyp_var, projection }
    }

    pub(crate) fn base(&self) -> u32 {
        self.roles.len() as u32
    }

    pub(crate) fn x(&self, h: Var) -> Var {
        self.hyp_var[&h]
    }

    /// Appends blocks that were all numbered from [`Shell::base`].
    pub(crate) fn add_blocks(&mut self, blocks: Vec<Block>) {
        let base = self.base();
        for block in blocks {
            let shift = self.roles.len() as u32 - base;
            let rename = |v: Var| if v.0 >= base { Var(v.0 + shift) } else { v };
            self.clauses.extend(block.clauses.into_iter().map(|c| {
                Clause::new(c.lits().iter().map(|l| crate::cnf::Lit::new(rename(l.var()), l.is_positive())))
            }));
            self.roles.extend(block.roles);
        }
    }

    pub(crate) fn finish(self) -> Encoding {
        let mut cnf = crate::cnf::Cnf::new(self.roles.len() as u32);
        cnf.extend(self.clauses);
        Encoding { cnf, roles: self.roles, projection: self.projection }
    }
}

/// The guard `∧_{h∈H∩B}(x_h → τ(h))` negated: the disjuncts `x_h` for every
/// hypothesis the assignment sets false.
pub(crate) fn negated_guard(p: &Instance, shell: &Shell, tau: &PartialAssignment) -> Vec<Formula> {
    p.hyps()
        .iter()
        .filter(|&&h| tau.get(h) == Some(false))
        .map(|&h| Formula::atom(shell.x(h)))
        .collect()
}

/// True iff every manifestation the assignment touches is set true.
pub(crate) fn backdoor_manifestations_hold(p: &Instance, tau: &PartialAssignment) -> bool {
    p.mans().iter().all(|&m| tau.get(m) != Some(false))
}

/// Builds the solution encoding for `b`'s class.
pub(crate) fn encode_solv_shell(p: &Instance, b: &Backdoor, opts: &SolvOptions) -> Result<Shell> {
    crate::backdoor::ensure_backdoor_of(p.theory(), b)?;
    let mut shell = Shell::new(p, opts.decoupled);
    let base = shell.base();
    let blocks: Vec<Result<Block>> = opts.exec.map(b.num_assignments(), |i| match b.class() {
        BaseClass::Horn => crate::horn::horn_block(p, b, &shell, i, base, opts),
        BaseClass::Krom => crate::krom::krom_block(p, b, &shell, i, base, opts),
    });
    let blocks = blocks.into_iter().collect::<Result<Vec<_>>>()?;
    shell.add_blocks(blocks);
    Ok(shell)
}

/// Solution encoding for `b`'s class: satisfiable iff the instance has a
/// solution.
pub fn encode_solv(p: &Instance, b: &Backdoor, opts: &SolvOptions) -> Result<Encoding> {
    Ok(encode_solv_shell(p, b, opts)?.finish())
}

pub(crate) fn check_subset_of_hyps(p: &Instance, s: &crate::instance::Solution) -> Result<()> {
    match s.iter().find(|&h| !p.is_hyp(h)) {
        Some(v) => Err(Error::NotAHypothesis(p.names().name(v).to_owned())),
        None => Ok(()),
    }
}

/// Indices of the backdoor assignments compatible with `S`: every
/// hypothesis of `S` inside the backdoor is set true.
pub(crate) fn compatible_assignments<'a>(
    b: &'a Backdoor,
    s: &'a crate::instance::Solution,
) -> impl Iterator<Item = PartialAssignment> + 'a {
    (0..b.num_assignments())
        .map(|i| b.assignment(i))
        .filter(move |tau| s.iter().all(|h| tau.get(h) != Some(false)))
}
