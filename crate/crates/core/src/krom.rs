//! The Krom base class: 2-CNF entailment by resolution, TrimRes, the
//! solution checker, and the SAT encoding over TrimRes constants.

use std::collections::BTreeSet;

use crate::backdoor::{Backdoor, BaseClass};
use crate::cnf::{resolution_closure, Clause, Cnf, Formula, Lit, PartialAssignment, Var};
use crate::encoding::Encoding;
use crate::error::{Error, Result};
use crate::instance::{Instance, Solution};
use crate::solv::{
    backdoor_manifestations_hold, check_subset_of_hyps, compatible_assignments, encode_solv, negated_guard, Block,
    LocalAlloc, Shell, SolvOptions,
};

fn ensure_krom(phi: &Cnf) -> Result<()> {
    if phi.is_krom() {
        Ok(())
    } else {
        Err(Error::NotInClass(BaseClass::Krom))
    }
}

/// `phi ∧ assumptions ∧ ¬goal` is unsatisfiable, i.e. the empty clause is in
/// the resolution closure.
pub fn krom_entails(phi: &Cnf, assumptions: &[Lit], goal: Lit) -> Result<bool> {
    ensure_krom(phi)?;
    let mut query = phi.clone();
    query.extend(assumptions.iter().map(|&l| Clause::unit(l)));
    query.push(Clause::unit(!goal));
    krom_unsat(&query)
}

/// `phi ∧ assumptions` is unsatisfiable.
pub fn krom_inconsistent(phi: &Cnf, assumptions: &[Lit]) -> Result<bool> {
    ensure_krom(phi)?;
    let mut query = phi.clone();
    query.extend(assumptions.iter().map(|&l| Clause::unit(l)));
    krom_unsat(&query)
}

fn krom_unsat(query: &Cnf) -> Result<bool> {
    if query.has_empty_clause() {
        return Ok(true);
    }
    Ok(resolution_closure(query)?.contains(&Clause::empty()))
}

/// The resolvents of a Krom formula that mention only the given variables,
/// or just `□` when the formula is unsatisfiable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TrimRes {
    Empty,
    Clauses(BTreeSet<Clause>),
}

impl TrimRes {
    pub fn contains(&self, c: &Clause) -> bool {
        match self {
            TrimRes::Empty => c.is_empty(),
            TrimRes::Clauses(cs) => cs.contains(c),
        }
    }

    pub fn has_empty_clause(&self) -> bool {
        matches!(self, TrimRes::Empty)
    }

    /// Members as a sorted list; `[□]` for the collapsed set.
    pub fn clauses(&self) -> Vec<Clause> {
        match self {
            TrimRes::Empty => vec![Clause::empty()],
            TrimRes::Clauses(cs) => cs.iter().cloned().collect(),
        }
    }
}

/// `Res(phi)` restricted to clauses over `keep`, collapsing to `{□}` when
/// `□` is derivable.
pub fn trimres_of(phi: &Cnf, keep: &BTreeSet<Var>) -> Result<TrimRes> {
    ensure_krom(phi)?;
    let closure = resolution_closure(phi)?;
    if phi.has_empty_clause() || closure.contains(&Clause::empty()) {
        return Ok(TrimRes::Empty);
    }
    Ok(TrimRes::Clauses(
        closure.into_iter().filter(|c| c.vars().all(|v| keep.contains(&v))).collect(),
    ))
}

/// TrimRes of the reduct `T[τ]` over the hypotheses and manifestations that
/// `τ` leaves unassigned.
pub fn trimres(p: &Instance, tau: &PartialAssignment) -> Result<TrimRes> {
    let keep: BTreeSet<Var> =
        p.hyps().iter().chain(p.mans()).copied().filter(|v| !tau.contains(*v)).collect();
    trimres_of(&p.theory().reduct(tau), &keep)
}

/// Decides whether `S` is a solution. Entailment of the manifestations is
/// only demanded under assignments where `T[τ] ∪ S` is consistent, since an
/// inconsistent branch entails everything.
pub fn check_solution_krom(p: &Instance, b: &Backdoor, s: &Solution) -> Result<bool> {
    check_krom(p, b, s, false)
}

/// The checker with the entailment tests run under every compatible
/// assignment, consistent or not. It rejects some solutions whose
/// witnesses lie in inconsistent branches; kept for comparison.
pub fn check_solution_krom_strict(p: &Instance, b: &Backdoor, s: &Solution) -> Result<bool> {
    check_krom(p, b, s, true)
}

fn check_krom(p: &Instance, b: &Backdoor, s: &Solution, strict: bool) -> Result<bool> {
    b.expect_class(BaseClass::Krom)?;
    crate::backdoor::ensure_backdoor_of(p.theory(), b)?;
    check_subset_of_hyps(p, s)?;
    let rest: Vec<Var> = s.iter().filter(|&h| !b.contains(h)).collect();
    let units: Vec<Lit> = rest.iter().map(|h| h.pos()).collect();
    let mut consistent = false;
    let mut entailment = true;
    for tau in compatible_assignments(b, s) {
        let reduced = p.theory().reduct(&tau);
        let branch_consistent = !krom_inconsistent(&reduced, &units)?;
        consistent |= branch_consistent;
        if backdoor_manifestations_hold(p, &tau) {
            if !branch_consistent && !strict {
                continue;
            }
            for &m in p.mans().iter().filter(|m| !tau.contains(**m)) {
                let mut entailed = krom_entails(&reduced, &[], m.pos())?;
                for &h in &rest {
                    if entailed {
                        break;
                    }
                    entailed = krom_entails(&reduced, &[h.pos()], m.pos())?;
                }
                if !entailed {
                    entailment = false;
                }
            }
        } else if branch_consistent {
            entailment = false;
        }
    }
    Ok(consistent && entailment)
}

/// Krom solution encoding with default options.
pub fn encode_krom_solv(p: &Instance, b: &Backdoor) -> Result<Encoding> {
    encode_krom_solv_with(p, b, &SolvOptions::default())
}

pub fn encode_krom_solv_with(p: &Instance, b: &Backdoor, opts: &SolvOptions) -> Result<Encoding> {
    b.expect_class(BaseClass::Krom)?;
    encode_solv(p, b, opts)
}

/// Entailment block for the `i`-th backdoor assignment, with every TrimRes
/// membership folded to a constant.
pub(crate) fn krom_block(
    p: &Instance,
    b: &Backdoor,
    shell: &Shell,
    i: u64,
    base: u32,
    opts: &SolvOptions,
) -> Result<Block> {
    let tau = b.assignment(i);
    let tr = trimres(p, &tau)?;
    let free_hyps: Vec<Var> = p.hyps().iter().copied().filter(|h| !b.contains(*h)).collect();
    let x = |h: Var| Formula::atom(shell.x(h));
    let member = |lits: &[Lit]| Formula::constant(tr.contains(&Clause::new(lits.iter().copied())));

    let mut inconsistency = vec![member(&[])];
    for (j, &h1) in free_hyps.iter().enumerate() {
        inconsistency.push(Formula::and([x(h1), member(&[h1.neg()])]));
        for &h2 in &free_hyps[j + 1..] {
            inconsistency.push(Formula::and([x(h1), x(h2), member(&[h1.neg(), h2.neg()])]));
        }
    }
    let psi = Formula::or(inconsistency);

    let body = if backdoor_manifestations_hold(p, &tau) {
        let phi = Formula::and(p.mans().iter().filter(|m| !b.contains(**m)).map(|&m| {
            Formula::or(
                std::iter::once(member(&[m.pos()]))
                    .chain(free_hyps.iter().map(|&h| Formula::and([x(h), member(&[h.neg(), m.pos()])]))),
            )
        }));
        if opts.strict {
            phi
        } else {
            Formula::or([phi, psi])
        }
    } else {
        psi
    };
    let entail = Formula::or(negated_guard(p, shell, &tau).into_iter().chain([body]));
    if entail.as_const() == Some(true) {
        return Ok(Block::default());
    }
    Ok(Block::from_formula(&entail, LocalAlloc::new(base)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{oracle_is_solution, parse_instance_text, skiing_example};
    use crate::solver::builtin_solve;

    fn lit(p: &Instance, s: &str) -> Lit {
        match s.strip_prefix('-') {
            Some(n) => p.var(n).unwrap().neg(),
            None => p.var(s).unwrap().pos(),
        }
    }

    fn clause(p: &Instance, lits: &[&str]) -> Clause {
        Clause::new(lits.iter().map(|s| lit(p, s)))
    }

    #[test]
    fn entailment_examples() {
        let a = Var(0);
        let b = Var(1);
        let t = Cnf::from_clauses(2, [Clause::new([a.neg(), b.pos()])]);
        assert!(krom_entails(&t, &[a.pos()], b.pos()).unwrap());
        assert!(!krom_entails(&Cnf::new(2), &[], b.pos()).unwrap());

        let ex = skiing_example();
        let tau = PartialAssignment::from_pairs([(ex.var("snows").unwrap(), false)]);
        let reduced = ex.theory().reduct(&tau);
        assert!(krom_entails(&reduced, &[lit(&ex, "hurt")], lit(&ex, "sad")).unwrap());
        assert!(krom_entails(&ex.theory().clone(), &[], lit(&ex, "sad")).is_err());
    }

    #[test]
    fn trimres_examples() {
        let ex = skiing_example();
        let snows = ex.var("snows").unwrap();
        let off = trimres(&ex, &PartialAssignment::from_pairs([(snows, false)])).unwrap();
        assert_eq!(
            off,
            TrimRes::Clauses([clause(&ex, &["-hurt", "sad"]), clause(&ex, &["-precipitation", "sad"])].into())
        );
        let on = trimres(&ex, &PartialAssignment::from_pairs([(snows, true)])).unwrap();
        assert_eq!(on, TrimRes::Clauses([clause(&ex, &["-hurt", "sad"]), clause(&ex, &["-warm"])].into()));

        let p = parse_instance_text("var a h\nhyp h\nclause a\nclause -a\n").unwrap();
        assert_eq!(trimres(&p, &PartialAssignment::new()).unwrap(), TrimRes::Empty);
    }

    #[test]
    fn checker_on_the_skiing_example() {
        let ex = skiing_example();
        let b = Backdoor::verified(ex.theory(), [ex.var("snows").unwrap()], BaseClass::Krom).unwrap();
        let check = |names: &str| check_solution_krom(&ex, &b, &ex.solution_from_names(names).unwrap()).unwrap();
        assert!(check("hurt"));
        assert!(check("precipitation,warm"));
        assert!(!check(""));
        assert!(!check("warm"));
    }

    #[test]
    fn strict_checker_misses_solutions_witnessed_only_by_inconsistency() {
        let p = parse_instance_text("var h1 h2 b m\nhyp h1 h2\nman m\nclause -h1 -h2 b\nclause -b m\n").unwrap();
        let b = Backdoor::verified(p.theory(), [p.var("b").unwrap()], BaseClass::Krom).unwrap();
        let s = p.solution_from_names("h1,h2").unwrap();
        assert!(oracle_is_solution(&p, &s).unwrap());
        assert!(check_solution_krom(&p, &b, &s).unwrap());
        assert!(!check_solution_krom_strict(&p, &b, &s).unwrap());
    }

    #[test]
    fn encoding_on_the_skiing_example() {
        let ex = skiing_example();
        let b = Backdoor::verified(ex.theory(), [ex.var("snows").unwrap()], BaseClass::Krom).unwrap();
        let enc = encode_krom_solv(&ex, &b).unwrap();
        let r = builtin_solve(&enc.cnf);
        let s = enc.decode(r.model().expect("satisfiable")).unwrap();
        assert!(oracle_is_solution(&ex, &s).unwrap());
    }

    #[test]
    fn contradictory_theory_encodes_unsat() {
        let p = parse_instance_text("var m1 h\nhyp h\nman m1\nclause m1\nclause -m1\n").unwrap();
        let b = Backdoor::verified(p.theory(), [], BaseClass::Krom).unwrap();
        assert!(!builtin_solve(&encode_krom_solv(&p, &b).unwrap().cnf).is_sat());
    }
}
