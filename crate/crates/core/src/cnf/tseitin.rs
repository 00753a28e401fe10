use super::{Clause, Formula, Lit, Var};
use crate::encoding::{Encoding, EncodingBuilder, Projection};

/// Source of fresh auxiliary variables.
pub trait VarAllocator {
    fn fresh_aux(&mut self) -> Var;
}

/// Converts `f` into an equisatisfiable CNF whose original variables keep
/// their indices; auxiliaries are numbered after the largest variable of `f`.
pub fn tseitin(f: &Formula) -> Encoding {
    let num_original = f.vars().iter().next_back().map_or(0, |v| v.0 + 1);
    let mut builder = EncodingBuilder::with_theory(num_original as usize);
    let clauses = tseitin_into(f, &mut builder);
    builder.finish(clauses, Projection::empty())
}

/// Tseitin conversion with one auxiliary per internal node and full
/// biconditional definitions. Negations are absorbed into literals. The top
/// level is asserted directly: conjunctions are split, a disjunction becomes
/// a single clause, and `lit ↔ node` reuses `lit` as the node's definition.
pub fn tseitin_into(f: &Formula, alloc: &mut impl VarAllocator) -> Vec<Clause> {
    let mut out = Vec::new();
    let mut conjuncts = Vec::new();
    flatten_top(f, &mut conjuncts);
    for c in conjuncts {
        assert_top(c, alloc, &mut out);
    }
    out
}

fn flatten_top<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
    match f {
        Formula::And(cs) => cs.iter().for_each(|c| flatten_top(c, out)),
        other => out.push(other),
    }
}

fn assert_top(f: &Formula, alloc: &mut impl VarAllocator, out: &mut Vec<Clause>) {
    match f {
        Formula::Const(true) => {}
        Formula::Const(false) => out.push(Clause::empty()),
        Formula::Or(cs) => {
            let lits: Vec<Lit> = cs.iter().map(|c| literal(c, alloc, out)).collect();
            out.push(Clause::new(lits));
        }
        Formula::Implies(a, b) => {
            let la = literal(a, alloc, out);
            let lb = literal(b, alloc, out);
            out.push(Clause::new([!la, lb]));
        }
        Formula::Iff(a, b) if is_literal(a) && !is_literal(b) => {
            let la = literal(a, alloc, out);
            define(la, b, alloc, out);
        }
        other => {
            let l = literal(other, alloc, out);
            out.push(Clause::unit(l));
        }
    }
}

fn is_literal(f: &Formula) -> bool {
    match f {
        Formula::Atom(_) => true,
        Formula::Not(g) => is_literal(g),
        _ => false,
    }
}

/// Literal standing for `f`, defining auxiliaries as needed.
fn literal(f: &Formula, alloc: &mut impl VarAllocator, out: &mut Vec<Clause>) -> Lit {
    match f {
        Formula::Atom(v) => v.pos(),
        Formula::Not(g) => !literal(g, alloc, out),
        _ => {
            let x = alloc.fresh_aux().pos();
            define(x, f, alloc, out);
            x
        }
    }
}

/// Emits clauses for `x ↔ f`.
fn define(x: Lit, f: &Formula, alloc: &mut impl VarAllocator, out: &mut Vec<Clause>) {
    match f {
        Formula::Const(b) => out.push(Clause::unit(if *b { x } else { !x })),
        Formula::Atom(_) | Formula::Not(_) => {
            let l = literal(f, alloc, out);
            out.push(Clause::new([!x, l]));
            out.push(Clause::new([x, !l]));
        }
        Formula::And(cs) => {
            let ls: Vec<Lit> = cs.iter().map(|c| literal(c, alloc, out)).collect();
            for &l in &ls {
                out.push(Clause::new([!x, l]));
            }
            out.push(Clause::new(std::iter::once(x).chain(ls.iter().map(|&l| !l))));
        }
        Formula::Or(cs) => {
            let ls: Vec<Lit> = cs.iter().map(|c| literal(c, alloc, out)).collect();
            for &l in &ls {
                out.push(Clause::new([x, !l]));
            }
            out.push(Clause::new(std::iter::once(!x).chain(ls.iter().copied())));
        }
        Formula::Implies(a, b) => {
            let la = literal(a, alloc, out);
            let lb = literal(b, alloc, out);
            out.push(Clause::new([!x, !la, lb]));
            out.push(Clause::new([x, la]));
            out.push(Clause::new([x, !lb]));
        }
        Formula::Iff(a, b) => {
            let la = literal(a, alloc, out);
            let lb = literal(b, alloc, out);
            out.push(Clause::new([!x, !la, lb]));
            out.push(Clause::new([!x, la, !lb]));
            out.push(Clause::new([x, la, lb]));
            out.push(Clause::new([x, !la, !lb]));
        }
    }
}

impl VarAllocator for u32 {
    fn fresh_aux(&mut self) -> Var {
        let v = Var(*self);
        *self += 1;
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::builtin_solve;

    #[test]
    fn atom_needs_no_auxiliary() {
        let enc = tseitin(&Formula::atom(Var(0)));
        assert_eq!(enc.cnf.clauses(), &[Clause::unit(Var(0).pos())]);
        assert_eq!(enc.cnf.num_vars(), 1);
    }

    #[test]
    fn false_is_empty_clause() {
        let enc = tseitin(&Formula::FALSE);
        assert_eq!(enc.cnf.clauses(), &[Clause::empty()]);
    }

    #[test]
    fn or_of_and_matches_truth_table() {
        let (a, b, c) = (Var(0), Var(1), Var(2));
        let f = Formula::or([
            Formula::and([Formula::atom(a), Formula::atom(b)]),
            Formula::atom(c),
        ]);
        let enc = tseitin(&f);
        for mask in 0u32..8 {
            let val = |v: Var| mask >> v.0 & 1 == 1;
            let mut cnf = enc.cnf.clone();
            for v in [a, b, c] {
                cnf.push(Clause::unit(Lit::new(v, val(v))));
            }
            let sat = builtin_solve(&cnf).is_sat();
            assert_eq!(sat, f.eval(&val), "mask {mask:03b}");
        }
    }
}
