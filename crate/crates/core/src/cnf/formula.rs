use std::collections::BTreeSet;

use super::{Lit, Var};

/// A propositional formula tree.
///
/// Build through the constructor functions: they fold constants eagerly, so
/// a constant only ever survives as the whole formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Const(bool),
    Atom(Var),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub const TRUE: Formula = Formula::Const(true);
    pub const FALSE: Formula = Formula::Const(false);

    pub fn constant(value: bool) -> Self {
        Formula::Const(value)
    }

    pub fn atom(v: Var) -> Self {
        Formula::Atom(v)
    }

    pub fn lit(l: Lit) -> Self {
        if l.is_positive() {
            Formula::Atom(l.var())
        } else {
            Formula::Not(Box::new(Formula::Atom(l.var())))
        }
    }

    pub fn as_const(&self) -> Option<bool> {
        match self {
            Formula::Const(b) => Some(*b),
            _ => None,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        match f {
            Formula::Const(b) => Formula::Const(!b),
            Formula::Not(inner) => *inner,
            other => Formula::Not(Box::new(other)),
        }
    }

    pub fn and(children: impl IntoIterator<Item = Formula>) -> Self {
        let mut out = Vec::new();
        for c in children {
            match c {
                Formula::Const(true) => {}
                Formula::Const(false) => return Formula::FALSE,
                Formula::And(grand) => out.extend(grand),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Formula::TRUE,
            1 => out.pop().unwrap(),
            _ => Formula::And(out),
        }
    }

    pub fn or(children: impl IntoIterator<Item = Formula>) -> Self {
        let mut out = Vec::new();
        for c in children {
            match c {
                Formula::Const(false) => {}
                Formula::Const(true) => return Formula::TRUE,
                Formula::Or(grand) => out.extend(grand),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Formula::FALSE,
            1 => out.pop().unwrap(),
            _ => Formula::Or(out),
        }
    }

    pub fn implies(lhs: Formula, rhs: Formula) -> Self {
        match (lhs.as_const(), rhs.as_const()) {
            (Some(false), _) | (_, Some(true)) => Formula::TRUE,
            (Some(true), _) => rhs,
            (_, Some(false)) => Formula::not(lhs),
            _ => Formula::Implies(Box::new(lhs), Box::new(rhs)),
        }
    }

    pub fn iff(lhs: Formula, rhs: Formula) -> Self {
        match (lhs.as_const(), rhs.as_const()) {
            (Some(a), Some(b)) => Formula::Const(a == b),
            (Some(true), _) => rhs,
            (Some(false), _) => Formula::not(rhs),
            (_, Some(true)) => lhs,
            (_, Some(false)) => Formula::not(lhs),
            _ => Formula::Iff(Box::new(lhs), Box::new(rhs)),
        }
    }

    pub fn eval(&self, value: &impl Fn(Var) -> bool) -> bool {
        match self {
            Formula::Const(b) => *b,
            Formula::Atom(v) => value(*v),
            Formula::Not(f) => !f.eval(value),
            Formula::And(cs) => cs.iter().all(|c| c.eval(value)),
            Formula::Or(cs) => cs.iter().any(|c| c.eval(value)),
            Formula::Implies(a, b) => !a.eval(value) || b.eval(value),
            Formula::Iff(a, b) => a.eval(value) == b.eval(value),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Const(_) => {}
            Formula::Atom(v) => {
                out.insert(*v);
            }
            Formula::Not(f) => f.collect_vars(out),
            Formula::And(cs) | Formula::Or(cs) => cs.iter().for_each(|c| c.collect_vars(out)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Formula::Const(_) | Formula::Atom(_) => 1,
            Formula::Not(f) => 1 + f.node_count(),
            Formula::And(cs) | Formula::Or(cs) => 1 + cs.iter().map(Formula::node_count).sum::<usize>(),
            Formula::Implies(a, b) | Formula::Iff(a, b) => 1 + a.node_count() + b.node_count(),
        }
    }

    /// Renames every atom.
    pub fn map_vars(self, f: &impl Fn(Var) -> Var) -> Formula {
        match self {
            Formula::Const(_) => self,
            Formula::Atom(v) => Formula::Atom(f(v)),
            Formula::Not(g) => Formula::Not(Box::new(g.map_vars(f))),
            Formula::And(cs) => Formula::And(cs.into_iter().map(|c| c.map_vars(f)).collect()),
            Formula::Or(cs) => Formula::Or(cs.into_iter().map(|c| c.map_vars(f)).collect()),
            Formula::Implies(a, b) => {
                Formula::Implies(Box::new(a.map_vars(f)), Box::new(b.map_vars(f)))
            }
            Formula::Iff(a, b) => Formula::Iff(Box::new(a.map_vars(f)), Box::new(b.map_vars(f))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Formula {
        Formula::atom(Var(0))
    }

    fn b() -> Formula {
        Formula::atom(Var(1))
    }

    #[test]
    fn constants_fold() {
        assert_eq!(Formula::and([a(), Formula::TRUE]), a());
        assert_eq!(Formula::and([a(), Formula::FALSE]), Formula::FALSE);
        assert_eq!(Formula::or([a(), Formula::TRUE]), Formula::TRUE);
        assert_eq!(Formula::or(Vec::new()), Formula::FALSE);
        assert_eq!(Formula::and(Vec::new()), Formula::TRUE);
        assert_eq!(Formula::implies(Formula::TRUE, a()), a());
        assert_eq!(Formula::implies(a(), Formula::FALSE), Formula::not(a()));
        assert_eq!(Formula::iff(Formula::FALSE, a()), Formula::not(a()));
        assert_eq!(Formula::not(Formula::not(a())), a());
    }

    #[test]
    fn nested_connectives_flatten() {
        let f = Formula::and([a(), Formula::and([b(), a()])]);
        assert!(matches!(&f, Formula::And(cs) if cs.len() == 3));
    }

    #[test]
    fn eval_connectives() {
        let f = Formula::iff(a(), Formula::implies(b(), a()));
        for (x, y) in [(false, false), (false, true), (true, false), (true, true)] {
            let val = |v: Var| if v == Var(0) { x } else { y };
            assert_eq!(f.eval(&val), x == (!y || x));
        }
    }
}
