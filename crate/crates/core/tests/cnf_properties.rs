mod common;

use abdsat::cnf::{resolution_closure, tseitin};
use abdsat::solver::{builtin_solve, parse_dimacs, to_dimacs};
use abdsat::{Clause, Cnf, PartialAssignment, Var};
use common::*;
use proptest::prelude::*;

fn assignment_strategy(num_vars: u32) -> impl Strategy<Value = PartialAssignment> {
    prop::collection::vec(prop::option::of(any::<bool>()), num_vars as usize).prop_map(|vals| {
        PartialAssignment::from_pairs(
            vals.into_iter().enumerate().filter_map(|(i, v)| v.map(|b| (Var(i as u32), b))),
        )
    })
}

fn split(tau: &PartialAssignment, mask: u64) -> (PartialAssignment, PartialAssignment) {
    let (a, b): (Vec<_>, Vec<_>) = tau.iter().partition(|(v, _)| bit(mask, *v));
    (PartialAssignment::from_pairs(a), PartialAssignment::from_pairs(b))
}

fn clause_set(cnf: &Cnf) -> std::collections::BTreeSet<Clause> {
    cnf.clauses().iter().cloned().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reduct_composes_over_disjoint_assignments(
        phi in cnf_strategy(8, 12, 4),
        tau in assignment_strategy(8),
        mask in any::<u64>(),
    ) {
        let (t1, t2) = split(&tau, mask);
        let stepwise = phi.reduct(&t1).reduct(&t2);
        let at_once = phi.reduct(&t1.union(&t2));
        prop_assert_eq!(clause_set(&stepwise), clause_set(&at_once));
    }

    #[test]
    fn total_reduct_is_empty_or_contains_the_empty_clause(phi in cnf_strategy(7, 12, 4), mask in 0u64..128) {
        let tau = PartialAssignment::from_mask(&(0..7).map(Var).collect::<Vec<_>>(), mask);
        let r = phi.reduct(&tau);
        let value = phi.evaluate(&tau).unwrap();
        prop_assert_eq!(value, cnf_holds(&phi, mask));
        if value {
            prop_assert!(r.clauses().iter().all(Clause::is_tautological));
        } else {
            prop_assert!(r.has_empty_clause());
        }
    }

    #[test]
    fn resolution_closure_is_sound_and_complete_on_krom(phi in krom_strategy(6, 9)) {
        let res = resolution_closure(&phi).unwrap();
        for c in &res {
            prop_assert!(!c.is_tautological());
            prop_assert!(entails(&phi, 6, c), "derived {:?} is not entailed", c);
        }
        // every entailed clause is subsumed by a derived one
        for c in all_clauses(6) {
            let derived = res.iter().any(|d| d.is_subset_of(&c)) || phi.clauses().iter().any(|d| d.is_subset_of(&c));
            prop_assert_eq!(entails(&phi, 6, &c), derived, "clause {:?}", c);
        }
    }

    #[test]
    fn tseitin_is_equisatisfiable_and_projects_models(f in formula_strategy(10)) {
        let enc = tseitin(&f);
        let originals: Vec<Var> = f.vars().into_iter().collect();
        let n = originals.iter().map(|v| v.0 + 1).max().unwrap_or(0);
        let truth: Vec<u64> = (0..1u64 << n).filter(|&m| f.eval(&|v| bit(m, v))).collect();
        let result = builtin_solve(&enc.cnf);
        prop_assert_eq!(result.is_sat(), !truth.is_empty());
        if let Some(model) = result.model() {
            prop_assert!(f.eval(&|v| model[v.index()]));
        }
        for &m in truth.iter().take(4) {
            let mut fixed = enc.cnf.clone();
            fixed.extend(originals.iter().map(|&v| Clause::unit(abdsat::Lit::new(v, bit(m, v)))));
            prop_assert!(builtin_solve(&fixed).is_sat(), "model {:b} does not extend", m);
        }
    }

    #[test]
    fn builtin_solver_agrees_with_truth_table(phi in any_cnf(9, 24, 4)) {
        let n = phi.num_vars();
        let result = builtin_solve(&phi);
        prop_assert_eq!(result.is_sat(), !models(&phi, n).is_empty());
        if let Some(model) = result.model() {
            prop_assert!(phi.is_satisfied_by_model(model));
        }
    }

    #[test]
    fn dimacs_round_trips(phi in any_cnf(12, 20, 5)) {
        let parsed = parse_dimacs(&to_dimacs(&phi)).unwrap();
        prop_assert_eq!(parsed.num_vars(), phi.num_vars());
        prop_assert_eq!(parsed.clauses(), phi.clauses());
    }

    #[test]
    fn horn_and_krom_tests_match_their_definitions(phi in any_cnf(6, 8, 4)) {
        let constrained = || phi.clauses().iter().filter(|c| !c.is_tautological());
        prop_assert_eq!(phi.is_horn(), constrained().all(|c| c.positive_count() <= 1));
        prop_assert_eq!(phi.is_krom(), constrained().all(|c| c.len() <= 2));
    }
}

#[test]
fn reduct_of_the_skiing_theory() {
    let ex = abdsat::instance::skiing_example();
    let v = |n: &str| ex.var(n).unwrap();
    let r = ex.theory().reduct(&PartialAssignment::from_pairs([(v("snows"), true)]));
    let expected: std::collections::BTreeSet<Clause> = [
        Clause::new([v("hurt").neg(), v("sad").pos()]),
        Clause::new([v("warm").neg()]),
        Clause::new([v("rains").neg(), v("sad").pos()]),
    ]
    .into_iter()
    .collect();
    assert_eq!(clause_set(&r), expected);
    assert_eq!(clause_set(&ex.theory().reduct(&PartialAssignment::new())), clause_set(ex.theory()));
}

#[test]
fn closure_of_the_reduced_skiing_theory_has_the_chained_resolvent() {
    let ex = abdsat::instance::skiing_example();
    let v = |n: &str| ex.var(n).unwrap();
    let r = ex.theory().reduct(&PartialAssignment::from_pairs([(v("snows"), false)]));
    let closure = resolution_closure(&r).unwrap();
    assert!(closure.contains(&Clause::new([v("precipitation").neg(), v("sad").pos()])));
    assert_eq!(closure.len(), r.len() + 1);
}

#[test]
fn skiing_theory_evaluates_true_under_the_listed_assignment() {
    let ex = abdsat::instance::skiing_example();
    let v = |n: &str| ex.var(n).unwrap();
    let tau = PartialAssignment::from_pairs([
        (v("precipitation"), true),
        (v("rains"), false),
        (v("snows"), true),
        (v("warm"), false),
        (v("hurt"), false),
        (v("sad"), false),
    ]);
    assert!(ex.theory().evaluate(&tau).unwrap());
}
