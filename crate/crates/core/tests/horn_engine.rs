mod common;

use std::collections::BTreeSet;

use abdsat::horn::{least_model, least_model_rounds, HornDecomposition, LeastModel};
use abdsat::instance::{oracle_is_solution, oracle_solve};
use abdsat::solver::builtin_solve;
use abdsat::{
    check_solution_horn, encode_horn_solv, solve_bruteforce_horn, Backdoor, BaseClass, SolvOptions, Var,
};
use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn least_model_is_the_minimum_model(t in horn_strategy(8, 10, 4), s_mask in 0u64..256) {
        let s: Vec<Var> = (0..8).map(Var).filter(|v| bit(s_mask, *v)).collect();
        let mut with_s = t.clone();
        with_s.extend(s.iter().map(|v| abdsat::Clause::unit(v.pos())));
        let all = models(&with_s, 8);
        match least_model(&t, &s).unwrap() {
            LeastModel::Inconsistent => prop_assert!(all.is_empty()),
            LeastModel::Model(u) => {
                let u_mask = u.iter().fold(0u64, |m, v| m | 1 << v.0);
                prop_assert!(cnf_holds(&with_s, u_mask), "least model is not a model");
                for m in all {
                    prop_assert_eq!(m & u_mask, u_mask);
                }
            }
        }
    }

    #[test]
    fn least_model_stabilizes_within_the_step_bound(t in horn_strategy(8, 10, 4), s_mask in 0u64..256) {
        let s: Vec<Var> = (0..8).map(Var).filter(|v| bit(s_mask, *v)).collect();
        let d = HornDecomposition::new(&t).unwrap();
        let (truth, rounds) = least_model_rounds(&d, &s);
        prop_assert!(rounds <= t.len().min(t.num_vars() as usize));
        if let LeastModel::Model(u) = least_model(&t, &s).unwrap() {
            prop_assert_eq!(truth, u);
        }
    }
}

#[test]
fn least_model_examples() {
    let p = abdsat::instance::parse_instance_text("var a b c\nclause -a b\nclause -b c\n").unwrap();
    let [a, b, c] = [0, 1, 2].map(Var);
    assert_eq!(least_model(p.theory(), &[a]).unwrap(), LeastModel::Model(BTreeSet::from([a, b, c])));
    let q = abdsat::instance::parse_instance_text("var a\nclause -a\n").unwrap();
    assert_eq!(least_model(q.theory(), &[a]).unwrap(), LeastModel::Inconsistent);

    let ex = abdsat::instance::skiing_example();
    let v = |n: &str| ex.var(n).unwrap();
    let reduced = ex.theory().reduct(&abdsat::PartialAssignment::from_pairs([(v("snows"), true)]));
    assert_eq!(
        least_model(&reduced, &[v("hurt")]).unwrap(),
        LeastModel::Model(BTreeSet::from([v("hurt"), v("sad")]))
    );
}

#[test]
fn skiing_checker_and_bruteforce_solver() {
    let ex = abdsat::instance::skiing_example();
    let b = Backdoor::verified(ex.theory(), [ex.var("snows").unwrap()], BaseClass::Horn).unwrap();
    let check = |names: &str| check_solution_horn(&ex, &b, &ex.solution_from_names(names).unwrap()).unwrap();
    assert!(check("hurt"));
    assert!(!check("warm"));
    assert!(check("precipitation,warm"));
    let first = solve_bruteforce_horn(&ex, &b).unwrap().unwrap();
    assert_eq!(ex.solution_names(&first), ["precipitation", "warm"]);
}

#[test]
fn checker_agrees_with_the_oracle_on_the_corpus() {
    for (p, b) in corpus(BaseClass::Horn, 0..150) {
        for s in all_candidates(&p) {
            assert_eq!(
                check_solution_horn(&p, &b, &s).unwrap(),
                oracle_is_solution(&p, &s).unwrap(),
                "instance:\n{}\ncandidate {:?}",
                p.to_text(),
                p.solution_names(&s)
            );
        }
    }
}

#[test]
fn encoding_agrees_with_the_oracle_on_the_corpus() {
    for (p, b) in corpus(BaseClass::Horn, 0..150) {
        let expected = !oracle_solve(&p).unwrap().is_empty();
        for opts in [SolvOptions::default(), SolvOptions::decoupled(), SolvOptions { tight_steps: true, ..SolvOptions::default() }] {
            let enc = abdsat::horn::encode_horn_solv_with(&p, &b, &opts).unwrap();
            let result = builtin_solve(&enc.cnf);
            assert_eq!(result.is_sat(), expected, "options {opts:?}, instance:\n{}", p.to_text());
            if let Some(model) = result.model() {
                let s = enc.decode(model).unwrap();
                assert!(oracle_is_solution(&p, &s).unwrap(), "decoded non-solution for\n{}", p.to_text());
            }
        }
    }
}

#[test]
fn encodings_under_different_backdoors_agree() {
    for (p, planted) in corpus(BaseClass::Horn, 0..150) {
        let smallest = Backdoor::smallest(p.theory(), BaseClass::Horn, 7).unwrap();
        let everything: Vec<Var> = p.theory().vars().into_iter().filter(|v| !p.is_man(*v)).take(5).collect();
        let mut wide = planted.vars().to_vec();
        wide.extend(everything);
        let wide = Backdoor::verified(p.theory(), wide, BaseClass::Horn).unwrap();
        let sat = |b: &Backdoor| builtin_solve(&encode_horn_solv(&p, b).unwrap().cnf).is_sat();
        assert_eq!(sat(&planted), sat(&smallest), "instance:\n{}", p.to_text());
        assert_eq!(sat(&planted), sat(&wide), "instance:\n{}", p.to_text());
    }
}

#[test]
fn degenerate_instances() {
    let inconsistent = abdsat::instance::parse_instance_text("var h m\nhyp h\nman m\nclause\n").unwrap();
    let b = Backdoor::verified(inconsistent.theory(), [], BaseClass::Horn).unwrap();
    assert!(!builtin_solve(&encode_horn_solv(&inconsistent, &b).unwrap().cnf).is_sat());

    let no_mans = abdsat::instance::parse_instance_text("var h a\nhyp h\nclause -h a\n").unwrap();
    let b = Backdoor::verified(no_mans.theory(), [], BaseClass::Horn).unwrap();
    assert_eq!(solve_bruteforce_horn(&no_mans, &b).unwrap(), Some(abdsat::Solution::default()));
    assert!(builtin_solve(&encode_horn_solv(&no_mans, &b).unwrap().cnf).is_sat());

    let no_hyps = abdsat::instance::parse_instance_text("var a m\nman m\nclause a\nclause -a m\n").unwrap();
    let b = Backdoor::verified(no_hyps.theory(), [], BaseClass::Horn).unwrap();
    let enc = encode_horn_solv(&no_hyps, &b).unwrap();
    let model = builtin_solve(&enc.cnf);
    assert_eq!(enc.decode(model.model().unwrap()).unwrap(), abdsat::Solution::default());
}
