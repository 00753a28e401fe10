mod common;

use abdsat::instance::Oracle;
use abdsat::{encode_solv, encode_subsetmin, BaseClass, Exec, MinOptions, SolvOptions};
use common::corpus;

#[test]
fn sequential_and_parallel_runs_produce_identical_output() {
    for class in [BaseClass::Horn, BaseClass::Krom] {
        for (p, b) in corpus(class, 0..60) {
            let run = |exec| {
                let solv = SolvOptions { exec, ..SolvOptions::default() };
                let min = MinOptions { solv: SolvOptions { exec, ..SolvOptions::decoupled() }, ..MinOptions::default() };
                let direct = encode_solv(&p, &b, &solv).unwrap();
                let minimal = encode_subsetmin(&p, &b, p.hyps()[0], &min).unwrap();
                let models = Oracle::with_limits(&p, 20, 12, exec).unwrap().models().to_vec();
                (direct.cnf, direct.roles, minimal.cnf, models)
            };
            assert_eq!(run(Exec::Sequential), run(Exec::Parallel));
        }
    }
}
