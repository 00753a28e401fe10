//! Propositional abduction through strong Horn and Krom backdoors.
//!
//! An abduction instance `⟨V,H,M,T⟩` asks for a set `S ⊆ H` of hypotheses
//! such that the theory `T` together with `S` is consistent and entails
//! every manifestation in `M`. Given a strong backdoor set `B` of `T` into
//! the Horn or Krom class, the instance is reduced to a single SAT query
//! whose size is `O(2^|B| · n²)`.

pub mod backdoor;
pub mod cardinality;
pub mod cnf;
pub mod encoding;
pub mod enumerate;
pub mod error;
pub mod exec;
pub mod horn;
pub mod instance;
pub mod krom;
pub mod solv;
pub mod solver;
pub mod subset_min;

pub use backdoor::{BaseClass, Backdoor};
pub use cnf::{Clause, Cnf, Formula, Lit, PartialAssignment, Var, VarTable};
pub use encoding::{Encoding, EncodingStats, Projection, ProjectionKind, Role, RoleMap};
pub use error::{Error, Result};
pub use exec::Exec;
pub use instance::{Instance, Solution};
pub use solver::{Solver, SolverResult};
pub use enumerate::{enumerate, enumerate_minimal, enumerate_solutions, relevance, relevance_witness, RelevanceMode};
pub use horn::{check_solution_horn, encode_horn_solv, least_model, solve_bruteforce_horn};
pub use krom::{check_solution_krom, encode_krom_solv, krom_entails, trimres};
pub use solv::{encode_solv, SolvOptions};
pub use subset_min::{encode_horn_subsetmin, encode_krom_subsetmin, encode_subsetmin, MinOptions};
