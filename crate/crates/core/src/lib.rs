//! Automatic computation of the abelian complexity `AC(n)` and the balance
//! function `B(n)` of fixed points of c-balanced Parry substitutions.
//!
//! A substitution is compiled into a deterministic finite automaton with
//! output that reads the greedy representation of `n` in the numeration
//! system `U_j = |φʲ(0)|`. A brute-force [`oracle`] computes the same values
//! from prefixes of the fixed point for cross-checking.
//!
//! ```
//! use num_bigint::BigUint;
//! use parry_abelian::{build, BuildOptions, OutputKind, ParrySubstitution, USequence};
//!
//! let fib = ParrySubstitution::fibonacci();
//! let (dfao, _) = build(&fib, &BuildOptions::default()).unwrap();
//! let useq = USequence::new(&fib);
//! let n = BigUint::from(1_000_000u32);
//! assert_eq!(dfao.eval_n(&useq, &n, OutputKind::Ac).unwrap(), 2);
//! ```

pub mod builder;
pub mod cli;
pub mod dfao;
pub mod error;
pub mod limits;
pub mod numeration;
pub mod oracle;
pub mod pipeline;
pub mod substitution;

pub use dfao::{Dfao, DfaoMeta, OutputKind};
pub use error::{Constraint, Error, Result};
pub use limits::Limits;
pub use numeration::{greedy_urep, greedy_urep_u64, urep_value, NormalURep};
pub use oracle::{ac_bruteforce, balance_bruteforce, estimate_c, Oracle};
pub use pipeline::{build, BuildOptions, BuildReport};
pub use substitution::{ParrySubstitution, SubstitutionKind, USequence, Word};
