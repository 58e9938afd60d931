//! Indecomposable cocyclic solutions of the set-theoretic Yang–Baxter
//! equation: modular arithmetic, finite braces, solution tables with
//! isomorphism testing, and classification by the invariants `(n, t, a)`.

pub mod arith;
pub mod brace;
pub mod classify;
pub mod error;
pub mod solution;

pub use arith::{factorize, FactoredInt, Residue};
pub use brace::{
    bt_splitting_iso, make_bt, make_exceptional4, product_brace, BraceTable, SplittingIso,
};
pub use classify::{
    canonical_invariants, count_cocyclic, enumerate_all, level_histogram, oracle_exhaustive_cyclic,
    refute_rump, rump_prediction, table1, CocyclicInvariants, EnumerationReport, OracleConfig,
};
pub use error::{Error, Result};
pub use solution::{
    isomorphic_bruteforce, isomorphic_k, make_k, split_solution, Family, IsoSearch, KParams,
    Permutation, SolutionTable, VerifyReport,
};
