//! Finite involutive non-degenerate solutions: tables, axiom checks,
//! permutation groups, retraction, the constructed families, products,
//! isomorphism testing and prime-power splitting.

pub mod construct;
pub mod group;
pub mod iso;
pub mod retract;
pub mod split;
pub mod table;

pub use construct::{make_k, rump_example, Family, KParams};
pub use group::{is_indecomposable, permutation_group, PermGroup, Permutation};
pub use iso::{isomorphic_bruteforce, isomorphic_k, IsoSearch, IsomorphismWitness, KIsoVerdict};
pub use retract::{multipermutation_level, retract, retract_times, retraction_sizes};
pub use split::{split_solution, Split, SplitWitness};
pub use table::{product_solution, tau_from_sigma, SolutionTable, VerifyReport};
