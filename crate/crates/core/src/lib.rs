//! Decomposability of integer matrices.
//!
//! An integer matrix `A` is decomposable when some unimodular `P` and column
//! permutation `Q` make `P⁻¹·A·Q` a direct sum of two or more blocks. For a
//! full-row-rank `A` without zero columns this happens exactly when the gram
//! matrix of its Hermite normal form is reducible, i.e. when the weighted
//! graph it describes is disconnected.
//!
//! ```
//! use hnfdecomp::{hnf_decomposition, imat, verify_decomposition};
//!
//! let a = imat![[2, -4, 2, 5, -6], [2, -2, 2, 5, -3], [0, -2, 1, 2, -3]];
//! let d = hnf_decomposition(&a).unwrap();
//! assert!(d.decomposable);
//! assert_eq!(d.blocks, vec![imat![[2, 0, 1], [0, 1, 2]], imat![[2, 3]]]);
//! assert!(verify_decomposition(&a, &d).ok);
//! ```

pub mod decompose;
pub mod graph;
pub mod hermite;
pub mod io;
pub mod matrix;
pub mod sampling;
pub mod selftest;

pub use decompose::{
    decomposability_equivalence_check, decomposable_brute_force, hnf_decomposition, is_decomposable,
    prepare_input, run_hnf_decomposition, validate_input, verify_decomposition, DecomposeError,
    Decomposition, DecompositionRun, SplitWitness, Verification,
};
pub use graph::{
    is_reducible, rank, reducibility_witness_brute_force, rref, rref_int, ComponentPartition,
    ConnectivityCheck, Echelon, GraphError, WeightedGraph,
};
pub use hermite::{hermite_normal_form, is_hnf, HnfResult};
pub use matrix::{IntMatrix, MatrixError, Permutation, RatMatrix};
