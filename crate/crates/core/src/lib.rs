//! Random numerical semigroups in the Erdős–Rényi model.
//!
//! * [`semigroup`]: Frobenius number, genus, embedding dimension and Apéry
//!   tables of finitely generated numerical semigroups.
//! * [`sampler`]: seedable sampling from the bounded model `S(M, p)` and the
//!   unconstrained model `S(p)`.
//! * [`sumset`]: sumsets in `Z_q` and the random-coverage experiment.
//! * [`harness`]: parameter sweeps, closed-form bounds and the prime/Apéry
//!   event pipeline.

pub mod bitset;
pub mod error;
pub mod harness;
pub mod prime;
pub mod sampler;
pub mod semigroup;
pub mod stream;
pub mod sumset;

pub use error::{Error, Result};
pub use prime::is_prime;
pub use sampler::{sample_bounded, sample_unconstrained, ErConfig, SampleTrace};
pub use semigroup::{
    apery_set, frobenius, genus, invariants, membership_table, minimal_generators, normalize_generators, wilf_check,
    AperyTable, GeneratorSet, SemigroupInvariants, WilfReport,
};
pub use sumset::{
    add_sets, count_subsets_with_sum, coverage_failure_bound, coverage_trial, k_distinct_sumset, k_fold_sumset,
    CountMethod, CyclicSubset,
};
