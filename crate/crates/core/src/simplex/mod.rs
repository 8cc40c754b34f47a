//! Cevian spans on the faces of the standard n-simplex.
//!
//! A [`FaceInstance`] fixes one point `P_I ∈ ⟨I⟩` for every (k+1)-subset I of
//! `{0..n}`. The spans of each `P_I` with the face opposite ⟨I⟩ are concurrent
//! exactly when the [`PartialMatrix`] of the instance (row I holds the
//! coordinates of `P_I` in the columns of I and nothing elsewhere) can be
//! completed to rank one. For k = 1 this is decided by the triple-ratio
//! products in [`check_triples_k1`], for k ≥ 2 by the fully
//! specified 2×2 minors in [`specified_minors`].

mod criteria;
mod instance;
mod oracle;
mod random;

pub use criteria::{
    check_triples_k1, complete_rank1, decide_concurrent, decide_matrix, decide_with_oracle,
    oracle_agreement, specified_minors, ConcurrencyReport, Criterion, Minor, Triple, Witness,
};
pub use instance::{FaceInstance, PartialMatrix};
pub use oracle::{cevian_span, geometric_oracle, OracleOutcome};
pub(crate) use random::small_nonzero;
pub use random::{random_instance, random_point, InstanceKind};
