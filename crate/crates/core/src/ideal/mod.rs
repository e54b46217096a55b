//! The tensor ideals `𝐈_k` (modules filtered by shifted `V_k`) and `𝐈`
//! (filtered by shifted `V_k` for varying `k`), with replayable
//! certificates.

mod certificate;
mod harness;
mod search;

pub use certificate::{FiltrationCertificate, FiltrationStep, ReplayError, StepFile};
pub use harness::{closure_harness, random_member, CertifiedMember, ClosureBounds, ClosureCounts, ClosureReport};
pub use search::{
    is_free_over_hnk, is_in_i, is_in_ik, is_quasi_isomorphism, string_polynomial, IdealSearch, Membership,
    NonMembership,
};
