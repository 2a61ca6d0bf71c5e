//! Frobenius functor, pushforwards along Frobenius, and the ring
//! invariants they interact with.

pub mod functor;
pub mod invariants;
pub mod pushforward;

pub use functor::{frobenius_functor, frobenius_functor_raw, frobenius_q};
pub use invariants::{
    drs_upper_bound, embedding_dimension, is_regular_kunz, multiplicity, ring_invariants, samuel_length,
    DrsCertificate, RingInvariants,
};
pub use pushforward::{frobenius_pushforward, split_q, GeneratorLabel, Pushforward, MAX_PUSHFORWARD_GENERATORS};
