//! Finitely generated graded modules over `R = P/I`.

pub mod fitting;
pub mod homological;
pub mod linalg;
pub mod presentation;
pub mod random;
pub mod resolution;
pub mod ring;
pub mod torsion;

pub use fitting::{fitting_ideal, local_rank_at_min_primes, non_free_locus, LocalRank, LocalRanks};
pub use homological::{depth, dual, ext, ext_from_resolution, ext_vanishes, ext_with_cap, hom, is_mcm};
pub use linalg::Homology;
pub use presentation::{format_degree, Module, PresentationData};
pub use random::{random_module, RandomModuleParams};
pub use resolution::{syzygy_module, BettiTable, FreeResolution};
pub use ring::{PrimeProvenance, QuotientRing};
pub use torsion::{torsion_submodule, Torsion};
