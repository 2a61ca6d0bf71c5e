//! Gröbner bases for ideals and submodules of free modules over `F_p[x]`.

pub mod buchberger;
pub mod cache;
pub mod hilbert;
pub mod ideal;
pub mod vector;

pub use buchberger::{groebner, GbOptions, GbResult, Reducer};
pub use cache::GbCache;
pub use hilbert::HilbertSeries;
pub use ideal::Ideal;
pub use vector::{ModuleOrder, Term, Vector};
