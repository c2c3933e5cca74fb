//! Combinatorial compactification data of spaces of toric one-parameter
//! degenerations: secondary polytopes of point configurations, Lafforgue
//! polytopes, monotone path polytopes, and — for configurations on a line —
//! the cyclic-insertion combinatorics of vanishing trees together with a
//! floating-point monodromy lab that verifies them on regenerated pencils.
//!
//! All polyhedral geometry is exact over an ordered field (see [`scalar`]);
//! floating point appears only in [`monodromy`].

pub mod scalar;
pub mod linalg;
pub mod lp;
pub mod dd;
pub mod polytope;
pub mod subdivision;
pub mod lafforgue;
pub mod mpath;
pub mod an;
pub mod monodromy;
pub mod io;

/// Default exact scalar: arbitrary-precision rational.
pub type Rat = num_rational::BigRational;

pub use polytope::{Facet, Fan, GeometryError, Polytope};
pub use scalar::Scalar;
