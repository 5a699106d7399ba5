//! Exact computations on Teichmüller and higher Teichmüller spaces of bordered surfaces.
//!
//! The crate evaluates holonomies of fat graphs with shear coordinates, the trace
//! coordinates of the four-holed sphere and their confluence limits, λ-lengths of
//! cusped arcs, and the Fock–Goncharov transport matrices of triangulated surfaces.
//! Everything runs over exact rationals by default; `f64` is available as a fallback
//! scalar where only floating results make sense.

pub mod confluence;
pub mod error;
pub mod fatgraph;
pub mod flags;
pub mod halfplane;
pub mod laurent;
pub mod matrix;
pub mod scalar;
pub mod scene;
pub mod schema;
pub mod snakes;
pub mod surface;
pub mod verify;

pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use matrix::{mat2, Mat2, Matrix};
pub use scalar::{q, Rational, Ring, Scalar};
