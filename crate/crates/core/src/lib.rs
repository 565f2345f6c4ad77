//! Exact lattice theory for non-symplectic involutions of K3^[n]-type lattices.

pub mod arith;
pub mod discriminant;
pub mod error;
pub mod lattice;
pub mod latspec;
pub mod matrix;
pub mod snf;
pub mod sublattice;
pub mod isometry;
pub mod spinor;
pub mod shortvec;
pub mod polyhedral;
pub mod search;
pub mod walls;
pub mod vinberg;
pub mod membership;
pub mod chambers;
pub mod json;
pub mod presets;
pub mod io;

pub use error::{Error, Result};
pub use lattice::{LatVector, Lattice, QVector};
pub use matrix::{IMatrix, QMatrix};
