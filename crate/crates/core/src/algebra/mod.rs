//! Exact arithmetic on the first homology of a closed surface.
//!
//! Coordinates are always taken in the standard basis `(a1, b1, a2, b2, ..., ag, bg)` with
//! `<a_i, b_i> = 1` and all other basis pairings zero, so the Gram matrix is block diagonal
//! with blocks `[[0, 1], [-1, 0]]`.

mod curve;
mod lattice;
pub(crate) mod matrix;
mod qform;
pub mod rational;
pub mod smith;

pub use curve::{derive_label, Curve};
pub use lattice::{intersection, standard_label, HomologyClass, Surface};
pub use matrix::IntMatrix;
pub use qform::QuadraticForm;
pub use rational::signature_of_symmetric;
