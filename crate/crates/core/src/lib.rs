//! Numerical convex geometry for nonsymmetric L_p projection and moment
//! bodies.
//!
//! The crate samples support and radial functions on spherical quadrature
//! grids and builds on them: the L_p cosine transform and the operator
//! families `Π_p^τ` and `M_p^τ`, L_p mixed volumes and their duals, Steiner
//! symmetrization, and checks of the affine isoperimetric inequalities these
//! operators satisfy.
//!
//! The crate is `no_std` (with `alloc`) by default. The `std` feature adds
//! `std::error::Error` support through `thiserror`, `parallel` evaluates
//! per-node work on a rayon pool, and `serde` derives serialization for the
//! plain data types.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod body;
pub mod error;
pub mod fixtures;
pub mod functionals;
pub mod hull;
pub mod inequalities;
pub mod linalg;
pub mod operators;
mod par;
pub mod roots;
pub mod special;
pub mod sphere;
pub mod symmetrization;

pub use body::{ConvexBody, Polytope, SphericalMeasure, StarBody};
pub use error::{GeomError, Result};
pub use functionals::FunctionalValue;
pub use inequalities::{InequalityReport, TauSweep, Verdict};
pub use linalg::Matrix;
pub use operators::OperatorParams;
pub use sphere::{HarmonicIndex, SphereGrid};
