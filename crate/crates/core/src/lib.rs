//! Computational engine for affine Lie algebra representation data.
//!
//! The crate is organised bottom-up:
//!
//! * [`rootsys`] builds finite irreducible root systems in the normalisation
//!   where long roots have squared length 2, together with Weyl-group helpers
//!   and sub-root-system classification.
//! * [`repdata`] enumerates integrable highest weights at a level, conformal
//!   weights, Weyl dimensions, weight systems (Freudenthal) and low-depth
//!   graded dimensions of affine modules.
//! * [`modular`] builds Kac–Peterson S-matrices, Verlinde fusion rules,
//!   quantum dimensions and simple currents.
//! * [`scext`] classifies modules of cyclic simple current extensions.
//! * [`innerauto`] handles inner automorphisms `σ_u`: fixed-point subalgebras
//!   and twisted conformal weights.
//! * [`orbifold`] runs the order-two orbifold dimension bookkeeping, the
//!   second-moment multiplicity system, quadratic-field partition checks and
//!   mirror-map consistency checks.

pub mod error;
pub mod innerauto;
pub mod modular;
pub mod orbifold;
pub mod rational;
pub mod repdata;
pub mod rootsys;
pub mod scext;

pub use error::{Error, Result};
pub use rational::Q;
