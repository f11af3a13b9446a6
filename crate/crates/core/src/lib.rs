//! Hard-edge gap probabilities for random matrix ensembles with pole-perturbed
//! potentials.
//!
//! The library computes `ln det(I - K)` for the Bessel kernel restricted to
//! `(0, s)` three independent ways — Nystrom discretization of the Fredholm
//! determinant, the Tracy-Widom ODE representation, and the large-s asymptotic
//! law with its Barnes-G constant — and cross-checks them against each other.
//! Around that core sit the Painleve III hierarchy, the coupled Painleve III
//! system with its Lax pair and zero-curvature test, and numerically verified
//! Riemann-Hilbert parametrix identities (outer parametrix, Bessel parametrix,
//! local scalar functions), plus assembly of the generalized kernel from
//! externally supplied Psi data.

pub mod coupled_p3;
pub mod dd;
pub mod error;
pub mod kernels;
pub mod ode;
pub mod painleve;
pub mod quadrature;
pub mod rational;
pub mod rh;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Rational;
