//! Time-integrated boundary fluxes for hyperbolic conservation laws.
//!
//! For a conservation law u_t + div f(u) = 0 the quantity this crate treats as
//! first class is not the pointwise state u(x,t) but the flux
//!
//!   h(t1,t2) = integral over \[t1,t2\] of integral over the boundary of f(u)·ν dS dt,
//!
//! evaluated across a domain boundary over a time interval. The crate provides
//!
//! * [`systems`] — built-in conservation laws (Burgers, linear advection,
//!   shallow water) with exact Riemann solvers and Godunov fluxes,
//! * [`exact`] — discontinuous planar-wave weak solutions with exact masses
//!   and time-integrated face fluxes, used as analytic oracles,
//! * [`geometry`] — boxes, disks, faces, and one-parameter boundary
//!   foliations with surface quadrature,
//! * [`trace`] — flux traces across foliation leaves, face-flux profiles,
//!   Lipschitz-constant estimates, and time moduli of continuity,
//! * [`solver`] — a first-order Godunov finite-volume solver whose per-face
//!   flux ledger satisfies the discrete balance identity to roundoff,
//! * [`verify`] — executable checks of the balance equation, trace
//!   regularity, time continuity, and the weak form, with machine-readable
//!   reports,
//! * [`cli`] / [`config`] — a JSON-config driven command line frontend.
//!
//! All numerical kernels are pure functions of immutable inputs, so they can
//! be evaluated concurrently; every reduction is a pairwise sum in a fixed
//! order, so results are reproducible bit for bit.
//!
//! The headline identity, executable:
//!
//! ```
//! use fluxlaw::exact::PlanarWeakSolution;
//! use fluxlaw::geometry::{BoxDomain, Coord, Domain};
//! use fluxlaw::systems::{StateVector, SystemModel};
//! use fluxlaw::trace::flux_trace;
//!
//! // A right-moving shock: u = 1 behind, 0 ahead, speed 1/2.
//! let shock = PlanarWeakSolution::new(
//!     SystemModel::burgers(1)?,
//!     Coord::d1(1.0),
//!     0.0,
//!     StateVector::scalar(1.0),
//!     StateVector::scalar(0.0),
//! )?;
//! let domain = BoxDomain::new(Coord::d1(0.0), Coord::d1(1.0))?;
//!
//! // The mass gained by [0, 1] over t in [0, 1] cancels the outward flux.
//! let gained = shock.mass(&Domain::Box(domain.clone()), 1.0)?[0]
//!     - shock.mass(&Domain::Box(domain.clone()), 0.0)?[0];
//! let outward = flux_trace(&shock, &domain.faces(), 0.0, 0.0, 1.0, 1e-10)?.value[0];
//! assert!((gained + outward).abs() < 1e-10);
//! # Ok::<(), fluxlaw::FluxError>(())
//! ```

// NaN-rejecting guards of the form `!(x > 0.0)` are used on purpose: the
// negation fails closed on NaN where `x <= 0.0` would not.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod error;
pub mod exact;
pub mod geometry;
pub mod output;
pub mod quadrature;
pub mod rng;
pub mod solver;
pub mod systems;
pub mod trace;
pub mod verify;

pub use error::{FluxError, Result};
