//! Numerical toolkit for nonuniformly hyperbolic dynamics on the torus.
//!
//! The crate is organized around five stages of a single pipeline:
//!
//! * [`mapmodel`] — smooth map models (evaluation, Jacobians, preimage
//!   branches), torus arithmetic via universal-cover lifts, and finite
//!   orbit windows standing in for inverse-limit points.
//! * [`cocycle`] — derivative cocycles, Lyapunov spectra, Oseledec
//!   splittings, Lyapunov inner products, coordinate changes to block
//!   form, uniformity (Pesin) blocks, and tempered chart radii.
//! * [`shadow`] — the abstract shadowing solver for sequences of
//!   affine-plus-Lipschitz maps with explicit constants, plus the
//!   reduction of map-level pseudo-orbits to the abstract problem.
//! * [`horseshoe`] — Bowen-ball counting, separated sets with common
//!   return times, alphabet selection, pseudo-orbit concatenation, and
//!   shadowing-based horseshoe realization with subshift coding.
//! * [`census`] — periodic-point detection and exact counting for
//!   linear models, (K,a)-hyperbolicity certificates, growth rates,
//!   and entropy estimates.

pub mod census;
pub mod cocycle;
pub mod horseshoe;
pub mod linalg;
pub mod mapmodel;
pub mod shadow;




pub use mapmodel::{MapModel, OrbitWindow, TorusPoint};


/// Crate-wide error type aggregating the per-module failures.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Map(#[from] mapmodel::MapError),
    #[error(transparent)]
    Cocycle(#[from] cocycle::CocycleError),
    #[error(transparent)]
    Shadow(#[from] shadow::ShadowError),
    #[error(transparent)]
    Horseshoe(#[from] horseshoe::HorseshoeError),
    #[error(transparent)]
    Census(#[from] census::CensusError),
}

pub type Result<T> = std::result::Result<T, Error>;
