//! Numerical verification toolkit for the homogeneous geometry of
//! period-domain fibrations G/V -> G/K.
//!
//! The crate constructs matrix realizations of so(p,2q) and sp(m,n),
//! their Cartan decompositions and canonical bases, and then checks, at
//! machine precision, every algebraic identity, curvature bound, and
//! comparison-theorem inequality that the vanishing argument for
//! square-integrable harmonic 1-forms on these spaces rests on.

pub mod algebra;
pub mod coercivity;
pub mod config;
pub mod comparison;
pub mod geometry;
pub mod harmonic;
pub mod identities;
pub mod error;
pub mod linalg;
pub mod pipeline;
pub mod report;
pub mod tol;

pub use error::{Error, Result};
