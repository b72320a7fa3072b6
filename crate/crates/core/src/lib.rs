//! Exact hinge statistics for plane point sets and their shadow in line
//! space.
//!
//! The crate computes, over arbitrary-precision rationals:
//!
//! * distance profiles and hinge statistics (distinct-hinge counts,
//!   hinge energy, realisation histograms) of finite plane sets;
//! * the classical correspondence sending an ordered point pair to a line
//!   in 3-space (Plücker coordinates on the Klein quadric), under which
//!   two lines share a point exactly when the underlying pairs span equal
//!   distances;
//! * intersection statistics of those line families: per-line meeting
//!   counts, multiplicity-graded point buckets, rich-line families, and
//!   evaluations of Guth–Katz-type incidence bounds;
//! * experiment plumbing: generators, sweeps over set families, power-law
//!   fits, and a multiplicative-quadruple counter for comparison curves.
//!
//! Everything exact is exact: distances, line coordinates, intersection
//! points, and all counters. Floating point appears only in the fitting
//! and bound-evaluation layers, which are diagnostics by design.

pub mod error;
pub mod fit;
pub mod generate;
pub mod geom;
pub mod hinge;
pub mod incidence;
pub mod io;
pub mod klein;
pub mod limits;
pub mod quad;
pub mod rational;
pub mod report;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
