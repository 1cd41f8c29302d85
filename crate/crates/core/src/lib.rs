//! Exact computation of classical and virtual knot invariants.
//!
//! Diagrams come in as PD codes, signed Gauss codes or braid words
//! ([`diagram::Diagram`]). From there the crate computes the Kauffman bracket
//! and Jones polynomial four independent ways (state sum, Temperley-Lieb
//! closure, tensor contraction, oriented skein recursion), the Alexander,
//! Conway and Homflypt polynomials, the Arrow polynomial of virtual diagrams,
//! integral Khovanov homology and Vassiliev diagnostics. A seeded Reidemeister
//! move engine checks all of them for invariance.
//!
//! All arithmetic is exact: [`poly::LaurentPoly`] has arbitrary precision
//! coefficients and quarter-integer exponents.

#![allow(clippy::needless_range_loop)]

pub mod alexander;
pub mod arrow;
pub mod bracket;
pub mod cli;
pub mod corpus;
pub mod diagram;
mod error;
pub mod fuzz;
pub mod khovanov;
pub mod matrix;
pub mod poly;
pub mod search;
pub mod skein;
pub mod tensor;
pub mod tl;
pub mod vassiliev;

pub use diagram::Diagram;
pub use error::{Error, Result};
pub use poly::LaurentPoly;
