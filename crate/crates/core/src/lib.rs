//! Exact operator algebra for the generalized Bell umbra.
//!
//! The crate evaluates polynomials at the Bell umbra (expand in falling
//! factorials, send `(y)_k` to `x^k`), generates the polynomial families built
//! on top of that evaluation (Bell, r-Bell, Lah, partial r-Bell, sigma
//! polynomials of graphs, iterated exponential families) and certifies
//! real-rootedness with exact Sturm sequences.
//!
//! Everything is computed over arbitrary-precision rationals; no floating
//! point is involved except in the truncated Dobinski oracle.

pub mod bellpart;
pub mod cli;
pub mod combinat;
pub mod exactmath;
pub mod graphs;
pub mod rzcert;
pub mod umbra;

pub use exactmath::{FactPoly, Poly, Rational, TruncSeries};
pub use rzcert::{certify_rz, RzCertificate};
