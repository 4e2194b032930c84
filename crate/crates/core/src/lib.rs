//! Exact tools for abelian difference sets and bent functions.
//!
//! The crate checks and counts `(v, k, λ)`-difference sets in finite abelian
//! groups `Z/n_1 × … × Z/n_t`, either by brute force, by character sums over
//! roots of unity evaluated exactly in cyclotomic fields, or by counting the
//! points of a zero-dimensional ideal through its Gröbner basis and Hilbert
//! function. On top of that sits the Boolean-function layer (truth tables,
//! ANF, Walsh spectra, bentness) and Carlet's `f_(π,L)` construction with its
//! flat-condition checker.
//!
//! All arithmetic is exact; nothing here touches floating point.

mod bits;
pub mod boolfn;
pub mod carlet;
pub mod charsum;
pub mod cyclotomic;
mod error;
pub mod group;
pub mod groebner;
pub mod hilbert;
pub mod poly;
pub mod repro;

pub use error::{Error, Result};
