//! Trimmed transforms over the subset lattice.
//!
//! The centerpiece is the fast intersection transform: given a function `f`
//! on a family `F` of subsets of an `n`-element ground set and a target
//! family `G`, it computes for every `Y` in `G` and every `j = 0..=n` the sum
//! of `f(X)` over the members `X` meeting `Y` in exactly `j` points. The
//! construction emits an arithmetic circuit whose size is governed by the
//! down-closures of `F` and `G` rather than by `|F| * |G|`.
//!
//! On top of the transform, [`paths`] counts simple paths and cycles of a
//! prescribed length in edge-weighted digraphs, returning generating
//! polynomials in the edge weight.

pub mod circuit;
pub mod cli;
pub mod error;
pub mod itrans;
pub mod lattice;
pub mod oracle;
pub mod paths;
pub mod ring;
pub mod zeta;

pub use error::{Error, Result};
