//! Uniserial representations of path algebras `KQ/I` in exact arithmetic.
//!
//! For a path `p` of length `l` the uniserial modules with mast `p` are
//! parametrized by an affine variety `V_p`. This crate computes its defining
//! polynomials by rewriting relations to normal form, classifies it, realizes
//! its points as matrix representations, and derives fiber dimensions,
//! uniserial dimensions and finite-type verdicts from them.
//!
//! Paths compose right to left: `a2*a1` is `a1` followed by `a2`.

pub mod analysis;
pub mod cli;
pub mod detour;
pub mod error;
pub mod field;
pub mod linalg;
pub mod par;
pub mod poly;
pub mod presentation;
pub mod quiver;
pub mod rep;
pub mod report;
pub mod variety;

pub use error::Error;
pub use field::{Rational, Rationals};
pub use presentation::{parse_path, parse_presentation, parse_sequence, AlgebraPresentation};
pub use quiver::{Path, Quiver};
