//! Exact polynomial algebra for projective hypersurfaces with vanishing
//! hessian: polar and Perazzo maps, relations among partials, fiber and
//! dual-variety invariants, and constructors for the standard examples.
//!
//! Rational computations are exact. Randomized checks run over prime fields
//! and carry an explicit failure bound.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod classify;
pub mod error;
pub mod families;
pub mod field;
pub mod hessian;
pub mod linalg;
pub mod parse;
pub mod perazzo;
pub mod polar;
pub mod poly;
pub mod polymat;
pub mod rng;
pub mod univariate;

pub use error::{Error, Result};
pub use field::{CoeffField, PrimeField, Rationals};
pub use linalg::{LinearSubspace, ProjPoint};
pub use parse::{parse_poly, parse_poly_str, print_poly};
pub use poly::{Monomial, MultiPoly};
pub use polymat::PolyMatrix;
