//! Exact computational kernel for plane quartics: quadratic-tower arithmetic,
//! sparse polynomials and resultants, projective incidence geometry, contact
//! orders and sextactic points, conic-arrangement censuses and Hilbert
//! functions of point sets.

pub mod census;
pub mod contact;
pub mod elim;
pub mod error;
pub mod field;
pub mod geometry;
pub mod ideals;
pub mod linalg;
pub mod par;
pub mod poly;

pub use error::{Error, Result};
pub use field::{FieldElement, Rational, Tower, TowerBuilder, TowerRef};
