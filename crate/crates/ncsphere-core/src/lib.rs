//! Exact computer algebra for the quadratic algebras of noncommutative
//! 3-spheres.
//!
//! The crate builds the unitarity relations of a 4-parameter family of
//! quadratic *-algebras, rescales them to Sklyanin form, completes them into
//! bounded-degree rewrite systems, and extracts the geometric data attached
//! to the family: characteristic variety, correspondence, real structure and
//! Chern character conditions.
//!
//! All arithmetic is exact. Scalars are Gaussian rationals, parameters are
//! Laurent polynomials in the four moduli over the Gaussian rationals, and
//! every check is an identity in those rings; no floating point is used
//! anywhere.

pub mod scalar;
pub mod laurent;
pub mod radical;
pub mod commpoly;
pub mod groebner;
pub mod freealg;
pub mod matfree;
pub mod sphere;
pub mod rewrite;
pub mod geom;
pub mod chern;
