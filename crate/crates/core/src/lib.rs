//! Exact computer algebra for the discrete dynamics of left polynomials over
//! quaternion and octonion algebras.
//!
//! The ground field is `Q` or a quadratic extension `Q(sqrt d)`
//! ([`scalars`]). On top of it sit generalized quaternion algebras
//! ([`quat`]), their Cayley-Dickson doubles ([`oct`]), the polynomial rings
//! over both ([`poly`]), a companion-polynomial root finder for quaternion
//! polynomials ([`solver`]), and fixed/periodic point analysis
//! ([`dynamics`]). [`parse`] reads the textual expression grammar used by the
//! command line tool ([`cli`]).

pub mod algebra;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod oct;
pub mod parse;
pub mod poly;
pub mod quat;
pub mod scalars;
pub mod solver;

pub use algebra::Element;
pub use error::{Error, Result};
pub use oct::{OctSpec, Octonion};
pub use poly::{Poly, DEFAULT_DEGREE_CAP};
pub use quat::{QuatSpec, Quaternion};
pub use scalars::{FieldSpec, Scalar};
