//! Exact symbolic toolkit for line foliations of complex affine space.
//!
//! Everything here is computed over the field Q(i) of Gaussian rationals,
//! standing in for the complex numbers: identities are decided exactly, never
//! numerically. The crate provides
//!
//! - arbitrary-precision rational and Gaussian-rational arithmetic ([`arith`]),
//! - sparse multivariate polynomials and normalized rational functions
//!   ([`poly`]), with a textual grammar shared by every interface ([`parser`]),
//! - polynomial vector fields, Lie brackets and the line-foliation criterion
//!   with its cofactor certificate ([`field`]),
//! - Hessian-degeneracy operators, Gauss-map rank estimation, annihilating
//!   polynomials and explicit solution constructors ([`pde`]),
//! - Plücker line geometry and a certified classifier for 3-dimensional line
//!   foliations ([`foliation`]),
//! - the eikonal operator, construction and structural decomposition of its
//!   rational solutions, and the associated Riccati families ([`eikonal`]).
//!
//! Randomized routines take an explicit seeded generator ([`rng::DetRng`]) so
//! every probabilistic answer is reproducible; exact certificates accompany
//! every affirmative classification.

pub mod arith;
pub mod eikonal;
pub mod field;
pub mod foliation;
mod linalg;
pub mod parser;
pub mod pde;
pub mod poly;
pub mod rng;

pub use arith::{GaussianRational, Rational};
pub use eikonal::{EikonalSolution, IsotropicFrame, LinearForm, RiccatiEquation};
pub use field::{LineFieldCertificate, PolyVectorField, RatVectorField};
pub use foliation::{ClassifyReport, FoliationClass, Line3, OpenBookData, Point3H};
pub use parser::{format_expr, parse_expr};
pub use poly::{Monomial, MultiPoly, RatFunc, UniRatFunc, VarSet};
pub use rng::DetRng;
