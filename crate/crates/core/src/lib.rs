//! Exact incidence geometry for cevians of simplices in projective space.
//!
//! The crate decides whether the cevian spans through chosen points on the
//! faces of a simplex meet in a common point, using closed-form algebraic
//! criteria, and cross-checks every verdict against a direct subspace
//! intersection. The main pieces are:
//!
//! - [`projective`]: points, coordinate faces, spans, intersections, projections;
//! - [`classic`]: the planar triangle with determinant and ratio-product tests;
//! - [`del_pezzo`]: the incidence surface of concurrent cevian triples and its
//!   isomorphism with the hypersurface `d0*e0*f0 = d1*e1*f1`;
//! - [`simplex`]: the partial matrix of face points, triple-ratio and 2×2 minor
//!   criteria, rank-one completion and the geometric oracle;
//! - [`rank_search`]: numerical low-rank completion and transversal certificates;
//! - [`format`]: the JSON instance schema.
//!
//! All exact routines are generic over [`Scalar`]; the aliases below fix the
//! field to arbitrary-precision rationals.

pub mod classic;
pub mod del_pezzo;
mod error;
pub mod format;
pub mod linalg;
pub mod projective;
pub mod rank_search;
mod scalar;
pub mod simplex;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use projective::{
    coordinate_subspace, intersect, opposite_face, project, span, IndexSet, LinearSubspace,
    ProjectivePoint,
};

/// Exact arbitrary-precision rational, the default field.
pub type Rational = num_rational::BigRational;

pub type Point = ProjectivePoint<Rational>;
pub type Subspace = LinearSubspace<Rational>;
pub type Triangle = classic::Triangle2D<Rational>;
pub type Cevians = classic::CevianTriple<Rational>;
pub type Instance = simplex::FaceInstance<Rational>;
pub type Matrix = simplex::PartialMatrix<Rational>;
pub type Report = simplex::ConcurrencyReport<Rational>;
