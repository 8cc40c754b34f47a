use crate::error::Result;
use crate::projective::{
    coordinate_subspace, intersect, opposite_face, span, IndexSet, LinearSubspace, ProjectivePoint,
};
use crate::Scalar;

use super::instance::FaceInstance;

/// Result of intersecting all cevian spans directly.
#[derive(Clone, Debug, PartialEq)]
pub enum OracleOutcome<T: Scalar> {
    Empty,
    Point(ProjectivePoint<T>),
    /// The spans share a subspace of positive dimension.
    Subspace(LinearSubspace<T>),
}

impl<T: Scalar> OracleOutcome<T> {
    pub fn is_point(&self) -> bool {
        matches!(self, Self::Point(_))
    }

    pub fn point(&self) -> Option<ProjectivePoint<T>> {
        match self {
            Self::Point(p) => Some(p.clone()),
            _ => None,
        }
    }
}

/// Span of `P_I` (placed in ℙⁿ) and the face opposite ⟨I⟩; an (n−k)-plane.
pub fn cevian_span<T: Scalar>(
    face: &IndexSet,
    p: &ProjectivePoint<T>,
    n: usize,
) -> Result<LinearSubspace<T>> {
    let opposite = coordinate_subspace(&opposite_face(face, n)?, n)?;
    span(&[p.embed(face, n)?.into(), opposite])
}

/// Intersects the cevian spans of every face by exact linear algebra.
///
/// Works for any instance, on the torus or not.
pub fn geometric_oracle<T: Scalar>(inst: &FaceInstance<T>) -> Result<OracleOutcome<T>> {
    let spans = inst
        .points()
        .map(|(face, p)| cevian_span(face, p, inst.n()))
        .collect::<Result<Vec<_>>>()?;
    Ok(match intersect(&spans)? {
        None => OracleOutcome::Empty,
        Some(s) => match s.as_point() {
            Some(p) => OracleOutcome::Point(p),
            None => OracleOutcome::Subspace(s),
        },
    })
}
