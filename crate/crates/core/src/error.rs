use thiserror::Error;

/// Errors raised by the geometry routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid point: every homogeneous coordinate is zero")]
    InvalidPoint,
    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("projection undefined: the point lies in the centre of projection")]
    ProjectionUndefined,
    #[error("degenerate triangle: the vertices are collinear")]
    DegenerateTriangle,
    #[error("point {point} does not lie on side {side}")]
    PointNotOnSide { point: char, side: &'static str },
    #[error("indeterminate ratio: both monomials vanish")]
    IndeterminateRatio,
    #[error("tuple does not satisfy the surface equations")]
    NotOnS,
    #[error("triple does not satisfy d0*e0*f0 = d1*e1*f1")]
    NotOnH,
    #[error("triple {0} has no preimage on the surface")]
    NotInImage(&'static str),
    #[error("wrong arity: this criterion needs k = 1, got k = {0}")]
    WrongArity(usize),
    #[error("off torus: coordinate {position} of the point in face {subset:?} is zero")]
    OffTorus { subset: Vec<usize>, position: usize },
    #[error("partial matrix admits no rank-one completion")]
    NotRankOneCompletable,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// The variant name, for machine-readable diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Self::InvalidPoint => "InvalidPoint",
            Self::InvalidIndexSet(_) => "InvalidIndexSet",
            Self::DimensionMismatch { .. } => "DimensionMismatch",
            Self::InvalidArgument(_) => "InvalidArgument",
            Self::ProjectionUndefined => "ProjectionUndefined",
            Self::DegenerateTriangle => "DegenerateTriangle",
            Self::PointNotOnSide { .. } => "PointNotOnSide",
            Self::IndeterminateRatio => "IndeterminateRatio",
            Self::NotOnS => "NotOnS",
            Self::NotOnH => "NotOnH",
            Self::NotInImage(_) => "NotInImage",
            Self::WrongArity(_) => "WrongArity",
            Self::OffTorus { .. } => "OffTorus",
            Self::NotRankOneCompletable => "NotRankOneCompletable",
            Self::Parse(_) => "Parse",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
