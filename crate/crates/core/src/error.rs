use crate::algebra::AlgebraError;
use crate::projgeom::GeomError;

/// Errors from surface-level computations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("surface polynomial must have 4 variables, found {0}")]
    WrongVariableCount(usize),
    #[error("surface polynomial is zero")]
    ZeroPolynomial,
    #[error("surface polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("surface degree {0} is below 3")]
    DegreeTooSmall(u32),
    #[error("characteristic {p} does not exceed the degree {d}; need p = 0 or p > d")]
    UnsupportedCharacteristic { p: u64, d: u32 },
    #[error("point is not on the surface")]
    NotOnSurface,
    #[error("surface is singular at the point")]
    SingularPoint,
    #[error("point does not lie on the line")]
    PointNotOnLine,
    #[error("line does not lie on the surface")]
    LineNotOnSurface,
    #[error("every line of the tangent plane is principal at this point")]
    WholePlanePoint,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no generic coordinates found after {0} attempts")]
    GenericityFailed(usize),
    #[error("series truncation cap {0} reached without a finite order")]
    TruncationCap(usize),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("field extension of degree {degree} required: {what}")]
    FieldExtensionRequired { degree: u32, what: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}
