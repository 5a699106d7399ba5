use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter {0} must be positive")]
    NonpositiveParameter(String),
    #[error("determinant must be positive")]
    NonpositiveDeterminant,
    #[error("unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("map is a scalar multiple of the identity")]
    IdentityMap,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("circle is not contained in the upper half-plane")]
    NotInsideHalfPlane,
    #[error("map is not hyperbolic")]
    NotHyperbolic,
    #[error("a polygon needs at least three edges")]
    TooFewEdges,
    #[error("angle {0} is outside [0, pi)")]
    BadAngle(String),
    #[error("fixed point needs an irrational square root")]
    IrrationalRoot,
    #[error("invalid fat graph: {0}")]
    InvalidGraph(String),
    #[error("invalid path word: {0}")]
    InvalidWord(String),
    #[error("loop product is not plus or minus the identity")]
    ProductNotIdentity,
    #[error("edge {0:?} is not symbolic in the expression")]
    EdgeNotSymbolic(String),
    #[error("expansion diverges faster than 1/eps (lowest exponent {0})")]
    DivergesFaster(i64),
    #[error("declared rescaling eps^{declared} but leading exponent is {actual}")]
    RescalingMismatch { declared: i64, actual: i64 },
    #[error("arc {0:?} does not start and end on open edges")]
    ArcNotCusped(String),
    #[error("exponent table is singular")]
    SingularExponentTable,
    #[error("value for {0:?} is not a monomial in the exponent table")]
    NotMonomial(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("flags are not transverse")]
    NotTransverse,
    #[error("lines do not form a projective basis")]
    NotProjectiveBasis,
    #[error("flags are not in general position")]
    NotGeneric,
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("lines are not coplanar")]
    NotCoplanar,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("bad snake segment: {0}")]
    BadSegment(String),
    #[error("assignment is missing {0}")]
    IncompleteAssignment(String),
    #[error("unknown triangle {0:?}")]
    UnknownTriangle(String),
    #[error("side {0} is not glued")]
    NotGlued(String),
    #[error("invalid surface: {0}")]
    InvalidSurface(String),
    #[error("matrix is singular")]
    Singular,
}

pub type Result<T> = std::result::Result<T, Error>;
