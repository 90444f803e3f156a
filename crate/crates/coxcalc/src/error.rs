use thiserror::Error;

/// Errors raised by the library. Variants fall into three families that the
/// command line tool maps onto exit codes: malformed input, failed
/// mathematical preconditions, and enumeration size limits.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("group is not in invariant-factor form: {0}")]
    NonCanonicalGroup(String),
    #[error("homomorphism is not well defined on torsion: {0}")]
    IllDefinedHom(String),
    #[error("element does not lie in the expected group")]
    NotInGroup,
    #[error("subgroup has infinite index")]
    InfiniteIndex,
    #[error("vector is not primitive")]
    NonPrimitive,
    #[error("invalid cone: {0}")]
    InvalidCone(String),
    #[error("cones {0} and {1} do not intersect in a common face")]
    FaceConditionViolated(usize, usize),
    #[error("face of cone {0} is missing from the collection")]
    FaceClosureViolated(usize),
    #[error("empty collection")]
    EmptyCollection,
    #[error("relation {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("invalid A,P data: {0}")]
    InvalidData(String),
    #[error("ring shape not supported: {0}")]
    UnsupportedRing(String),
    #[error("grading is not almost free: {0}")]
    AlmostFreeViolated(String),
    #[error("degree vector not in the weight cone")]
    OutsideWeightCone,
    #[error("cone is not an orbit cone: {0}")]
    NotOrbitCone(String),
    #[error("bunch members {0} and {1} have disjoint relative interiors")]
    BunchOverlapViolated(usize, usize),
    #[error("collection is not closed upwards: {0}")]
    NotUpwardClosed(String),
    #[error("bunch is not true: {0}")]
    TruenessViolated(String),
    #[error("chamber is not full dimensional")]
    NotFullDimensional,
    #[error("intersection theory needs a torsion free class group")]
    TorsionUnsupported,
    #[error("expected {expected} classes, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("unsupported intersection input: {0}")]
    UnsupportedIntersection(String),
    #[error("modification is not admissible: {0}")]
    NotAdmissible(String),
    #[error("center is not a cone of the ambient fan")]
    CenterNotInFan,
    #[error("vector does not lie in the support of the fan")]
    NotInSupport,
    #[error("input is not a surface: {0}")]
    NonSurface(String),
    #[error("malformed Orlik-Wagreich graph: {0}")]
    MalformedGraph(String),
    #[error("size guard exceeded: {what} is {size}, limit {limit}")]
    SizeGuardExceeded { what: String, size: usize, limit: usize },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Malformed(_) | Error::DimensionMismatch { .. } => 1,
            Error::SizeGuardExceeded { .. } => 3,
            _ => 2,
        }
    }
}
