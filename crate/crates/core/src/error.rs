use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no facets given")]
    EmptyInput,
    #[error("invalid vertex label {0:?}")]
    InvalidLabel(String),
    #[error("facet {0:?} repeats a vertex")]
    DuplicateVertexInFacet(Vec<String>),
    #[error("facets of dimensions {0} and {1} mixed in one complex")]
    MixedDimensions(usize, usize),
    #[error("facet {0:?} listed twice")]
    DuplicateFacet(Vec<String>),
    #[error("face {0:?} is not in the complex")]
    FaceNotPresent(Vec<String>),
    #[error("link of the facet {0:?} is empty")]
    EmptyLink(Vec<String>),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("some ridge lies in more than two facets")]
    NotPseudomanifoldWithBoundary,
    #[error("complex has no boundary")]
    EmptyBoundary,
    #[error("complex is not a closed weak pseudomanifold")]
    NotClosedPseudomanifold,
    #[error("vertex {vertex:?} has degree {degree}, expected {expected}")]
    DegreeTooHigh { vertex: String, degree: usize, expected: usize },
    #[error("complex has {0} vertices, too few to reduce")]
    TooFewVertices(usize),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("dimension {0} is odd")]
    OddDimension(usize),
    #[error("formula yields a non-integral count: {0}")]
    NonIntegralResult(String),
    #[error("not a closed connected 4-dimensional manifold candidate: {0}")]
    NotClosedConnected4Manifold(String),
    #[error("{0:?} is not a facet")]
    NotAFacet(Vec<String>),
    #[error("invalid vertex bijection: {0}")]
    InvalidBijection(String),
    #[error("bijection is not admissible: {0:?} and {1:?} are at distance < 3")]
    NotAdmissible(String, String),
    #[error("identification would create the duplicate facet {0:?}")]
    WouldCreateDuplicateFacet(Vec<String>),
    #[error("{0:?} does not induce a standard sphere")]
    NotInducedStandardSphere(Vec<String>),
    #[error("handle deletion failed validation: {0}")]
    CutValidationFailed(String),
    #[error("complex is not a connected member of Walkup's class")]
    NotWalkup,
    #[error("dimension {0} is too low")]
    DimensionTooLow(usize),
    #[error("exhaustive scan needs 2^{f0} subsets, above the ceiling of {ceiling} vertices")]
    SubsetSpaceTooLarge { f0: usize, ceiling: usize },
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("malformed ledger: {0}")]
    Ledger(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
