use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty input")]
    EmptyInput,
    #[error("hyperplane normal is the zero vector")]
    ZeroNormal,
    #[error("linear system has no unique solution")]
    NoUniqueSolution,
    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("polytope invariant violated: {0}")]
    InvalidPolytope(String),
    #[error("face {0:?} is not a face of the polytope")]
    FaceNotFound(Vec<usize>),

    #[error("facet selector {0} does not resolve to a unique facet")]
    SelectorUnresolved(String),
    #[error("invalid step: {0}")]
    InvalidStep(String),
    #[error("the stacked set is not nonsimple with respect to the base facet")]
    NotNonsimple,
    #[error("no admissible point found: {0}")]
    RegionEmptyOrUnsupported(String),
    #[error("unsupported step for this forecast: {0}")]
    UnsupportedSpec(String),
    #[error("{0:?} is not a subridge of the base facet or of the facet in the N-set")]
    NotASubridge(Vec<usize>),
    #[error("no projective normalization puts the facet into bounded position")]
    NormalizationFailed,
    #[error("input polytope is a simplex")]
    InputIsSimplex,
    #[error("step {step}: {source}")]
    Step {
        step: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("no elementary 2-simple 2-simplicial 4-polytope is known with {0} vertices")]
    UnsupportedVertexCount(usize),

    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{what} has {size} elements, the limit is {limit}")]
    SizeLimitExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn at_step(self, step: usize) -> Error {
        Error::Step {
            step,
            source: Box::new(self),
        }
    }

    /// The innermost error, looking through step wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Step { source, .. } => source.root(),
            other => other,
        }
    }
}
