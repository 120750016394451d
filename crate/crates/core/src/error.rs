use thiserror::Error;

/// Errors produced by graph construction, complexes, Morse runs and homology.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter for {family}: {reason}")]
    InvalidParameter {
        family: &'static str,
        reason: String,
    },

    #[error("unknown edge label `{0}`")]
    UnknownEdgeLabel(String),

    #[error("unknown vertex label `{0}`")]
    UnknownVertexLabel(String),

    #[error("invalid edge id {0}")]
    InvalidEdgeId(usize),

    #[error("invalid vertex id {0}")]
    InvalidVertexId(usize),

    #[error("edges {0} and {1} share a vertex; not a matching")]
    NotAMatching(usize, usize),

    #[error("ground set has {0} elements; at most 64 are supported")]
    GroundSetTooLarge(usize),

    #[error("face count exceeds cap of {cap}")]
    FaceCapExceeded { cap: usize },

    #[error("operation requires a non-void complex")]
    VoidComplex,

    #[error("unknown ground label `{0}` in schedule")]
    UnknownScheduleLabel(String),

    #[error("label `{0}` appears more than once in schedule")]
    DuplicateScheduleLabel(String),

    #[error("fold rejected: neighbour `{offending}` of `{v}` is not adjacent to `{w}`")]
    FoldPrecondition {
        v: String,
        w: String,
        offending: String,
    },

    #[error("fold rejected: `{0}` and `{1}` must be distinct vertices")]
    FoldSameVertex(String, String),

    #[error("fold certification failed: {0}")]
    FoldCertificate(String),

    #[error("pairing is not a legal partial pairing: {0}")]
    IllegalPairing(String),

    #[error("malformed complex data: {0}")]
    MalformedComplex(String),
}

pub type Result<T> = std::result::Result<T, Error>;
