use thiserror::Error;

/// Everything that can go wrong in the pipeline.
///
/// Variants fall in two classes. Input errors describe data that does not
/// encode a valid diagram, map or complex. Internal errors (see
/// [`Error::is_internal`]) mean a structural guarantee of the construction
/// was violated, which is always a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("arc labels {labels:?} do not appear exactly twice")]
    LabelMultiplicity { labels: Vec<u32> },

    #[error("diagram has no crossings")]
    EmptyDiagram,

    #[error("unknown builtin diagram `{0}`")]
    UnknownDiagram(String),

    #[error("invalid rotation system: {0}")]
    InvalidMap(String),

    #[error("map is disconnected")]
    Disconnected,

    #[error("map is not spherical: V - E + F = {euler}")]
    NonRealizable { euler: i64 },

    #[error("faces admit no checkerboard coloring (odd cycle in face adjacency)")]
    NotCheckerboard,

    #[error("map is not 4-valent at vertex {vertex}")]
    NotFourValent { vertex: usize },

    #[error("shaded sectors {0:?} are not opposite")]
    SectorsNotOpposite([usize; 2]),

    #[error("star pair is not a square face of the overlaid graph")]
    NotStarCandidate,

    #[error("star index {index} out of range ({count} candidates)")]
    StarIndex { index: usize, count: usize },

    #[error("{what} exceeds cap: {size} > {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },

    #[error("not a spanning tree: {0}")]
    NotSpanningTree(String),

    #[error("matching is not perfect: {0}")]
    NotPerfect(String),

    #[error("sign map has {got} entries, expected {expected}")]
    SignCount { got: usize, expected: usize },

    #[error("malformed input: {0}")]
    Input(String),

    #[error("io: {0}")]
    Io(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True when the error signals a broken invariant of the construction
    /// rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Input(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
