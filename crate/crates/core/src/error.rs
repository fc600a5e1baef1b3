use thiserror::Error;

/// Errors raised by the toolkit. Structural violations of an input are
/// reported as data (see [`crate::gog::ValidationReport`]); these are the
/// conditions under which a computation cannot proceed at all.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("unknown element `{element}` of group `{group}`")]
    UnknownElement { group: String, element: String },
    #[error("group enumeration exceeded the cap of {0} elements")]
    CapExceeded(usize),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("contraction of edge `{0}` is undecidable: symbolic group without a surjectivity assertion")]
    UndecidableContraction(String),
    #[error("index of edge `{0}` is undecidable: symbolic group without an index assertion")]
    UndecidableIndex(String),
    #[error("cardinality of the group on edge `{0}` is undecidable")]
    UndecidableCardinality(String),
    #[error("vertex `{0}` carries a symbolic group without a presentation")]
    MissingPresentation(String),
    #[error("word or computation needs enumerated groups, but `{0}` is symbolic")]
    SymbolicGroupInWord(String),
    #[error("cover ball exceeds the cap of {0} vertices")]
    BallTooLarge(usize),
    #[error("vertex lies outside the ball of radius {radius} (depth {depth})")]
    OutOfBall { radius: usize, depth: usize },
    #[error("invalid graph of groups: {0}")]
    InvalidGraphOfGroups(String),
    #[error("unknown fixed-space selector: {0}")]
    UnknownSelector(String),
    #[error("edge family component on `{0}` is not fixed by its edge group")]
    NotEdgeFixed(String),
    #[error("not a semidirect (single bijective loop) instance: {0}")]
    NotASemidirectInstance(String),
    #[error("not a left transversal: {0}")]
    NotATransversal(String),
    #[error("graph of groups is not reduced (witness edge `{0}`)")]
    NotReduced(String),
    #[error("hypothesis not asserted: {0}")]
    HypothesisNotAsserted(String),
    #[error("missing Betti number of edge group `{edge}` in degree {degree}")]
    MissingEdgeBetti { edge: String, degree: u32 },
    #[error("invalid representation descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("wrong representation class: {0}")]
    WrongClass(String),
    #[error("unknown example `{0}`")]
    UnknownExample(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
}

pub type Result<T> = std::result::Result<T, Error>;
