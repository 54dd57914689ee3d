use crate::graph::Node;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("graph must have at least one node")]
    EmptyGraph,
    #[error("node {0} appears more than once")]
    DuplicateNode(Node),
    #[error("node {0} is not in the graph")]
    UnknownNode(Node),
    #[error("self-loop on node {0}")]
    SelfLoop(Node),
    #[error("a cut must be a non-empty proper subset of the nodes")]
    TrivialCut,
    #[error("node {0} must belong to the kept set")]
    NotInSet(Node),
    #[error("label {0} collides with a surviving node")]
    LabelCollision(Node),
    #[error("terminal sides must be non-empty")]
    EmptySide,
    #[error("node {0} is on both terminal sides")]
    OverlappingSides(Node),
    #[error("source and sink must differ")]
    SameTerminal,
    #[error("sequence must not be empty")]
    EmptySequence,
    #[error("node {0} is not in the sequence")]
    NotInSequence(Node),
    #[error("operation is undefined for the source node {0}")]
    SourceNode(Node),
    #[error("node {0} is not a leaf")]
    NotALeaf(Node),
    #[error("parent of position {0} must be an earlier position")]
    BadParent(usize),
    #[error("inconsistent input: {0}")]
    Mismatch(&'static str),
    #[error("terminal set must not be empty")]
    EmptyTerminals,
    #[error("source {0} must not be a terminal")]
    SourceInTerminals(Node),
    #[error("edge list does not form a spanning tree")]
    NotATree,
    #[error("sampling rate exponent {0} is out of range")]
    BadRate(u32),
    #[error("no certified split after {0} attempts")]
    AttemptCapExceeded(u32),
    #[error("instance has {0} nodes, above the enumeration limit {1}")]
    TooLarge(usize, usize),
    #[error("perturbed weights overflow 128 bits")]
    Overflow,
}
