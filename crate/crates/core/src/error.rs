use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has no edges")]
    NoEdges,
    #[error("edge {edge} references unknown vertex {vertex}")]
    UnknownVertex { edge: usize, vertex: usize },
    #[error("rotation of vertex {vertex} mentions unknown edge {edge}")]
    UnknownEdge { vertex: usize, edge: usize },
    #[error("edge {edge} is missing from the rotation of vertex {vertex}")]
    MissingFromRotation { edge: usize, vertex: usize },
    #[error("edge {edge} appears too often in the rotation of vertex {vertex}")]
    ExtraInRotation { edge: usize, vertex: usize },
    #[error("edge {edge} has negative capacity")]
    NegativeCapacity { edge: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("embedding violates Euler's formula: V - E + F = {0}")]
    NotPlanar(i64),
    #[error("invalid rotation system: {0}")]
    BadRotation(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CutError {
    #[error("source and sink coincide")]
    SameEndpoints,
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("path is self-crossing at vertex {0}")]
    SelfCrossing(usize),
    #[error("path is not simple (vertex {0} repeats)")]
    NotSimple(usize),
    #[error("path index {index} out of range 1..={k}")]
    IndexOutOfRange { index: usize, k: usize },
    #[error("dart {0} is not incident to a path vertex")]
    NotOnPath(usize),
    #[error("face {0} not found in any cluster")]
    FaceNotInCluster(usize),
    #[error("no path between the endpoint faces")]
    NoPath,
    #[error("cycle is not closed or does not belong to the graph")]
    BadCycle,
    #[error("flow value {given} does not match the minimum cycle cost {expected}")]
    InconsistentFlowValue { given: String, expected: String },
    #[error("accelerated potentials need a holeless partition (cluster {0} has several holes)")]
    UnsupportedMultiHole(usize),
    #[error("negative cycle in the directed cut graph")]
    NegativeCycle,
    #[error("flow invariant violated: {0}")]
    FlowInvariant(String),
    #[error("enumeration limit exceeded: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("r = {r} is below the minimum of 16")]
    RTooSmall { r: usize },
    #[error("vertex {vertex} has degree {degree}, more than r = {r} allows")]
    DegreeTooLarge { vertex: usize, degree: usize, r: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DynamicError {
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("rotation slot {slot} out of range for vertex {vertex} of degree {degree}")]
    SlotOutOfRange { vertex: usize, slot: usize, degree: usize },
    #[error("no edge between {0} and {1}")]
    MissingEdge(usize, usize),
    #[error("slots at {0} and {1} do not share a face")]
    SlotsNotOnCommonFace(usize, usize),
    #[error("deleting the edge between {0} and {1} would disconnect the graph")]
    WouldDisconnect(usize, usize),
    #[error("negative length or capacity")]
    Negative,
    #[error(transparent)]
    Cut(#[from] CutError),
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
