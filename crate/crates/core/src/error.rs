use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational `{0}` (expected p or p/q)")]
pub struct ParseRationalError(pub String);

/// Failure while reading a DPG file. `line` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct DpgError {
    pub line: usize,
    pub kind: DpgErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DpgErrorKind {
    #[error("missing `DPG 1` header")]
    MissingHeader,
    #[error("unsupported version `{0}`")]
    UnsupportedVersion(String),
    #[error("malformed line: {0}")]
    Malformed(String),
    #[error("vertex index {0} out of range")]
    OutOfRange(usize),
    #[error("neighbor index not lower: {neighbor} >= {vertex}")]
    NotLower { vertex: usize, neighbor: usize },
    #[error("duplicate neighbor {neighbor} of vertex {vertex}")]
    DuplicateNeighbor { vertex: usize, neighbor: usize },
    #[error("vertex {0} listed twice or out of order")]
    OutOfOrder(usize),
    #[error("missing line for vertex {0}")]
    MissingVertex(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph is not planar: {0}")]
    NonPlanar(NonPlanarEvidence),
    #[error("graph must be connected and biconnected for embedding")]
    NotBiconnected,
    #[error("vertex {vertex} has no lower neighbor but is not the lowest vertex")]
    SinkNotUnique { vertex: usize },
    #[error("vertex {w} is not lower than vertex {v}")]
    NotLower { v: usize, w: usize },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("down-list of vertex {vertex} contains {neighbor}, which is not lower")]
    InvalidDownList { vertex: usize, neighbor: usize },
    #[error("{0}")]
    Precondition(String),
}

/// Evidence that an embedding attempt failed: a fragment of the graph
/// whose attachment vertices lie on no common face of an already embedded
/// (planar) subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonPlanarEvidence {
    pub attachments: Vec<usize>,
    pub embedded_faces: Vec<Vec<usize>>,
}

impl std::fmt::Display for NonPlanarEvidence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "fragment attached at {:?} fits in none of {} faces",
            self.attachments,
            self.embedded_faces.len()
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("parameter {param} out of range for {family} (minimum {min})")]
    ParamOutOfRange {
        family: &'static str,
        param: i64,
        min: i64,
    },
    #[error("vertex {0} does not have two upper and one lower neighbor")]
    NotChainVertex(usize),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("gadget search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("gadget data: {0}")]
    GadgetData(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertError {
    #[error("point ({alpha}, {beta}) is infeasible")]
    Infeasible { alpha: String, beta: String },
    #[error("objective must be nonnegative and not both zero")]
    BadObjective,
    #[error("objective is unbounded below on the feasible region")]
    Unbounded,
    #[error("case table `{0}` has no rows")]
    EmptyTable(String),
    #[error("n must be at least 4")]
    SmallN,
}

#[derive(Debug, Error)]
pub enum EnumerationError {
    #[error("facet count {n} exceeds the cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("facet count {0} is below 4")]
    TooSmall(usize),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
