use thiserror::Error;

use crate::graph::Vertex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // embed
    #[error("empty rotation system")]
    EmptyGraph,
    #[error("vertex {0} lists neighbour {1}, which is out of range")]
    VertexOutOfRange(Vertex, Vertex),
    #[error("vertex {0} lists {1} but {1} does not list {0}")]
    AsymmetricAdjacency(Vertex, Vertex),
    #[error("loop or repeated neighbour at vertex {0}")]
    MultiEdgeOrLoop(Vertex),
    #[error("rotation system is not a sphere embedding: n - m + f = {0}")]
    NonPlanarEmbedding(i64),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("dual graph has a loop or parallel edge")]
    NonSimpleDual,
    #[error("not an even plane triangulation: {0}")]
    NotEvenTriangulation(String),
    #[error("vertex {0} has degree below four")]
    DegreeBelowFour(Vertex),

    // structure
    #[error("graph is not bipartite; odd cycle {0:?}")]
    NotBipartite(Vec<Vertex>),
    #[error("cycle enumeration exceeded the cap of {0}")]
    CycleCapExceeded(u64),
    #[error("path is not a C-path: {0}")]
    NotCPath(String),
    #[error("path violates condition (a) of a cutting pair: {0}")]
    PathConditionViolated(String),
    #[error("block is not a 2-connected block of the chain")]
    NoSuchBlock,
    #[error("no path with degree-2 interior joins two branch vertices of different types")]
    NoCutPath,
    #[error("graph is not 2-connected")]
    NotTwoConnected,

    // colorizer
    #[error("graph has a cycle of length {len} not divisible by 4: {cycle:?}")]
    NotInFamilyH { cycle: Vec<Vertex>, len: usize },
    #[error("vertices {0} and {1} are not opposite corners of a 4-cycle")]
    NotOn4Cycle(Vertex, Vertex),
    #[error("invalid colouring request: {0}")]
    InvalidRequest(String),

    // treesplit
    #[error("graph is a bipyramid C^2l * E^2 with uncovered small vertices")]
    BipyramidSpecialCase,
    #[error("constraint violates the seeding conditions: {0}")]
    ConstraintInvalid(String),
    #[error("tree-partition search exhausted without a solution")]
    SearchExhausted,
    #[error("no case of the extension applies: {0}")]
    CaseUnmatched(String),
    #[error("extension step {step} broke condition ({condition}): {detail}")]
    ConditionViolated {
        step: usize,
        condition: char,
        detail: String,
    },
    #[error("hypothesis graph H is not in the multi-4-cycle family: cycle {0:?}")]
    HNotInFamily(Vec<Vertex>),
    #[error("component of H containing {0} is not 2-connected")]
    HComponentNot2Connected(Vertex),
    #[error("precondition failed: {0}")]
    Precondition(String),

    // stein
    #[error("not a tree partition: {0}")]
    NotTreePartition(String),
    #[error("not a Hamilton cycle: {0}")]
    NotHamilton(String),
    #[error("search exceeded the cap of {0} states")]
    CapExceeded(u64),

    // gen
    #[error("size {0} is too small")]
    SizeTooSmall(usize),
    #[error("size {0} is outside the supported range {1}..={2}")]
    SizeOutOfRange(usize, usize, usize),
    #[error("no instance found: {0}")]
    NoneFound(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),
}
