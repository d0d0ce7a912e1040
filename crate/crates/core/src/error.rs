use serde::Serialize;
use std::fmt;

/// A vertex pair that breaks a claimed regularity property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    /// Which count disagreed, e.g. `lambda`, `mu`, `c3`.
    pub quantity: String,
    pub x: usize,
    pub y: usize,
    /// Hop distance between `x` and `y`.
    pub distance: u32,
    /// Number of common neighbours (or the count under test) actually observed.
    pub found: usize,
    /// The value established by earlier pairs at the same distance.
    pub expected: usize,
}

impl fmt::Display for PairWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pair ({}, {}) at distance {} has {} = {} where {} was expected",
            self.x, self.y, self.distance, self.quantity, self.found, self.expected
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid prime power: {0}")]
    InvalidPrimePower(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation undefined on the zero element")]
    ZeroInput,
    #[error("GF({q}) has no quartic structure (4 does not divide q - 1)")]
    NoQuarticStructure { q: u64 },
    #[error("element does not belong to this field: {0}")]
    ForeignElement(String),

    #[error("invalid edge ({u}, {v}) for a graph on {n} vertices")]
    InvalidEdge { u: usize, v: usize, n: usize },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("operation needs two distinct vertices, got {0} twice")]
    SameVertex(usize),
    #[error("not a strongly regular graph with k = 2*mu: {0}")]
    NotHalfCaseSrg(String),
    #[error("graph is not antipodal: {0}")]
    NotAntipodal(String),
    #[error("expected diameter {expected}, found {}", fmt_diameter(*found))]
    WrongDiameter { expected: u32, found: Option<u32> },
    #[error("vertex {vertex} has {count} vertices at distance 4, not exactly one")]
    NoUniqueAntipode { vertex: usize, count: usize },
    #[error("malformed instance: {0}")]
    MalformedInstance(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partition is not equitable: vertex {vertex} has {found} neighbours in cell {cell}, expected {expected}")]
    NotEquitable { vertex: usize, cell: usize, found: usize, expected: usize },

    #[error("malformed graph6 input: {0}")]
    MalformedGraph6(String),
    #[error("malformed JSON input: {0}")]
    MalformedJson(String),

    #[error("congruence condition violated: {0}")]
    CongruenceError(String),
    #[error("invalid order: {0}")]
    InvalidOrder(String),
    #[error("q = {q} exceeds the size guard of {max}")]
    TooLarge { q: u64, max: u64 },
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error("family '{0}' needs a value for q")]
    MissingParameter(String),

    #[error("graph is disconnected")]
    Disconnected,
    #[error("diameter {found} is below the required minimum {min}")]
    DiameterTooSmall { min: u32, found: u32 },
    #[error("graph is not regular: vertex {vertex} has degree {degree}, expected {expected}")]
    NotRegular { vertex: usize, degree: usize, expected: usize },
    #[error("graph is not amply regular: {0}")]
    NotAmplyRegular(PairWitness),
    #[error("graph is not strongly regular: {0}")]
    NotStronglyRegular(PairWitness),
    #[error("graph is not distance-regular: {0}")]
    NotDistanceRegular(PairWitness),
    #[error("graph is not sesqui-regular: {0}")]
    NotSesquiRegular(PairWitness),
    #[error("invalid valency {0}: need an odd integer >= 5")]
    InvalidValency(usize),
    #[error("not Q-regular at vertex {vertex}: {detail}")]
    NotQRegular { vertex: usize, detail: String },
    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("group divisible design check failed: {0}")]
    GddViolation(String),

    #[error("association scheme axiom ({axiom}) fails for relations {indices:?} at entry {position:?}")]
    SchemeViolation { axiom: &'static str, indices: Vec<usize>, position: (usize, usize) },
    #[error("matrix shape mismatch: {0}")]
    DimensionMismatch(String),

    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),
}

fn fmt_diameter(d: Option<u32>) -> String {
    match d {
        Some(d) => d.to_string(),
        None => "infinite (disconnected)".to_owned(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
