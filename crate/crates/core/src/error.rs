use thiserror::Error;

use crate::spectrum::LengthProfile;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("order n = {n} is out of range ({reason})")]
    OrderOutOfRange { n: u32, reason: &'static str },

    #[error("vertex {vertex} is out of range for n = {n}")]
    VertexOutOfRange { vertex: u32, n: u32 },

    #[error("path {path:?} repeats vertex {vertex}")]
    RepeatedVertex { path: Vec<u32>, vertex: u32 },

    #[error("a directed path needs at least two vertices, got {0:?}")]
    PathTooShort(Vec<u32>),

    #[error("malformed document: {0}")]
    Schema(String),

    #[error("profile has {got} entries, expected n - 2 = {expected}")]
    ProfileShape { expected: usize, got: usize },

    #[error("profile {profile} does not sum to n(n-1) arcs")]
    ArcCount { profile: LengthProfile },

    #[error("profile {profile} violates the balance conditions ({detail})")]
    ConditionViolation { profile: LengthProfile, detail: String },

    #[error("no stored construction for n = {n}, profile {profile}; nearest supported: {}", fmt_nearest(.nearest))]
    NoStoredConstruction { n: u32, profile: LengthProfile, nearest: Vec<LengthProfile> },

    #[error("path {path:?} has length {length} > n - 2 = {limit}")]
    Hamiltonian { path: Vec<u32>, length: usize, limit: usize },

    #[error("stored table {source_tag} is inconsistent: {detail}")]
    Table { source_tag: String, detail: String },

    #[error("decomposition failed verification: {0}")]
    Verification(String),

    #[error("labeling: {0}")]
    Labeling(String),

    #[error("cannot parse expression {input:?}: {detail}")]
    Expression { input: String, detail: String },

    #[error("not a rooted in-tree: {0}")]
    Structure(String),

    #[error("invalid search request: {0}")]
    Search(String),
}

fn fmt_nearest(nearest: &[LengthProfile]) -> String {
    if nearest.is_empty() {
        return "none".to_owned();
    }
    nearest.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Schema(err.to_string())
    }
}
