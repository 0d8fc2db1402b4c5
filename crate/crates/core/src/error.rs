use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("malformed {what} {input:?} at position {position}: {message}")]
    Parse {
        what: &'static str,
        input: String,
        position: usize,
        message: String,
    },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("polynomial is not homogeneous")]
    Inhomogeneous,
    #[error("tree/braiding mismatch at node {node}: {reason}")]
    TreeBraidingMismatch { node: String, reason: String },
    #[error("not finite dimensional under this tree: chi(a,a) at node {node} has infinite order")]
    NotFiniteDimensional { node: String },
    #[error("inadmissible at node {node}: {reason}")]
    Inadmissible { node: String, reason: String },
    #[error("tree violates min(rchl(lch b), lchl(rch b)) <= 3 at node {node}")]
    Structural { node: String },
    #[error("tree growth exceeded weight cap {cap} at node {node}: possibly infinite-dimensional or cap too small")]
    CapExceeded { cap: u32, node: String },
    #[error("unknown {kind} {name:?}; available: {available}")]
    Unknown {
        kind: &'static str,
        name: String,
        available: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
