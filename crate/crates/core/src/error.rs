use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a lens space parameterization: gcd({p}, {q}) != 1")]
    NotLensSpace { p: i64, q: i64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("attaching class not primitive: ({n}, {l})")]
    NotPrimitive { n: i64, l: i64 },

    #[error("resource error: group order {order} exceeds cap {cap}")]
    Resource { order: u64, cap: u64 },

    #[error("construction error: {0}")]
    Construction(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
