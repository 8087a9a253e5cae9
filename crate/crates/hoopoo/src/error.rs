use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid cell address ({depth}, {index})")]
    InvalidAddress { depth: u32, index: u128 },

    #[error("depth {0} exceeds the addressable range of cell indices")]
    DepthOverflow(u32),

    #[error("point lies outside the domain")]
    OutsideDomain,

    #[error("degenerate region: zero width along axis {0}")]
    DegenerateRegion(usize),

    #[error("instance has no evaluations yet")]
    EmptyInstance,

    #[error("run is not ready for recommendation: {0}")]
    NotReady(&'static str),

    #[error("objective does not declare a maximizer")]
    MaximizerUnknown,

    #[error("resource guard exceeded: {0}")]
    ResourceGuard(String),

    #[error("dimension fit requires at least {needed} usable depths, found {found}")]
    InsufficientDepths { needed: usize, found: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("checkpoint: {0}")]
    Checkpoint(String),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
