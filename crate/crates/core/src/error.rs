use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported dimension m={m}: {reason}")]
    UnsupportedDimension { m: usize, reason: &'static str },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("enumeration budget exceeded: {required} compositions, cap {cap}")]
    ResourceLimit { required: u128, cap: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;
