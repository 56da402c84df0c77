use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),
    #[error("index pair ({0}, {1}) lies outside the window")]
    OutOfWindow(i64, i64),
    #[error("d∘d is nonzero at degree {0}")]
    NonZeroSquare(i64),
    #[error("invalid parameters: {0}")]
    InvalidSpec(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not an exceptional pair: {0}")]
    NotExceptional(String),
    #[error("map is not closed in the Hom complex")]
    NotClosed,
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn structural(msg: impl Into<String>) -> Error {
    Error::Structural(msg.into())
}
