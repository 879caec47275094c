use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse permutation: {reason} (token `{token}`)")]
    Parse { token: String, reason: String },

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("{op} supports n <= {max}, got n = {n}")]
    SizeCap { op: &'static str, n: usize, max: usize },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid pattern: {0}")]
    Pattern(String),

    #[error("invalid graph: {0}")]
    Graph(String),

    #[error("invalid board: {0}")]
    Board(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_cap(op: &'static str, n: usize, max: usize) -> Result<()> {
    if n > max {
        Err(Error::SizeCap { op, n, max })
    } else {
        Ok(())
    }
}

pub(crate) fn check_same_size(left: usize, right: usize) -> Result<()> {
    if left != right {
        Err(Error::SizeMismatch { left, right })
    } else {
        Ok(())
    }
}
