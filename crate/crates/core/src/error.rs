use alloc::string::String;

use num_bigint::BigUint;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Arguments violate an operation's preconditions.
    #[error("usage: {0}")]
    Usage(String),
    /// An enumeration or search would exceed its configured budget.
    #[error("capacity: {what} needs {needed}, cap is {cap}")]
    Capacity {
        what: String,
        needed: BigUint,
        cap: BigUint,
    },
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn capacity(what: impl Into<String>, needed: impl Into<BigUint>, cap: impl Into<BigUint>) -> Self {
        Error::Capacity {
            what: what.into(),
            needed: needed.into(),
            cap: cap.into(),
        }
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}
