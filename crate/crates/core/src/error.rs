use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("not semistandard: {0}")]
    NotSemistandard(String),
    #[error("letter outside alphabet: {0}")]
    Alphabet(String),
    #[error("window exhausted: {0}")]
    WindowExhausted(String),
    #[error("node cap of {0} exceeded")]
    NodeCap(usize),
    #[error("not an inner corner: ({0}, {1})")]
    NotInnerCorner(usize, usize),
    #[error("illegal switch: {0}")]
    IllegalSwitch(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("not admissible: {0}")]
    NotAdmissible(String),
    #[error("not a member: {0}")]
    NotMember(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidShape(_) => "invalid_shape",
            Error::NotSemistandard(_) => "not_semistandard",
            Error::Alphabet(_) => "alphabet",
            Error::WindowExhausted(_) => "window_exhausted",
            Error::NodeCap(_) => "node_cap_exceeded",
            Error::NotInnerCorner(..) => "not_inner_corner",
            Error::IllegalSwitch(_) => "illegal_switch",
            Error::Precondition(_) => "precondition",
            Error::NotAdmissible(_) => "not_admissible",
            Error::NotMember(_) => "not_member",
            Error::Malformed(_) => "malformed_input",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
