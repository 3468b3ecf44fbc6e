use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero rational function")]
    DivisionByZero,

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("near-pole evaluation")]
    NearPole,

    #[error("variable `{0}` has no assigned value")]
    UnassignedVariable(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("gamma pole near {0}")]
    GammaPole(String),

    #[error("pole margin violated: {0}")]
    PoleMargin(String),

    #[error("non-exact polynomial division")]
    InexactDivision,

    #[error("malformed serialized value: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
