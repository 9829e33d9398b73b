use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("variable set {name} has arity {found}, expected {expected}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("variable set {0} declared twice with different arities")]
    VarSetConflict(String),
    #[error("transvectant order {k} exceeds degrees ({deg_a}, {deg_b})")]
    TransvectantOrder { k: u32, deg_a: u32, deg_b: u32 },
    #[error("polarization order {e} exceeds degree {degree}")]
    PolarizationOrder { e: u32, degree: u32 },
    #[error("operator is not homogeneous in {0}")]
    NotHomogeneous(String),
    #[error("degree {found} is too small, need at least {min}")]
    DegreeTooSmall { found: u32, min: u32 },
    #[error("form is zero")]
    ZeroForm,
    #[error("form is a power of a linear form")]
    PowerOfLinearForm,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no case covers (d, e, r, p') = ({d}, {e}, {r}, {p_prime})")]
    CaseGap { d: u32, e: u32, r: u32, p_prime: u32 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division is not exact")]
    InexactDivision,
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
