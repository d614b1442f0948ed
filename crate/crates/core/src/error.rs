use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inhomogeneous {0}")]
    Inhomogeneous(&'static str),
    #[error("not a Lie element: {0}")]
    NotLie(String),
    #[error("derivation is not symplectic")]
    NotSymplectic,
    #[error("total degree {requested} exceeds the cap of {cap}")]
    DegreeCap { requested: usize, cap: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("polynomial is not antisymmetric")]
    NotAntisymmetric,
    #[error("polynomial division is not exact: {0}")]
    NotDivisible(String),
    #[error("trace polynomial is not in the image of F(L): {0}")]
    NotInFreeLieTraces(String),
    #[error("identity check failed: {0}")]
    IdentityFailed(String),
}
