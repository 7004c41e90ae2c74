use thiserror::Error;

/// Errors raised by the volume computations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the domain of a special function.
    #[error("domain error: {0}")]
    Domain(String),

    /// An input coordinate outside its admissible interval.
    #[error("range error: {0}")]
    Range(String),

    /// The data do not describe a spherical tetrahedron.
    #[error("not spherical: {0}")]
    NotSpherical(String),

    /// The tetrahedron is too close to degenerate to evaluate reliably.
    #[error("degenerate: {0}")]
    Degenerate(String),

    /// An internal identity that must hold on valid input failed.
    #[error("consistency error: {0}")]
    Consistency(String),

    /// The mod-2π² reduction could not place the volume in [0, π²).
    #[error("branch error: {0}")]
    Branch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
