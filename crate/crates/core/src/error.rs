use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("site count {0} outside supported range 2..=32")]
    SiteCount(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("state {word:#b} violates the blockade constraint on {sites} sites")]
    ConstraintViolation { word: u32, sites: usize },
    #[error("operation requires periodic boundary conditions")]
    RequiresPeriodic,
    #[error("incompatible symmetry sector: {0}")]
    IncompatibleSector(String),
    #[error("operator breaks the sector symmetry (relative commutator {0:.3e})")]
    SymmetryViolation(f64),
    #[error("basis mismatch: {0}")]
    BasisMismatch(String),
    #[error("LAPACK routine {routine} failed with info = {info}")]
    Lapack { routine: &'static str, info: i32 },
    #[error("matrix is not normal (residual {0:.3e})")]
    NotNormal(f64),
    #[error("vector is not normalized (norm {0})")]
    NotNormalized(f64),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("orbit matching failed: {0}")]
    OrbitMatch(String),
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
