use thiserror::Error;

pub type Result<T> = std::result::Result<T, ShellError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ShellError {
    #[error("invalid chirality ({n},{m}): require n >= 1 and 0 <= m <= n")]
    InvalidChirality { n: u32, m: u32 },

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("half-thickness {eps} nm must be smaller than the radius {rho0} nm")]
    ThickShell { eps: f64, rho0: f64 },

    #[error("invalid elastic moduli: {0}")]
    InvalidModuli(String),

    #[error(
        "degenerate elimination pivot {pivot:e} (axial/shear coupling makes a1' undetermined)"
    )]
    DegeneratePivot { pivot: f64 },

    #[error("coefficient {name} vanishes")]
    ZeroCoefficient { name: &'static str },

    #[error("singular linear system (condition estimate {condition:e})")]
    SingularSystem { condition: f64 },

    #[error("assembled field has a non-negligible imaginary part ({relative:e} relative)")]
    ComplexField { relative: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}
