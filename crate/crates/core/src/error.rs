use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("singular spectrum inside the rejection band (sigma/sigma_max = {ratio:e})")]
    BorderlineSpectrum { ratio: f64 },
    #[error("operator is not invertible in the corner (rank {found}, expected {expected})")]
    NotInvertibleInCorner { expected: usize, found: usize },
    #[error("projection lies outside the chart domain")]
    ChartDomain,
    #[error("point lies outside the chart overlap")]
    ChartOverlap,
    #[error("elements are not composable: |r(x) - l(y)| = {0:e}")]
    NonComposable(f64),
    #[error("frame is not a partial isometry onto p0 (residual {0:e})")]
    NonUnitary(f64),
    #[error("frames do not match (residual {0:e})")]
    FrameMismatch(f64),
    #[error("endomorphism is not a right-module automorphism (residual {0:e})")]
    NonModAutomorphism(f64),
    #[error("derivative evaluation failed: {0}")]
    Derivative(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
