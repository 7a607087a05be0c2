use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HahnError {
    #[error("gamma pole at nonpositive integer {0}")]
    GammaPole(f64),
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("parameters outside orthogonality regime: {0}")]
    OutsideOrthogonalityRegime(String),
    #[error("degree too large for direct sum (n = {0})")]
    DegreeTooLarge(usize),
    #[error("hypergeometric sum left an imaginary residue {imag:e} against real part {real:e}")]
    ImaginaryResidue { real: f64, imag: f64 },
    #[error("index {index} exceeds N = {size}")]
    IndexExceedsN { index: usize, size: usize },
    #[error("degree {degree} exceeds family size N = {size}")]
    DegreeExceedsFamily { degree: usize, size: usize },
    #[error("non-orthogonality regime: {0}")]
    NonOrthogonalityRegime(String),
    #[error("scattering regime requires mu > 0 (got {0})")]
    ScatteringRegime(f64),
    #[error("phase undefined at spectrum point")]
    PhaseUndefined,
    #[error("parameter degeneracy: {0}")]
    ParameterDegeneracy(String),
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("x = {x} is out of domain [{lo}, {hi}]")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },
    #[error("quadrature failed: achieved error {achieved:e}, requested {requested:e}")]
    QuadratureFailed { achieved: f64, requested: f64 },
    #[error("insufficient points for a linear fit ({0} valid)")]
    InsufficientPoints(usize),
    #[error("potential not linear in y; identification unavailable (residual {0:e})")]
    NotLinear(f64),
    #[error("index {index} exceeds spectrum size N = {size}")]
    IndexExceedsSpectrum { index: usize, size: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, HahnError>;
