use thiserror::Error;

/// Failures raised anywhere in the pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("raster has no foreground pixels")]
    Empty,
    #[error("foreground splits into {components} components")]
    Disconnected { components: usize },
    #[error("could not read raster: {0}")]
    Raster(String),
    #[error("{cells} cells exceed the exhaustive search budget of {budget}")]
    BudgetExceeded { cells: usize, budget: usize },
    #[error("nested covers violate {0}")]
    NestingViolation(String),
    #[error("family is not a connector: {0}")]
    NotAConnector(String),
    #[error("no chain of parts joins the source to the sink")]
    NoPath,
    #[error("part {0} is not in the chain")]
    NotInChain(usize),
    #[error("children of part {part} at level {level} do not connect its boundary sets")]
    RefinementFailure { level: u32, part: usize },
    #[error("endpoint cell {0} lies outside the connecting set")]
    EndpointOutsideF(usize),
    #[error("connecting set is disconnected")]
    FDisconnected,
    #[error("parameter {t} lies outside [0, {s}]")]
    OutOfDomain { t: f64, s: f64 },
    #[error("a single cell has no skeleton")]
    DegenerateSpace,
    #[error("modulus has no preimage for {0}")]
    InverseUndefined(f64),
    #[error("certificate failed at level {level}: observed {observed} > allowed {allowed}")]
    CertificateFailure { level: u32, observed: f64, allowed: f64 },
    #[error("need at least 3 levels, got {0}")]
    InsufficientLevels(usize),
    #[error("series diverges: alpha {alpha} <= 2r = {}", 2.0 * r)]
    DivergentSeries { r: f64, alpha: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Empty => "Empty",
            Error::Disconnected { .. } => "Disconnected",
            Error::Raster(_) => "Raster",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::NestingViolation(_) => "NestingViolation",
            Error::NotAConnector(_) => "NotAConnector",
            Error::NoPath => "NoPath",
            Error::NotInChain(_) => "NotInChain",
            Error::RefinementFailure { .. } => "RefinementFailure",
            Error::EndpointOutsideF(_) => "EndpointOutsideF",
            Error::FDisconnected => "FDisconnected",
            Error::OutOfDomain { .. } => "OutOfDomain",
            Error::DegenerateSpace => "DegenerateSpace",
            Error::InverseUndefined(_) => "InverseUndefined",
            Error::CertificateFailure { .. } => "CertificateFailure",
            Error::InsufficientLevels(_) => "InsufficientLevels",
            Error::DivergentSeries { .. } => "DivergentSeries",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
