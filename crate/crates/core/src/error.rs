use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("non-positive {what} ({value:e}) at cell {cell}")]
    NonPositive {
        what: &'static str,
        value: f64,
        cell: usize,
    },

    #[error("inadmissible auxiliary temperature {value:e} for species {species}")]
    InadmissibleTemperature { species: usize, value: f64 },

    #[error("singular linear system: {0}")]
    Singular(String),

    #[error("vacuum state: all species densities vanish")]
    Vacuum,

    #[error("non-finite value in {field} at cell {cell}, t = {t}")]
    NonFinite {
        field: String,
        cell: usize,
        t: f64,
    },

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("scenario config: {0}")]
    Config(String),

    #[error("zero-norm reference in relative distance")]
    ZeroNorm,

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
