use crate::vector::Coord;
use thiserror::Error;

/// Errors produced by the library. Validation failures carry enough context
/// to reconstruct what was rejected.
#[derive(Debug, Error)]
pub enum Error {
    #[error("coordinate {coord} lies outside the space layout ({detail})")]
    IndexOutsideLayout { coord: Coord, detail: String },

    #[error("vector mixes flat and block-addressed coordinates")]
    MixedCoordinates,

    #[error("space expects flat coordinates but got block coordinate {0}")]
    FlatCoordinateRequired(Coord),

    #[error("space expects block coordinates but got flat coordinate {0}")]
    BlockCoordinateRequired(Coord),

    #[error("enumeration cap exceeded: {required} candidate sets requested, cap is {cap}")]
    EnumerationCap { cap: u128, required: u128 },

    #[error("order m = {m} is below the inside rank a = {a}")]
    OrderBelowInsideRank { m: usize, a: usize },

    #[error("sample has zero norm and cannot enter a ratio estimate")]
    ZeroNormSample,

    #[error("weight function is not sparse for the given partner: {0}")]
    NotSparse(String),

    #[error("certified block construction overflows beyond block {block}")]
    BlockOverflow { block: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
