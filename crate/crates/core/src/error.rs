use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid interval [{m}, {n}) for level bound {s}")]
    InvalidInterval { m: u64, n: u64, s: u32 },

    #[error("index ({0}, {1}) out of range")]
    IndexOutOfRange(usize, usize),

    #[error("invalid lacunary sequence: {0}")]
    NotLacunary(String),

    #[error("window endpoint {endpoint} exceeds the last index {last}")]
    WindowOutOfRange { endpoint: usize, last: usize },

    #[error("shape mismatch: expected {expected:?}, got {got:?}")]
    ShapeMismatch { expected: (usize, usize), got: (usize, usize) },

    #[error("frequency set with denominators {set:?} is not representable on a grid with circumferences {grid:?}")]
    OffGrid { set: (u64, u64), grid: (u64, u64) },

    #[error("frequencies {0:?} and {1:?} violate the separation condition")]
    NotSeparated((i64, i64), (i64, i64)),

    #[error("spectral support violation at bin ({0}, {1})")]
    SupportViolation(i64, i64),

    #[error("octave {j} is not resolvable on this grid (resolvable: {lo}..={hi})")]
    OctaveOutOfRange { j: i32, lo: i32, hi: i32 },

    #[error("infeasible experiment: {0}")]
    Infeasible(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
