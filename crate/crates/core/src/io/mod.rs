//! Instance generation, file formats, reports, SVG figures and batch runs.

mod format;
mod generate;
mod suite;
mod svg;

use thiserror::Error;

use crate::matching::MatchingError;

pub use format::{
    load_matching, load_points, load_report, parse_matching_json, parse_points_csv,
    parse_points_json, points_to_csv, points_to_json, save_matching, save_points, save_report,
    InstanceMeta, PointFormat, Report,
};
pub use generate::{generate, Generator, InstanceSpec};
pub use suite::{eps_thm_from_env, run_suite, Checks, SuiteConfig, SuiteEntry, SuiteReport};
pub use svg::{render_svg, write_svg};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERDICT: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid instance spec: {0}")]
    InvalidSpec(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("odd number of points: {0}")]
    OddCount(usize),
    #[error("unknown format {0:?}")]
    UnknownFormat(String),
    #[error(transparent)]
    Matching(MatchingError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<MatchingError> for IoError {
    fn from(e: MatchingError) -> Self {
        match e {
            MatchingError::OddCount(n) => IoError::OddCount(n),
            e => IoError::Matching(e),
        }
    }
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        if e.is_io() {
            return IoError::Io(e.into());
        }
        IoError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}
