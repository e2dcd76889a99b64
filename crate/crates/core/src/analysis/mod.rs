//! Stego quality and detectability measurements.
//!
//! Every function here is a pure function of its inputs; accumulations that
//! could depend on evaluation order use exact integer arithmetic.

mod histogram;
mod metrics;
mod report;
mod rs;

use thiserror::Error;

pub use histogram::{histogram, histogram_distance, pd_histogram, pearson, PdHistogram};
pub use metrics::{bit_rate, mse, psnr, quality_index, QualityReport, QUALITY_WINDOW};
pub use report::{emit_csv, format_value, ReportRow, CSV_HEADER};
pub use rs::{rs_analysis, RsMask, RsStatistics, DEFAULT_RS_MASK};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("images differ in size: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("image {width}x{height} is smaller than the required {min_width}x{min_height}")]
    TooSmall {
        width: usize,
        height: usize,
        min_width: usize,
        min_height: usize,
    },
    #[error("invalid RS mask: {0}")]
    InvalidMask(String),
}

pub(crate) fn check_same_size(
    a: &crate::GrayImage,
    b: &crate::GrayImage,
) -> Result<(), AnalysisError> {
    if a.same_dimensions(b) {
        Ok(())
    } else {
        Err(AnalysisError::DimensionMismatch(
            a.width(),
            a.height(),
            b.width(),
            b.height(),
        ))
    }
}
