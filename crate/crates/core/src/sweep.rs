//! Rate sweeps comparing the LBP embedder against the baselines.
//!
//! A rate is a percentage of the method's own capacity. For the LBP
//! embedder that is the stream capacity with the 4-byte header always
//! included; the payload image is cropped so the framed stream fits. For
//! baselines it is a percentage of their bit capacity, filled with payload
//! pixel bits.

use std::fmt;

use thiserror::Error;

use crate::analysis::{
    self, histogram_distance, pd_histogram, pearson, rs_analysis, AnalysisError, QualityReport,
    ReportRow, RsMask,
};
use crate::baselines::{
    baseline_embed, bytes_to_bits, BaselineError, BaselineKind, BaselineMethod,
};
use crate::codec::{self, StegoError, StegoParams, HEADER_LEN};
use crate::image::GrayImage;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SweepError {
    #[error(transparent)]
    Stego(#[from] StegoError),
    #[error(transparent)]
    Baseline(#[from] BaselineError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("rate {0}% is outside (0, 100]")]
    Rate(String),
    #[error("rate {rate}% leaves no room for payload pixels in {image}")]
    NoRoom { image: String, rate: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Proposed(StegoParams),
    Baseline(BaselineMethod),
}

impl Method {
    /// Parses `proposed`, `proposed-mu<N>`, `lsb<k>`, `lsbm` or `lsbmr`.
    /// Bare `proposed` uses `default_mu`; baselines take `seed`.
    pub fn parse(token: &str, default_mu: StegoParams, seed: u64) -> Result<Self, SweepError> {
        let token = token.trim();
        if token == "proposed" {
            return Ok(Method::Proposed(default_mu));
        }
        if let Some(digits) = token.strip_prefix("proposed-mu") {
            let mu = digits
                .parse::<u8>()
                .map_err(|_| BaselineError::UnknownMethod(token.to_owned()))?;
            return Ok(Method::Proposed(StegoParams::new(mu)?));
        }
        let kind: BaselineKind = token.parse()?;
        Ok(Method::Baseline(BaselineMethod::new(kind, seed)?))
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Proposed(p) => write!(f, "proposed-mu{}", p.mu()),
            Method::Baseline(b) => b.kind.fmt(f),
        }
    }
}

/// Result of one embedding at a given rate.
#[derive(Debug, Clone)]
pub struct Embedded {
    pub stego: GrayImage,
    pub embedded_bits: u64,
}

/// Top-left crop of `payload` holding at most `max_bytes` pixels, keeping
/// full rows where possible. `None` when nothing fits.
pub fn fit_payload(payload: &GrayImage, max_bytes: usize) -> Option<GrayImage> {
    if max_bytes == 0 || payload.pixel_count() == 0 {
        return None;
    }
    let cols = payload.width().min(max_bytes).min(usize::from(u16::MAX));
    let rows = payload
        .height()
        .min(max_bytes / cols)
        .min(usize::from(u16::MAX));
    Some(payload.crop(cols, rows))
}

fn check_rate(rate: f64) -> Result<(), SweepError> {
    if rate > 0.0 && rate <= 100.0 {
        Ok(())
    } else {
        Err(SweepError::Rate(analysis::format_value(rate)))
    }
}

/// Embeds a share of `payload` filling `rate` percent of the method's capacity.
pub fn embed_at_rate(
    name: &str,
    cover: &GrayImage,
    payload: &GrayImage,
    method: Method,
    rate: f64,
) -> Result<Embedded, SweepError> {
    check_rate(rate)?;
    let no_room = || SweepError::NoRoom {
        image: name.to_owned(),
        rate: analysis::format_value(rate),
    };
    match method {
        Method::Proposed(params) => {
            let target = (codec::capacity(cover, params) as f64 * rate / 100.0).floor() as usize;
            let fitted =
                fit_payload(payload, target.saturating_sub(HEADER_LEN)).ok_or_else(no_room)?;
            let stego = codec::embed(cover, &fitted, params)?;
            Ok(Embedded {
                stego,
                embedded_bits: ((HEADER_LEN + fitted.pixel_count()) * 8) as u64,
            })
        }
        Method::Baseline(b) => {
            let n = (b.capacity(cover) as f64 * rate / 100.0).floor() as usize;
            let source = bytes_to_bits(payload.pixels());
            if n == 0 || source.is_empty() {
                return Err(no_room());
            }
            let bits: Vec<bool> = source.iter().copied().cycle().take(n).collect();
            let stego = baseline_embed(cover, &bits, b)?;
            Ok(Embedded {
                stego,
                embedded_bits: n as u64,
            })
        }
    }
}

/// Detectability statistics that need only the image under test.
pub fn rs_rows(
    name: &str,
    method: &str,
    rate: f64,
    img: &GrayImage,
    mask: &RsMask,
) -> Result<Vec<ReportRow>, SweepError> {
    let rs = rs_analysis(img, mask)?;
    Ok([
        ("r_m", rs.r_m),
        ("s_m", rs.s_m),
        ("r_neg_m", rs.r_neg_m),
        ("s_neg_m", rs.s_neg_m),
    ]
    .into_iter()
    .map(|(metric, v)| ReportRow::new(name, method, rate, metric, v))
    .collect())
}

/// Every metric comparing `stego` to `cover`.
pub fn measure_rows(
    name: &str,
    method: &str,
    rate: f64,
    cover: &GrayImage,
    stego: &GrayImage,
    embedded_bits: u64,
    mask: &RsMask,
) -> Result<Vec<ReportRow>, SweepError> {
    let q = QualityReport::measure(cover, stego, embedded_bits)?;
    let pdh_cover = pd_histogram(cover)?;
    let pdh_stego = pd_histogram(stego)?;
    let as_f64 = |c: &[u64]| c.iter().map(|&v| v as f64).collect::<Vec<_>>();
    let pdh_corr =
        pearson(&as_f64(pdh_cover.counts()), &as_f64(pdh_stego.counts())).unwrap_or(f64::NAN);
    let mut rows: Vec<ReportRow> = [
        ("psnr", q.psnr),
        ("q_index", q.q_index),
        ("bit_rate", q.bit_rate),
        ("embedded_bits", q.embedded_bits as f64),
        ("hist_l1", histogram_distance(cover, stego)?),
        ("pdh_corr", pdh_corr),
    ]
    .into_iter()
    .map(|(metric, v)| ReportRow::new(name, method, rate, metric, v))
    .collect();
    rows.extend(rs_rows(name, method, rate, stego, mask)?);
    Ok(rows)
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub rates: Vec<f64>,
    pub methods: Vec<Method>,
    pub mask: RsMask,
}

/// Runs every (cover, method, rate) combination.
///
/// Each cover also gets a `cover` row set at rate 0 holding its own RS
/// statistics. Rows are ordered by image name, then method label, then rate.
pub fn run_sweep(
    covers: &[(String, GrayImage)],
    payload: &GrayImage,
    config: &SweepConfig,
) -> Result<Vec<ReportRow>, SweepError> {
    for &rate in &config.rates {
        check_rate(rate)?;
    }
    let mut covers: Vec<&(String, GrayImage)> = covers.iter().collect();
    covers.sort_by(|a, b| a.0.cmp(&b.0));
    let mut methods: Vec<(String, Method)> =
        config.methods.iter().map(|m| (m.to_string(), *m)).collect();
    methods.push(("cover".to_owned(), Method::Proposed(StegoParams::new(1)?)));
    methods.sort_by(|a, b| a.0.cmp(&b.0));
    methods.dedup_by(|a, b| a.0 == b.0);
    let mut rates = config.rates.clone();
    rates.sort_by(f64::total_cmp);
    rates.dedup();

    let mut rows = Vec::new();
    for (name, cover) in covers {
        for (label, method) in &methods {
            if label == "cover" {
                rows.extend(rs_rows(name, label, 0.0, cover, &config.mask)?);
                continue;
            }
            for &rate in &rates {
                let e = embed_at_rate(name, cover, payload, *method, rate)?;
                rows.extend(measure_rows(
                    name,
                    label,
                    rate,
                    cover,
                    &e.stego,
                    e.embedded_bits,
                    &config.mask,
                )?);
            }
        }
    }
    Ok(rows)
}
