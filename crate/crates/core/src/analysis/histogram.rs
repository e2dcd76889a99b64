use super::{check_same_size, AnalysisError};
use crate::image::GrayImage;

/// Intensity histogram with 256 bins.
pub fn histogram(img: &GrayImage) -> [u64; 256] {
    let mut bins = [0u64; 256];
    for &p in img.pixels() {
        bins[usize::from(p)] += 1;
    }
    bins
}

/// Normalized L1 distance between two intensity histograms, in `[0, 1]`.
pub fn histogram_distance(a: &GrayImage, b: &GrayImage) -> Result<f64, AnalysisError> {
    check_same_size(a, b)?;
    if a.pixel_count() == 0 {
        return Ok(0.0);
    }
    let (ha, hb) = (histogram(a), histogram(b));
    let l1: u64 = ha.iter().zip(&hb).map(|(x, y)| x.abs_diff(*y)).sum();
    Ok(l1 as f64 / (2 * a.pixel_count()) as f64)
}

/// Counts of horizontal neighbor differences `pixel(r, c+1) - pixel(r, c)`.
#[derive(Clone, PartialEq, Eq)]
pub struct PdHistogram {
    counts: Vec<u64>,
}

impl PdHistogram {
    pub const MIN_DIFF: i32 = -255;
    pub const MAX_DIFF: i32 = 255;

    pub fn count(&self, diff: i32) -> u64 {
        if (Self::MIN_DIFF..=Self::MAX_DIFF).contains(&diff) {
            self.counts[(diff - Self::MIN_DIFF) as usize]
        } else {
            0
        }
    }

    /// Counts for `d = -255..=255`, in order.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `(difference, count)` pairs with `|d| <= radius`.
    pub fn window(&self, radius: i32) -> impl Iterator<Item = (i32, u64)> + '_ {
        (-radius..=radius).map(move |d| (d, self.count(d)))
    }
}

impl std::fmt::Debug for PdHistogram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PdHistogram")
            .field("total", &self.total())
            .finish_non_exhaustive()
    }
}

pub fn pd_histogram(img: &GrayImage) -> Result<PdHistogram, AnalysisError> {
    if img.width() < 2 {
        return Err(AnalysisError::TooSmall {
            width: img.width(),
            height: img.height(),
            min_width: 2,
            min_height: 1,
        });
    }
    let mut counts = vec![0u64; 511];
    for row in img.rows() {
        for pair in row.windows(2) {
            let d = i32::from(pair[1]) - i32::from(pair[0]);
            counts[(d - PdHistogram::MIN_DIFF) as usize] += 1;
        }
    }
    Ok(PdHistogram { counts })
}

/// Pearson correlation of two equally long series. Returns `None` when
/// either series is constant.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    assert_eq!(xs.len(), ys.len(), "series lengths differ");
    let n = xs.len() as f64;
    if xs.is_empty() {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}
