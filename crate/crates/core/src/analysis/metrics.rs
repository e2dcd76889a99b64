use super::{check_same_size, AnalysisError};
use crate::image::GrayImage;

/// Side length of the sliding window used by [`quality_index`].
pub const QUALITY_WINDOW: usize = 8;

/// Quality figures for one stego image against its cover.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityReport {
    /// Decibels; `f64::INFINITY` when the images are identical.
    pub psnr: f64,
    pub q_index: f64,
    /// Embedded bits per cover pixel.
    pub bit_rate: f64,
    pub embedded_bits: u64,
}

impl QualityReport {
    pub fn measure(
        cover: &GrayImage,
        stego: &GrayImage,
        embedded_bits: u64,
    ) -> Result<Self, AnalysisError> {
        Ok(Self {
            psnr: psnr(cover, stego)?,
            q_index: quality_index(cover, stego)?,
            bit_rate: bit_rate(embedded_bits, cover),
            embedded_bits,
        })
    }
}

/// Mean squared pixel difference.
pub fn mse(a: &GrayImage, b: &GrayImage) -> Result<f64, AnalysisError> {
    check_same_size(a, b)?;
    if a.pixel_count() == 0 {
        return Ok(0.0);
    }
    let sum: u64 = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(&x, &y)| {
            let d = u64::from(x.abs_diff(y));
            d * d
        })
        .sum();
    Ok(sum as f64 / a.pixel_count() as f64)
}

/// Peak signal-to-noise ratio in dB for 8-bit images. Identical images give
/// `f64::INFINITY`.
pub fn psnr(a: &GrayImage, b: &GrayImage) -> Result<f64, AnalysisError> {
    let mse = mse(a, b)?;
    if mse == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (255.0f64 * 255.0 / mse).log10())
}

pub fn bit_rate(embedded_bits: u64, cover: &GrayImage) -> f64 {
    if cover.pixel_count() == 0 {
        return 0.0;
    }
    embedded_bits as f64 / cover.pixel_count() as f64
}

/// Universal image quality index averaged over every 8x8 window (step 1).
///
/// For a window with pixel sums `Sa`, `Sb` and centered co-moments
/// `Cxy = n*sum(xy) - sum(x)*sum(y)` the index is
/// `4*Cab*Sa*Sb / ((Caa + Cbb) * (Sa^2 + Sb^2))`; the normalizations of the
/// means and variances cancel. A window with a zero denominator counts as 1
/// when both images agree on it and is dropped otherwise. If every window is
/// dropped the result is 0.
pub fn quality_index(a: &GrayImage, b: &GrayImage) -> Result<f64, AnalysisError> {
    check_same_size(a, b)?;
    let (w, h) = (a.width(), a.height());
    if w < QUALITY_WINDOW || h < QUALITY_WINDOW {
        return Err(AnalysisError::TooSmall {
            width: w,
            height: h,
            min_width: QUALITY_WINDOW,
            min_height: QUALITY_WINDOW,
        });
    }

    let sums = WindowSums::new(a, b);
    let n = (QUALITY_WINDOW * QUALITY_WINDOW) as i128;
    let mut total = 0.0f64;
    let mut counted = 0u64;
    for r in 0..=h - QUALITY_WINDOW {
        for c in 0..=w - QUALITY_WINDOW {
            let [sa, sb, saa, sbb, sab] = sums.window(r, c).map(i128::from);
            let caa = n * saa - sa * sa;
            let cbb = n * sbb - sb * sb;
            let cab = n * sab - sa * sb;
            let denom = (caa + cbb) * (sa * sa + sb * sb);
            if denom == 0 {
                // both windows are flat; they agree iff their sums match
                if sa == sb {
                    total += 1.0;
                    counted += 1;
                }
                continue;
            }
            total += (4 * cab * sa * sb) as f64 / denom as f64;
            counted += 1;
        }
    }
    Ok(if counted == 0 {
        0.0
    } else {
        total / counted as f64
    })
}

/// Summed-area tables of a, b, a^2, b^2 and ab.
struct WindowSums {
    stride: usize,
    tables: [Vec<u64>; 5],
}

impl WindowSums {
    fn new(a: &GrayImage, b: &GrayImage) -> Self {
        let (w, h) = (a.width(), a.height());
        let stride = w + 1;
        let mut tables: [Vec<u64>; 5] = std::array::from_fn(|_| vec![0u64; stride * (h + 1)]);
        for r in 0..h {
            let mut run = [0u64; 5];
            for c in 0..w {
                let x = u64::from(a.get(r, c));
                let y = u64::from(b.get(r, c));
                let vals = [x, y, x * x, y * y, x * y];
                for (k, table) in tables.iter_mut().enumerate() {
                    run[k] += vals[k];
                    table[(r + 1) * stride + c + 1] = table[r * stride + c + 1] + run[k];
                }
            }
        }
        Self { stride, tables }
    }

    fn window(&self, r: usize, c: usize) -> [u64; 5] {
        let s = self.stride;
        let (r1, c1) = (r + QUALITY_WINDOW, c + QUALITY_WINDOW);
        self.tables
            .each_ref()
            .map(|t| t[r1 * s + c1] + t[r * s + c] - t[r * s + c1] - t[r1 * s + c])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Textbook per-window evaluation with floating-point means and variances.
    fn quality_oracle(a: &GrayImage, b: &GrayImage) -> f64 {
        let n = (QUALITY_WINDOW * QUALITY_WINDOW) as f64;
        let mut total = 0.0;
        let mut count = 0.0;
        for r in 0..=a.height() - QUALITY_WINDOW {
            for c in 0..=a.width() - QUALITY_WINDOW {
                let mut xs = Vec::new();
                let mut ys = Vec::new();
                for dr in 0..QUALITY_WINDOW {
                    for dc in 0..QUALITY_WINDOW {
                        xs.push(a.get(r + dr, c + dc) as f64);
                        ys.push(b.get(r + dr, c + dc) as f64);
                    }
                }
                let mx = xs.iter().sum::<f64>() / n;
                let my = ys.iter().sum::<f64>() / n;
                let vx = xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>() / (n - 1.0);
                let vy = ys.iter().map(|y| (y - my).powi(2)).sum::<f64>() / (n - 1.0);
                let cxy = xs
                    .iter()
                    .zip(&ys)
                    .map(|(x, y)| (x - mx) * (y - my))
                    .sum::<f64>()
                    / (n - 1.0);
                let denom = (vx + vy) * (mx * mx + my * my);
                if denom.abs() < 1e-12 {
                    if xs == ys {
                        total += 1.0;
                        count += 1.0;
                    }
                    continue;
                }
                total += 4.0 * cxy * mx * my / denom;
                count += 1.0;
            }
        }
        total / count
    }

    fn offset_image(base: &GrayImage, delta: i16) -> GrayImage {
        GrayImage::from_fn(base.width(), base.height(), |r, c| {
            (i16::from(base.get(r, c)) + delta) as u8
        })
    }

    #[test]
    fn psnr_identical_is_infinite() {
        let a = GrayImage::from_fn(16, 16, |r, c| (r * 16 + c) as u8);
        assert_eq!(psnr(&a, &a).unwrap(), f64::INFINITY);
    }

    #[test]
    fn psnr_closed_forms() {
        let a = GrayImage::from_fn(32, 32, |r, c| (20 + r + c) as u8);
        let one = psnr(&a, &offset_image(&a, 1)).unwrap();
        assert!((one - 10.0 * 65025f64.log10()).abs() < 1e-9);
        assert!((one - 48.13).abs() < 0.01, "{one}");
        let sixteen = psnr(&a, &offset_image(&a, 16)).unwrap();
        assert!((sixteen - 24.05).abs() < 0.01, "{sixteen}");
    }

    #[test]
    fn psnr_size_mismatch() {
        let err = psnr(&GrayImage::filled(2, 2, 0), &GrayImage::filled(2, 3, 0)).unwrap_err();
        assert_eq!(err, AnalysisError::DimensionMismatch(2, 2, 2, 3));
    }

    #[test]
    fn quality_of_self_is_one() {
        let a = GrayImage::from_fn(20, 17, |r, c| ((r * 7 + c * c) % 256) as u8);
        assert!((quality_index(&a, &a).unwrap() - 1.0).abs() < 1e-12);
        // flat regions count as agreeing windows
        let flat = GrayImage::filled(10, 10, 42);
        assert_eq!(quality_index(&flat, &flat).unwrap(), 1.0);
    }

    #[test]
    fn quality_of_inverted_is_negative() {
        let a = GrayImage::from_fn(16, 16, |r, c| (30 + r * 9 + c * 3) as u8);
        let inverted = GrayImage::from_fn(16, 16, |r, c| 255 - a.get(r, c));
        let oracle = quality_oracle(&a, &inverted);
        assert!(oracle < 0.0);
        assert!((quality_index(&a, &inverted).unwrap() - oracle).abs() < 1e-9);
    }

    #[test]
    fn quality_too_small() {
        let a = GrayImage::filled(7, 12, 1);
        assert!(matches!(
            quality_index(&a, &a),
            Err(AnalysisError::TooSmall { .. })
        ));
    }

    #[test]
    fn quality_matches_oracle_on_noise() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..5 {
            let a = GrayImage::from_fn(19, 13, |_, _| rng.random());
            let b = GrayImage::from_fn(19, 13, |r, c| {
                a.get(r, c).saturating_add(rng.random_range(0..9))
            });
            let got = quality_index(&a, &b).unwrap();
            assert!((got - quality_oracle(&a, &b)).abs() < 1e-9);
        }
    }

    #[test]
    fn bit_rate_examples() {
        let img = GrayImage::filled(512, 512, 0);
        assert_eq!(bit_rate(262_144, &img), 1.0);
        assert!((bit_rate(924_800, &img) - 3.5278).abs() < 1e-4);
        assert_eq!(bit_rate(0, &img), 0.0);
    }

    proptest! {
        #[test]
        fn psnr_symmetric(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = GrayImage::from_fn(9, 9, |_, _| rng.random());
            let b = GrayImage::from_fn(9, 9, |_, _| rng.random());
            prop_assert_eq!(psnr(&a, &b).unwrap().to_bits(), psnr(&b, &a).unwrap().to_bits());
        }

        #[test]
        fn psnr_decreases_with_mse(d1 in 1i16..60, extra in 1i16..60) {
            let a = GrayImage::filled(8, 8, 100);
            let p1 = psnr(&a, &offset_image(&a, d1)).unwrap();
            let p2 = psnr(&a, &offset_image(&a, d1 + extra)).unwrap();
            prop_assert!(p2 < p1);
        }
    }
}
