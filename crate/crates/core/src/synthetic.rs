//! Deterministic, photograph-like test images.
//!
//! Images combine an illumination gradient, smooth low-frequency shading,
//! soft-edged elliptical objects, a patch of fine texture, and mild sensor
//! noise. They stand in for a natural-image corpus wherever one is needed
//! without shipping binary test data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::image::GrayImage;

struct Wave {
    fy: f64,
    fx: f64,
    phase: f64,
    amplitude: f64,
}

struct Blob {
    cy: f64,
    cx: f64,
    ry: f64,
    rx: f64,
    angle: f64,
    level: f64,
}

/// A `width x height` image fully determined by `seed`.
pub fn natural_image(width: usize, height: usize, seed: u64) -> GrayImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (w, h) = (width as f64, height as f64);

    let gradient = (rng.random_range(-40.0..40.0), rng.random_range(-40.0..40.0));
    let shading: Vec<Wave> = (0..6)
        .map(|_| Wave {
            fy: rng.random_range(0.3..3.5) / h,
            fx: rng.random_range(0.3..3.5) / w,
            phase: rng.random_range(0.0..std::f64::consts::TAU),
            amplitude: rng.random_range(6.0..22.0),
        })
        .collect();
    let blobs: Vec<Blob> = (0..rng.random_range(5..11))
        .map(|_| Blob {
            cy: rng.random_range(0.0..h),
            cx: rng.random_range(0.0..w),
            ry: rng.random_range(0.05..0.3) * h,
            rx: rng.random_range(0.05..0.3) * w,
            angle: rng.random_range(0.0..std::f64::consts::PI),
            level: rng.random_range(-55.0..55.0),
        })
        .collect();
    // fine texture confined to a band, like fur or foliage
    let texture_amp = rng.random_range(3.0..18.0);
    let texture = [
        (
            rng.random_range(18.0..48.0) / h,
            rng.random_range(18.0..48.0) / w,
        ),
        (
            rng.random_range(18.0..48.0) / h,
            rng.random_range(-48.0..-18.0) / w,
        ),
    ];
    let band = {
        let a = rng.random_range(0.0..0.6);
        (a * h, (a + rng.random_range(0.2..0.4)) * h)
    };
    let noise = Normal::new(0.0, rng.random_range(1.2..3.0)).expect("positive sigma");

    let mut field = Vec::with_capacity(width * height);
    for r in 0..height {
        let y = r as f64;
        for c in 0..width {
            let x = c as f64;
            let mut v = gradient.0 * y / h + gradient.1 * x / w;
            for s in &shading {
                v += s.amplitude * (std::f64::consts::TAU * (s.fy * y + s.fx * x) + s.phase).cos();
            }
            for b in &blobs {
                let (dy, dx) = (y - b.cy, x - b.cx);
                let (sin, cos) = b.angle.sin_cos();
                let u = (dx * cos + dy * sin) / b.rx;
                let t = (-dx * sin + dy * cos) / b.ry;
                let dist = (u * u + t * t).sqrt();
                // soft edge roughly two pixels wide
                let edge = ((1.0 - dist) * b.rx.min(b.ry) / 2.0).clamp(0.0, 1.0);
                v += b.level * edge * edge * (3.0 - 2.0 * edge);
            }
            if y >= band.0 && y < band.1 {
                let tex: f64 = texture
                    .iter()
                    .map(|(fy, fx)| (std::f64::consts::TAU * (fy * y + fx * x)).sin())
                    .product();
                v += texture_amp * tex;
            }
            field.push(v + noise.sample(&mut rng));
        }
    }

    let (lo, hi) = field
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let span = (hi - lo).max(1e-9);
    let pixels = field
        .iter()
        .map(|v| (12.0 + (v - lo) / span * 231.0).round() as u8)
        .collect();
    GrayImage::new(width, height, pixels).expect("buffer sized to dimensions")
}

/// `count` named square images of side `size`, seeded from `seed`.
pub fn corpus(count: usize, size: usize, seed: u64) -> Vec<(String, GrayImage)> {
    (0..count)
        .map(|i| {
            let s = seed
                .wrapping_mul(0x9E37_79B9_7F4A_7C15)
                .wrapping_add(i as u64);
            (format!("synth-{i:02}"), natural_image(size, size, s))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::histogram;

    #[test]
    fn deterministic() {
        assert_eq!(natural_image(40, 30, 5), natural_image(40, 30, 5));
        assert_ne!(natural_image(40, 30, 5), natural_image(40, 30, 6));
    }

    #[test]
    fn uses_a_wide_intensity_range() {
        let img = natural_image(128, 128, 1);
        let bins = histogram(&img);
        let occupied = bins.iter().filter(|&&n| n > 0).count();
        assert!(occupied > 100, "{occupied}");
        assert!(img.pixels().iter().all(|&p| (12..=243).contains(&p)));
    }

    #[test]
    fn corpus_names() {
        let c = corpus(3, 16, 0);
        assert_eq!(
            c.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>(),
            ["synth-00", "synth-01", "synth-02"]
        );
    }
}
