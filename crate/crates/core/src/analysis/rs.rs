//! Regular/singular group statistics (RS steganalysis).
//!
//! Each image row is cut into consecutive, non-overlapping groups of
//! `mask.len()` pixels. A group's smoothness is the sum of absolute
//! differences of neighbors. Flipping the group pixel-wise by the mask makes
//! it regular when smoothness grows and singular when it drops.

use std::fmt;
use std::str::FromStr;

use super::AnalysisError;
use crate::image::GrayImage;

/// Flip mask with entries in `{-1, 0, 1}` and at least two entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RsMask(Vec<i8>);

/// The customary `[0, 1, 1, 0]` mask.
pub const DEFAULT_RS_MASK: [i8; 4] = [0, 1, 1, 0];

impl RsMask {
    pub fn new(entries: Vec<i8>) -> Result<Self, AnalysisError> {
        if entries.len() < 2 {
            return Err(AnalysisError::InvalidMask(format!(
                "needs at least 2 entries, got {}",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| !(-1..=1).contains(*e)) {
            return Err(AnalysisError::InvalidMask(format!(
                "entry {bad} not in {{-1, 0, 1}}"
            )));
        }
        Ok(Self(entries))
    }

    pub fn entries(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|e| -e).collect())
    }
}

impl Default for RsMask {
    fn default() -> Self {
        Self(DEFAULT_RS_MASK.to_vec())
    }
}

/// Accepts either a compact digit string (`0110`) or a comma list that may
/// contain negative entries (`0,-1,1,0`).
impl FromStr for RsMask {
    type Err = AnalysisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |tok: &str| {
            tok.trim()
                .parse::<i8>()
                .map_err(|_| AnalysisError::InvalidMask(format!("bad entry {tok:?}")))
        };
        let entries = if s.contains(',') {
            s.split(',').map(parse).collect::<Result<Vec<_>, _>>()?
        } else {
            s.chars()
                .map(|ch| parse(ch.encode_utf8(&mut [0; 4])))
                .collect::<Result<Vec<_>, _>>()?
        };
        Self::new(entries)
    }
}

impl fmt::Display for RsMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i8::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Fractions of regular and singular groups under a mask `m` and its negation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RsStatistics {
    pub r_m: f64,
    pub s_m: f64,
    pub r_neg_m: f64,
    pub s_neg_m: f64,
}

/// Swaps `2k <-> 2k+1`.
#[inline]
fn flip_positive(x: u8) -> u8 {
    x ^ 1
}

/// Swaps `2k-1 <-> 2k`, i.e. `F1(x + 1) - 1`, saturating so 0 and 255 stay put.
#[inline]
fn flip_negative(x: u8) -> u8 {
    let shifted = (i16::from(x) + 1) ^ 1;
    (shifted - 1).clamp(0, 255) as u8
}

#[inline]
fn flip(x: u8, how: i8) -> u8 {
    match how {
        1 => flip_positive(x),
        -1 => flip_negative(x),
        _ => x,
    }
}

fn smoothness(group: &[u8]) -> u32 {
    group
        .windows(2)
        .map(|p| u32::from(p[0].abs_diff(p[1])))
        .sum()
}

#[derive(Default)]
struct Tally {
    regular: u64,
    singular: u64,
}

impl Tally {
    fn classify(&mut self, group: &[u8], mask: &[i8], scratch: &mut Vec<u8>) {
        scratch.clear();
        scratch.extend(group.iter().zip(mask).map(|(&x, &m)| flip(x, m)));
        let (before, after) = (smoothness(group), smoothness(scratch));
        if after > before {
            self.regular += 1;
        } else if after < before {
            self.singular += 1;
        }
    }
}

pub fn rs_analysis(img: &GrayImage, mask: &RsMask) -> Result<RsStatistics, AnalysisError> {
    let n = mask.len();
    if img.width() < n || img.height() == 0 {
        return Err(AnalysisError::TooSmall {
            width: img.width(),
            height: img.height(),
            min_width: n,
            min_height: 1,
        });
    }
    let negated = mask.negated();
    let (mut pos, mut neg) = (Tally::default(), Tally::default());
    let mut scratch = Vec::with_capacity(n);
    let mut groups = 0u64;
    for row in img.rows() {
        for group in row.chunks_exact(n) {
            pos.classify(group, mask.entries(), &mut scratch);
            neg.classify(group, negated.entries(), &mut scratch);
            groups += 1;
        }
    }
    let frac = |count: u64| count as f64 / groups as f64;
    Ok(RsStatistics {
        r_m: frac(pos.regular),
        s_m: frac(pos.singular),
        r_neg_m: frac(neg.regular),
        s_neg_m: frac(neg.singular),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn flips_are_involutions_on_interior() {
        for x in 0..=255u8 {
            assert_eq!(flip_positive(flip_positive(x)), x);
            if (1..=254).contains(&x) {
                assert_eq!(flip_negative(flip_negative(x)), x);
                assert_eq!(flip_negative(x).abs_diff(x), 1);
            }
        }
        assert_eq!(flip_negative(1), 2);
        assert_eq!(flip_negative(2), 1);
        assert_eq!(flip_negative(0), 0);
        assert_eq!(flip_negative(255), 255);
    }

    #[test]
    fn constant_even_image_is_regular() {
        let img = GrayImage::filled(16, 8, 120);
        let stats = rs_analysis(&img, &RsMask::default()).unwrap();
        assert_eq!(stats.r_m, 1.0);
        assert_eq!(stats.s_m, 0.0);
    }

    #[test]
    fn zero_mask_leaves_everything_unusable() {
        let img = GrayImage::from_fn(12, 5, |r, c| (r * 31 + c * 17) as u8);
        let mask = RsMask::new(vec![0, 0, 0]).unwrap();
        let stats = rs_analysis(&img, &mask).unwrap();
        assert_eq!(
            (stats.r_m, stats.s_m, stats.r_neg_m, stats.s_neg_m),
            (0.0, 0.0, 0.0, 0.0)
        );
    }

    #[test]
    fn mask_parsing() {
        assert_eq!("0110".parse::<RsMask>().unwrap(), RsMask::default());
        assert_eq!(
            "0,-1,1,0".parse::<RsMask>().unwrap().entries(),
            &[0, -1, 1, 0]
        );
        assert!("0120".parse::<RsMask>().is_err());
        assert!("0".parse::<RsMask>().is_err());
        assert!("0,2".parse::<RsMask>().is_err());
        assert_eq!(RsMask::default().negated().to_string(), "0,-1,-1,0");
    }

    #[test]
    fn too_narrow() {
        assert!(rs_analysis(&GrayImage::filled(3, 3, 0), &RsMask::default()).is_err());
    }

    proptest! {
        #[test]
        fn fractions_bounded(w in 4usize..30, h in 1usize..10, px in prop::collection::vec(any::<u8>(), 300)) {
            let img = GrayImage::from_fn(w, h, |r, c| px[r * 30 + c]);
            let s = rs_analysis(&img, &RsMask::default()).unwrap();
            for f in [s.r_m, s.s_m, s.r_neg_m, s.s_neg_m] {
                prop_assert!((0.0..=1.0).contains(&f));
            }
            prop_assert!(s.r_m + s.s_m <= 1.0 + 1e-12);
            prop_assert!(s.r_neg_m + s.s_neg_m <= 1.0 + 1e-12);
        }
    }
}
