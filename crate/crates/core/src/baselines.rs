//! Classic spatial-domain embedders used as comparison points: k-bit LSB
//! replacement, LSB matching (±1), and LSB matching revisited on pixel pairs.
//!
//! Pixels are traversed row-major. Bits are plain `bool`s; use
//! [`bytes_to_bits`] / [`bits_to_bytes`] to move between bytes (MSB first).

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::image::GrayImage;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BaselineError {
    #[error("{bits} bits exceed the method capacity of {capacity}")]
    Capacity { bits: usize, capacity: usize },
    #[error("LSB replacement depth must be 1..=4, got {0}")]
    InvalidDepth(u8),
    #[error("unknown baseline method {0:?}")]
    UnknownMethod(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaselineKind {
    /// Overwrite the `k` least significant bits.
    LsbReplace(u8),
    /// Leave matching pixels alone, otherwise step ±1 at random.
    LsbMatch,
    /// Two bits per pixel pair, at most one pixel changed by 1.
    Lsbmr,
}

/// A baseline method plus the seed driving its random ±1 choices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BaselineMethod {
    pub kind: BaselineKind,
    pub seed: u64,
}

impl BaselineMethod {
    pub fn new(kind: BaselineKind, seed: u64) -> Result<Self, BaselineError> {
        if let BaselineKind::LsbReplace(k) = kind {
            if !(1..=4).contains(&k) {
                return Err(BaselineError::InvalidDepth(k));
            }
        }
        Ok(Self { kind, seed })
    }

    /// Bits the method can hide in `cover`.
    pub fn capacity(&self, cover: &GrayImage) -> usize {
        let pixels = cover.pixel_count();
        match self.kind {
            BaselineKind::LsbReplace(k) => usize::from(k) * pixels,
            BaselineKind::LsbMatch => pixels,
            BaselineKind::Lsbmr => pixels - pixels % 2,
        }
    }
}

impl fmt::Display for BaselineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaselineKind::LsbReplace(k) => write!(f, "lsb{k}"),
            BaselineKind::LsbMatch => f.write_str("lsbm"),
            BaselineKind::Lsbmr => f.write_str("lsbmr"),
        }
    }
}

impl FromStr for BaselineKind {
    type Err = BaselineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lsbm" => Ok(BaselineKind::LsbMatch),
            "lsbmr" => Ok(BaselineKind::Lsbmr),
            _ => {
                let k = s
                    .strip_prefix("lsb")
                    .and_then(|d| d.parse::<u8>().ok())
                    .ok_or_else(|| BaselineError::UnknownMethod(s.to_owned()))?;
                if (1..=4).contains(&k) {
                    Ok(BaselineKind::LsbReplace(k))
                } else {
                    Err(BaselineError::InvalidDepth(k))
                }
            }
        }
    }
}

pub fn bytes_to_bits(bytes: &[u8]) -> Vec<bool> {
    bytes
        .iter()
        .flat_map(|&b| (0..8).rev().map(move |n| (b >> n) & 1 == 1))
        .collect()
}

/// Packs bits MSB first; a trailing partial byte is zero-filled.
pub fn bits_to_bytes(bits: &[bool]) -> Vec<u8> {
    bits.chunks(8)
        .map(|chunk| {
            chunk
                .iter()
                .enumerate()
                .fold(0u8, |acc, (i, &b)| acc | (u8::from(b) << (7 - i)))
        })
        .collect()
}

#[inline]
fn lsb(x: u8) -> bool {
    x & 1 == 1
}

/// ±1 chosen at random, forced inward at the ends of the range.
fn random_step(x: u8, rng: &mut ChaCha8Rng) -> u8 {
    match x {
        0 => 1,
        255 => 254,
        _ if rng.random::<bool>() => x + 1,
        _ => x - 1,
    }
}

/// The second LSBMR bit of a pixel pair.
#[inline]
fn pair_bit(first: u8, second: u8) -> bool {
    lsb(((u16::from(first) / 2 + u16::from(second)) & 1) as u8)
}

pub fn baseline_embed(
    cover: &GrayImage,
    bits: &[bool],
    method: BaselineMethod,
) -> Result<GrayImage, BaselineError> {
    let capacity = method.capacity(cover);
    if bits.len() > capacity {
        return Err(BaselineError::Capacity {
            bits: bits.len(),
            capacity,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(method.seed);
    let mut px = cover.clone().into_pixels();
    match method.kind {
        BaselineKind::LsbReplace(k) => {
            let k = usize::from(k);
            for (pixel, chunk) in px.iter_mut().zip(bits.chunks(k)) {
                for (i, &bit) in chunk.iter().enumerate() {
                    let pos = k - 1 - i;
                    *pixel = (*pixel & !(1 << pos)) | (u8::from(bit) << pos);
                }
            }
        }
        BaselineKind::LsbMatch => {
            for (pixel, &bit) in px.iter_mut().zip(bits) {
                if lsb(*pixel) != bit {
                    *pixel = random_step(*pixel, &mut rng);
                }
            }
        }
        BaselineKind::Lsbmr => {
            for (pair, chunk) in px.chunks_exact_mut(2).zip(bits.chunks(2)) {
                match *chunk {
                    [m1, m2] => lsbmr_pair(pair, m1, m2, &mut rng),
                    [m1] => {
                        if lsb(pair[0]) != m1 {
                            pair[0] = random_step(pair[0], &mut rng);
                        }
                    }
                    _ => unreachable!(),
                }
            }
        }
    }
    Ok(GrayImage::new(cover.width(), cover.height(), px).expect("dimensions unchanged"))
}

/// Embeds `(m1, m2)` into a pixel pair so that `LSB(x1) == m1` and
/// `LSB(x1/2 + x2) == m2`, changing at most one pixel by one in the interior
/// and each pixel by at most one at the range ends.
fn lsbmr_pair(pair: &mut [u8], m1: bool, m2: bool, rng: &mut ChaCha8Rng) {
    let (x1, x2) = (pair[0], pair[1]);
    if lsb(x1) == m1 {
        if pair_bit(x1, x2) != m2 {
            pair[1] = random_step(x2, rng);
        }
        return;
    }
    // x1 - 1 and x1 + 1 both fix the first bit; exactly one fixes the second
    let down_works = x1 > 0 && pair_bit(x1 - 1, x2) == m2;
    let up_works = x1 < 255 && pair_bit(x1 + 1, x2) == m2;
    if down_works {
        pair[0] = x1 - 1;
    } else if up_works {
        pair[0] = x1 + 1;
    } else {
        // the useful direction leaves the range: step inward, then repair with x2
        pair[0] = if x1 == 0 { 1 } else { 254 };
        if pair_bit(pair[0], x2) != m2 {
            pair[1] = random_step(x2, rng);
        }
    }
}

pub fn baseline_extract(
    stego: &GrayImage,
    bit_count: usize,
    method: BaselineMethod,
) -> Result<Vec<bool>, BaselineError> {
    let capacity = method.capacity(stego);
    if bit_count > capacity {
        return Err(BaselineError::Capacity {
            bits: bit_count,
            capacity,
        });
    }
    let px = stego.pixels();
    let mut bits = Vec::with_capacity(bit_count);
    match method.kind {
        BaselineKind::LsbReplace(k) => {
            let k = usize::from(k);
            'outer: for &pixel in px {
                for pos in (0..k).rev() {
                    if bits.len() == bit_count {
                        break 'outer;
                    }
                    bits.push((pixel >> pos) & 1 == 1);
                }
            }
        }
        BaselineKind::LsbMatch => bits.extend(px.iter().take(bit_count).map(|&p| lsb(p))),
        BaselineKind::Lsbmr => {
            for pair in px.chunks_exact(2) {
                for bit in [lsb(pair[0]), pair_bit(pair[0], pair[1])] {
                    if bits.len() < bit_count {
                        bits.push(bit);
                    }
                }
            }
        }
    }
    Ok(bits)
}
