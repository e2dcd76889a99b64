//! 8-neighbor local binary pattern of a reference pixel.
//!
//! Neighbors are visited starting at the right-hand pixel and moving
//! counterclockwise. The first neighbor owns bit 7 and the last (lower-right)
//! owns bit 0, so the code's most significant bit describes the same pixel
//! that later carries the most significant shuffled payload bit.

use std::fmt;

use thiserror::Error;

use crate::image::GrayImage;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LbpError {
    #[error("pixel ({row}, {col}) lacks a full 3x3 neighborhood in a {width}x{height} image")]
    OutOfBounds {
        row: usize,
        col: usize,
        width: usize,
        height: usize,
    },
}

/// `(row delta, col delta)` of each neighbor, in bit order 7 down to 0:
/// right, upper-right, up, upper-left, left, lower-left, down, lower-right.
pub const NEIGHBOR_ORDER: [(isize, isize); 8] = [
    (0, 1),
    (-1, 1),
    (-1, 0),
    (-1, -1),
    (0, -1),
    (1, -1),
    (1, 0),
    (1, 1),
];

/// Index into a row-major 3x3 block of each neighbor in [`NEIGHBOR_ORDER`].
pub const BLOCK_NEIGHBORS: [usize; 8] = [5, 2, 1, 0, 3, 6, 7, 8];

/// Index of the reference pixel inside a row-major 3x3 block.
pub const BLOCK_CENTER: usize = 4;

/// An 8-bit comparison pattern; bit `7 - q` is set iff center >= neighbor `q`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct LbpCode(pub u8);

impl LbpCode {
    /// Encodes a center against its neighbors given in [`NEIGHBOR_ORDER`].
    #[inline]
    pub fn from_neighbors(center: u8, neighbors: [u8; 8]) -> Self {
        let mut bits = 0u8;
        for (q, &n) in neighbors.iter().enumerate() {
            bits |= u8::from(center >= n) << (7 - q);
        }
        LbpCode(bits)
    }

    /// Code of the center of a row-major 3x3 block.
    #[inline]
    pub fn of_block(block: &[u8; 9]) -> Self {
        Self::from_neighbors(block[BLOCK_CENTER], BLOCK_NEIGHBORS.map(|i| block[i]))
    }

    /// Comparison bit for neighbor `q` (0 = right).
    #[inline]
    pub fn bit_for(self, q: usize) -> bool {
        (self.0 >> (7 - q)) & 1 == 1
    }

    pub fn bits(self) -> u8 {
        self.0
    }
}

impl fmt::Debug for LbpCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LbpCode({:#010b})", self.0)
    }
}

/// LBP of the pixel at `(center_row, center_col)`.
pub fn lbp_code(
    img: &GrayImage,
    center_row: usize,
    center_col: usize,
) -> Result<LbpCode, LbpError> {
    if center_row == 0
        || center_col == 0
        || center_row + 1 >= img.height()
        || center_col + 1 >= img.width()
    {
        return Err(LbpError::OutOfBounds {
            row: center_row,
            col: center_col,
            width: img.width(),
            height: img.height(),
        });
    }
    let neighbors = NEIGHBOR_ORDER.map(|(dr, dc)| {
        img.get(
            center_row.wrapping_add_signed(dr),
            center_col.wrapping_add_signed(dc),
        )
    });
    Ok(LbpCode::from_neighbors(
        img.get(center_row, center_col),
        neighbors,
    ))
}
