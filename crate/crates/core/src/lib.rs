//! Blind grayscale steganography that preserves the cover's local binary
//! patterns, plus the tools to judge it.
//!
//! * [`codec`] hides a payload image in the 3x3 blocks of a cover and reads
//!   it back from the stego image alone.
//! * [`lbp`] computes the 8-neighbor pattern the embedder keeps intact.
//! * [`analysis`] measures PSNR, the universal quality index, histograms,
//!   pixel-difference histograms and RS statistics, and writes CSV.
//! * [`baselines`] provides LSB replacement, LSB matching and LSB matching
//!   revisited for comparison, driven by [`sweep`].
//!
//! ```
//! use lbpstego::{codec, synthetic, StegoParams};
//!
//! let cover = synthetic::natural_image(96, 96, 1);
//! let payload = synthetic::natural_image(20, 20, 2);
//! let params = StegoParams::new(2).unwrap();
//! let stego = codec::embed(&cover, &payload, params).unwrap();
//! assert_eq!(codec::extract(&stego, params).unwrap(), payload);
//! ```

pub mod analysis;
pub mod baselines;
pub mod codec;
pub mod image;
pub mod lbp;
pub mod sweep;
pub mod synthetic;

pub use codec::{StegoError, StegoParams};
pub use image::{read_pgm, write_pgm, GrayImage, PgmError};
pub use lbp::{lbp_code, LbpCode};
