//! LBP-preserving embedding and blind extraction.
//!
//! The cover is tiled into non-overlapping 3x3 blocks visited row-major. Each
//! block carries `mu` stream bytes. A byte is XOR-masked with the block's LBP
//! code, its adjacent bit pairs are swapped, and the resulting bits are
//! written into the `mu` least significant bits of the eight neighbors. The
//! reference pixel is never touched and a final ±2^mu correction keeps every
//! neighbor on the same side of the reference pixel, so the LBP code can be
//! recomputed from the stego image alone.
//!
//! # Stream layout
//!
//! ```text
//! rows: u16 BE | cols: u16 BE | payload pixels, row-major | zero padding
//! ```
//!
//! Padding fills the final block only. `mu` is not stored; it acts as a
//! shared key.

use thiserror::Error;

use crate::image::GrayImage;
use crate::lbp::{LbpCode, BLOCK_CENTER, BLOCK_NEIGHBORS};

/// Bytes of framing in front of the payload pixels.
pub const HEADER_LEN: usize = 4;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StegoError {
    #[error("mu must be between 1 and 4, got {0}")]
    InvalidMu(u8),
    #[error("cover {width}x{height} is smaller than one 3x3 block")]
    CoverTooSmall { width: usize, height: usize },
    #[error("payload needs {needed} stream bytes but the cover holds {available}")]
    Capacity { needed: usize, available: usize },
    #[error("payload dimensions {width}x{height} do not fit the 16-bit header")]
    PayloadDimensions { width: usize, height: usize },
    #[error("corrupt stego stream: {0}")]
    CorruptStream(String),
    #[error("block pixel {value} lies outside the clamp range [{low}, {high}]")]
    Unclamped { value: u8, low: u8, high: u8 },
    #[error("a block carries exactly {expected} bytes, got {actual}")]
    BlockBytes { expected: usize, actual: usize },
}

/// Number of bits inserted into each neighbor pixel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StegoParams {
    mu: u8,
}

impl StegoParams {
    pub fn new(mu: u8) -> Result<Self, StegoError> {
        if (1..=4).contains(&mu) {
            Ok(Self { mu })
        } else {
            Err(StegoError::InvalidMu(mu))
        }
    }

    pub fn mu(self) -> u8 {
        self.mu
    }

    /// `2^mu`, the sync correction step.
    pub fn step(self) -> u8 {
        1 << self.mu
    }

    /// Mask covering the inserted low bits.
    pub fn low_mask(self) -> u8 {
        self.step() - 1
    }

    /// Stream bytes consumed per block.
    pub fn bytes_per_block(self) -> usize {
        usize::from(self.mu)
    }

    /// Range every non-reference pixel is clamped into before embedding.
    pub fn clamp_range(self) -> (u8, u8) {
        (self.step(), 255 - self.step())
    }
}

/// Non-overlapping 3x3 tiling of an image. Partial tiles on the right and
/// bottom edges are not part of the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockGrid {
    pub block_rows: usize,
    pub block_cols: usize,
}

impl BlockGrid {
    pub fn of(img: &GrayImage) -> Self {
        Self {
            block_rows: img.height() / 3,
            block_cols: img.width() / 3,
        }
    }

    pub fn len(&self) -> usize {
        self.block_rows * self.block_cols
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Image coordinates of the reference pixel of the `index`-th block in
    /// row-major order.
    pub fn reference(&self, index: usize) -> (usize, usize) {
        let (k, l) = (index / self.block_cols, index % self.block_cols);
        (3 * k + 1, 3 * l + 1)
    }

    pub fn read_block(&self, img: &GrayImage, index: usize) -> [u8; 9] {
        let (r, c) = self.reference(index);
        let mut block = [0u8; 9];
        for (i, px) in block.iter_mut().enumerate() {
            *px = img.get(r + i / 3 - 1, c + i % 3 - 1);
        }
        block
    }

    pub fn write_block(&self, img: &mut GrayImage, index: usize, block: &[u8; 9]) {
        let (r, c) = self.reference(index);
        for (i, &px) in block.iter().enumerate() {
            img.set(r + i / 3 - 1, c + i % 3 - 1, px);
        }
    }
}

/// Total stream bytes (header included) the cover can carry.
pub fn capacity(cover: &GrayImage, params: StegoParams) -> usize {
    BlockGrid::of(cover).len() * params.bytes_per_block()
}

/// Largest payload, in pixels, that fits alongside the header.
pub fn max_payload_bytes(cover: &GrayImage, params: StegoParams) -> usize {
    capacity(cover, params).saturating_sub(HEADER_LEN)
}

/// Blocks needed to carry `stream_len` bytes.
pub fn blocks_for(stream_len: usize, params: StegoParams) -> usize {
    stream_len.div_ceil(params.bytes_per_block())
}

/// Header followed by the payload pixels, unpadded.
pub fn frame_payload(payload: &GrayImage) -> Result<Vec<u8>, StegoError> {
    let (w, h) = (payload.width(), payload.height());
    let (Ok(cols), Ok(rows)) = (u16::try_from(w), u16::try_from(h)) else {
        return Err(StegoError::PayloadDimensions {
            width: w,
            height: h,
        });
    };
    if rows == 0 || cols == 0 {
        return Err(StegoError::PayloadDimensions {
            width: w,
            height: h,
        });
    }
    let mut stream = Vec::with_capacity(HEADER_LEN + payload.pixel_count());
    stream.extend_from_slice(&rows.to_be_bytes());
    stream.extend_from_slice(&cols.to_be_bytes());
    stream.extend_from_slice(payload.pixels());
    Ok(stream)
}

/// Clamps the non-reference pixels of the first `used_blocks` blocks into
/// `[2^mu, 255 - 2^mu]`, which guarantees the sync step always has a
/// solution inside `[0, 255]`.
pub fn clamp_cover(
    img: &GrayImage,
    grid: BlockGrid,
    used_blocks: usize,
    params: StegoParams,
) -> GrayImage {
    assert!(
        used_blocks <= grid.len(),
        "more blocks requested than the grid holds"
    );
    let mut out = img.clone();
    for index in 0..used_blocks {
        let mut block = grid.read_block(img, index);
        clamp_block(&mut block, params);
        grid.write_block(&mut out, index, &block);
    }
    out
}

fn clamp_block(block: &mut [u8; 9], params: StegoParams) {
    let (low, high) = params.clamp_range();
    for &i in &BLOCK_NEIGHBORS {
        block[i] = block[i].clamp(low, high);
    }
}

#[inline]
pub fn mask_byte(lbp: LbpCode, p: u8) -> u8 {
    lbp.bits() ^ p
}

/// A byte whose adjacent bit pairs (0,1), (2,3), (4,5), (6,7) have been swapped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ShuffledByte(pub u8);

#[inline]
pub fn shuffle_byte(x: u8) -> ShuffledByte {
    ShuffledByte(((x & 0x55) << 1) | ((x & 0xAA) >> 1))
}

/// Inverse of [`shuffle_byte`]; the pair swap is its own inverse.
#[inline]
pub fn unshuffle_byte(y: ShuffledByte) -> u8 {
    shuffle_byte(y.0).0
}

/// Restores the ordering between `center` and a neighbor after its low bits
/// were replaced.
///
/// `original` is the (clamped) cover value of the neighbor and `stego` the
/// value after substitution. When the substitution flipped the center's
/// `>=` / `<` relation to the neighbor, the neighbor moves by `2^mu` back
/// across the center; the low `mu` bits are unaffected.
#[inline]
pub fn sync(center: u8, original: u8, stego: u8, params: StegoParams) -> i16 {
    let step = i16::from(params.step());
    let s = i16::from(stego);
    if center >= original && center < stego {
        s - step
    } else if center < original && center >= stego {
        s + step
    } else {
        s
    }
}

/// Embeds `bytes` (exactly `mu` of them) into one row-major 3x3 block whose
/// neighbors are already clamped.
///
/// Neighbor `q` (0 = right, counterclockwise) receives bit `7 - q` of each
/// shuffled byte `Y_t`, with `Y_0` in the highest inserted position.
pub fn embed_block(
    block: &[u8; 9],
    bytes: &[u8],
    params: StegoParams,
) -> Result<[u8; 9], StegoError> {
    let mu = params.bytes_per_block();
    if bytes.len() != mu {
        return Err(StegoError::BlockBytes {
            expected: mu,
            actual: bytes.len(),
        });
    }
    let (low, high) = params.clamp_range();
    if let Some(&value) = BLOCK_NEIGHBORS
        .iter()
        .map(|&i| &block[i])
        .find(|v| !(low..=high).contains(*v))
    {
        return Err(StegoError::Unclamped { value, low, high });
    }

    let lbp = LbpCode::of_block(block);
    let mut shuffled = [0u8; 4];
    for (y, &p) in shuffled.iter_mut().zip(bytes) {
        *y = shuffle_byte(mask_byte(lbp, p)).0;
    }

    let center = block[BLOCK_CENTER];
    let mut out = *block;
    for (q, &i) in BLOCK_NEIGHBORS.iter().enumerate() {
        let inserted = inserted_bits(&shuffled[..mu], q);
        let substituted = (block[i] & !params.low_mask()) | inserted;
        let synced = sync(center, block[i], substituted, params);
        out[i] = u8::try_from(synced).map_err(|_| StegoError::Unclamped {
            value: block[i],
            low,
            high,
        })?;
    }
    Ok(out)
}

/// The `mu` bits neighbor `q` carries, highest inserted position first.
#[inline]
fn inserted_bits(shuffled: &[u8], q: usize) -> u8 {
    shuffled
        .iter()
        .fold(0u8, |acc, &y| (acc << 1) | ((y >> (7 - q)) & 1))
}

/// Reads the `mu` bytes carried by one stego block.
pub fn extract_block(block: &[u8; 9], params: StegoParams, out: &mut [u8]) {
    let mu = params.bytes_per_block();
    debug_assert_eq!(out.len(), mu);
    let lbp = LbpCode::of_block(block);
    let mut shuffled = [0u8; 4];
    for (q, &i) in BLOCK_NEIGHBORS.iter().enumerate() {
        let low = block[i] & params.low_mask();
        for (t, y) in shuffled[..mu].iter_mut().enumerate() {
            let bit = (low >> (mu - 1 - t)) & 1;
            *y |= bit << (7 - q);
        }
    }
    for (o, &y) in out.iter_mut().zip(&shuffled) {
        *o = mask_byte(lbp, unshuffle_byte(ShuffledByte(y)));
    }
}

/// Embeds a raw byte stream, zero-padding the final block. Blocks past the
/// stream are left untouched.
pub fn embed_stream(
    cover: &GrayImage,
    stream: &[u8],
    params: StegoParams,
) -> Result<GrayImage, StegoError> {
    let grid = BlockGrid::of(cover);
    if grid.is_empty() {
        return Err(StegoError::CoverTooSmall {
            width: cover.width(),
            height: cover.height(),
        });
    }
    let available = capacity(cover, params);
    if stream.len() > available {
        return Err(StegoError::Capacity {
            needed: stream.len(),
            available,
        });
    }
    let mu = params.bytes_per_block();
    let mut stego = cover.clone();
    for (index, chunk) in stream.chunks(mu).enumerate() {
        let mut bytes = [0u8; 4];
        bytes[..chunk.len()].copy_from_slice(chunk);
        let mut block = grid.read_block(cover, index);
        clamp_block(&mut block, params);
        let out = embed_block(&block, &bytes[..mu], params)?;
        grid.write_block(&mut stego, index, &out);
    }
    Ok(stego)
}

/// Reads the first `len` stream bytes out of a stego image.
pub fn extract_stream(
    stego: &GrayImage,
    params: StegoParams,
    len: usize,
) -> Result<Vec<u8>, StegoError> {
    let grid = BlockGrid::of(stego);
    let available = capacity(stego, params);
    if len > available {
        return Err(StegoError::Capacity {
            needed: len,
            available,
        });
    }
    let mu = params.bytes_per_block();
    let mut stream = vec![0u8; blocks_for(len, params) * mu];
    for (index, out) in stream.chunks_mut(mu).enumerate() {
        extract_block(&grid.read_block(stego, index), params, out);
    }
    stream.truncate(len);
    Ok(stream)
}

/// Hides `payload` inside `cover`.
pub fn embed(
    cover: &GrayImage,
    payload: &GrayImage,
    params: StegoParams,
) -> Result<GrayImage, StegoError> {
    if BlockGrid::of(cover).is_empty() {
        return Err(StegoError::CoverTooSmall {
            width: cover.width(),
            height: cover.height(),
        });
    }
    let stream = frame_payload(payload)?;
    embed_stream(cover, &stream, params)
}

/// Recovers the payload image from a stego image without the cover.
pub fn extract(stego: &GrayImage, params: StegoParams) -> Result<GrayImage, StegoError> {
    let available = capacity(stego, params);
    if available < HEADER_LEN {
        return Err(StegoError::CorruptStream(format!(
            "image holds {available} stream bytes, fewer than the header"
        )));
    }
    let header = extract_stream(stego, params, HEADER_LEN)?;
    let rows = usize::from(u16::from_be_bytes([header[0], header[1]]));
    let cols = usize::from(u16::from_be_bytes([header[2], header[3]]));
    if rows == 0 || cols == 0 {
        return Err(StegoError::CorruptStream(format!(
            "header declares a {cols}x{rows} payload"
        )));
    }
    let needed = HEADER_LEN + rows * cols;
    if needed > available {
        return Err(StegoError::CorruptStream(format!(
            "header declares {cols}x{rows} payload needing {needed} bytes, image holds {available}"
        )));
    }
    let mut stream = extract_stream(stego, params, needed)?;
    let pixels = stream.split_off(HEADER_LEN);
    GrayImage::new(cols, rows, pixels).map_err(|e| StegoError::CorruptStream(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lbp::lbp_code;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mu(m: u8) -> StegoParams {
        StegoParams::new(m).unwrap()
    }

    /// Independent per-bit statement of the pair swap.
    fn shuffle_oracle(x: u8) -> u8 {
        let bit = |n: u32| (x >> n) & 1;
        let map = [1, 0, 3, 2, 5, 4, 7, 6];
        (0..8).fold(0, |acc, n| acc | (bit(map[n as usize]) << n))
    }

    #[test]
    fn params_range() {
        assert_eq!(StegoParams::new(0), Err(StegoError::InvalidMu(0)));
        assert_eq!(StegoParams::new(5), Err(StegoError::InvalidMu(5)));
        assert_eq!(mu(4).step(), 16);
        assert_eq!(mu(4).clamp_range(), (16, 239));
    }

    #[test]
    fn clamp_examples() {
        let img = GrayImage::new(3, 3, vec![0, 255, 100, 0, 50, 5, 250, 255, 2]).unwrap();
        let grid = BlockGrid::of(&img);
        let c1 = clamp_cover(&img, grid, 1, mu(1));
        assert_eq!(c1.pixels(), &[2, 253, 100, 2, 50, 5, 250, 253, 2]);
        let c4 = clamp_cover(&img, grid, 1, mu(4));
        assert_eq!(c4.pixels(), &[16, 239, 100, 16, 50, 16, 239, 239, 16]);
        // the reference pixel is never clamped
        let dark_center = GrayImage::new(3, 3, vec![0; 9]).unwrap();
        assert_eq!(clamp_cover(&dark_center, grid, 1, mu(1)).get(1, 1), 0);
    }

    #[test]
    fn clamp_identity_and_unused_blocks() {
        let img = GrayImage::from_fn(9, 6, |r, c| (16 + (r * 9 + c) * 4) as u8);
        assert_eq!(clamp_cover(&img, BlockGrid::of(&img), 6, mu(4)), img);

        let dark = GrayImage::filled(9, 3, 0);
        let clamped = clamp_cover(&dark, BlockGrid::of(&dark), 1, mu(2));
        assert_eq!(clamped.get(0, 0), 4);
        assert_eq!(clamped.get(0, 3), 0);
        assert_eq!(clamped.get(2, 8), 0);
    }

    #[test]
    fn mask_examples() {
        assert_eq!(mask_byte(LbpCode(0xB6), 0x5A), 0xB6 ^ 0x5A);
        assert_eq!(mask_byte(LbpCode(0xB6), 0x5A), 0xEC);
        assert_eq!(mask_byte(LbpCode(0x00), 0x7F), 0x7F);
        assert_eq!(mask_byte(LbpCode(0xFF), 0xFF), 0x00);
        for lbp in 0..=255u8 {
            for p in 0..=255u8 {
                assert_eq!(mask_byte(LbpCode(lbp), mask_byte(LbpCode(lbp), p)), p);
            }
        }
    }

    #[test]
    fn shuffle_examples() {
        assert_eq!(shuffle_oracle(0xEC), 0xDC);
        assert_eq!(shuffle_byte(0xEC), ShuffledByte(0xDC));
        assert_eq!(shuffle_byte(0x00), ShuffledByte(0x00));
        assert_eq!(shuffle_byte(0xFF), ShuffledByte(0xFF));
        assert_eq!(unshuffle_byte(ShuffledByte(0xDC)), 0xEC);
        assert_eq!(unshuffle_byte(ShuffledByte(0x00)), 0x00);
        for b in 0..=255u8 {
            assert_eq!(shuffle_byte(b).0, shuffle_oracle(b));
            assert_eq!(shuffle_byte(shuffle_byte(b).0).0, b);
            assert_eq!(unshuffle_byte(shuffle_byte(b)), b);
        }
    }

    #[test]
    fn sync_branches() {
        // relation >= broken by substitution: pull down
        assert_eq!(sync(100, 100, 101, mu(1)), 99);
        // relation < broken by substitution: push up
        assert_eq!(sync(100, 101, 100, mu(1)), 102);
        // relation intact
        assert_eq!(sync(100, 98, 99, mu(1)), 99);
    }

    #[test]
    fn block_trace_pull_down() {
        // flat block: LBP 0xFF; payload 0x00 masks to 0xFF so every neighbor gets bit 1
        let block = [100u8; 9];
        let out = embed_block(&block, &[0x00], mu(1)).unwrap();
        assert_eq!(out, [99, 99, 99, 99, 100, 99, 99, 99, 99]);
        assert_eq!(LbpCode::of_block(&out), LbpCode(0xFF));
        let mut got = [0u8];
        extract_block(&out, mu(1), &mut got);
        assert_eq!(got, [0x00]);
    }

    #[test]
    fn block_trace_push_up() {
        // all neighbors 101: LBP 0x00; payload 0x00 inserts 0 everywhere
        let mut block = [101u8; 9];
        block[BLOCK_CENTER] = 100;
        let out = embed_block(&block, &[0x00], mu(1)).unwrap();
        let mut expected = [102u8; 9];
        expected[BLOCK_CENTER] = 100;
        assert_eq!(out, expected);
        let mut got = [0u8];
        extract_block(&out, mu(1), &mut got);
        assert_eq!(got, [0x00]);
    }

    #[test]
    fn block_bit_placement_mu1() {
        // right neighbor carries y^7, lower-right carries y^0
        let mut block = [50u8; 9];
        block[BLOCK_CENTER] = 200; // LBP 0xFF
        for p in [0x01u8, 0x80, 0x5A, 0xC3] {
            let y = shuffle_byte(p ^ 0xFF).0;
            let out = embed_block(&block, &[p], mu(1)).unwrap();
            for (q, &i) in BLOCK_NEIGHBORS.iter().enumerate() {
                assert_eq!(out[i] & 1, (y >> (7 - q)) & 1, "neighbor {q}");
                // far below the center, no sync needed
                assert_eq!(out[i] & !1, 50);
            }
        }
    }

    #[test]
    fn block_rejects_bad_input() {
        let mut block = [100u8; 9];
        assert_eq!(
            embed_block(&block, &[1, 2], mu(1)),
            Err(StegoError::BlockBytes {
                expected: 1,
                actual: 2
            })
        );
        block[0] = 1;
        assert!(matches!(
            embed_block(&block, &[1], mu(1)),
            Err(StegoError::Unclamped { value: 1, .. })
        ));
        // the center may sit anywhere
        let mut ok = [100u8; 9];
        ok[BLOCK_CENTER] = 255;
        assert!(embed_block(&ok, &[7], mu(1)).is_ok());
    }

    #[test]
    fn capacity_examples() {
        assert_eq!(capacity(&GrayImage::filled(512, 512, 0), mu(1)), 28900);
        assert_eq!(capacity(&GrayImage::filled(512, 512, 0), mu(4)), 115600);
        assert_eq!(
            max_payload_bytes(&GrayImage::filled(512, 512, 0), mu(1)),
            28896
        );
        for m in 1..=4 {
            assert_eq!(capacity(&GrayImage::filled(2, 2, 0), mu(m)), 0);
        }
        assert_eq!(capacity(&GrayImage::filled(10, 7, 0), mu(3)), 3 * 2 * 3);
    }

    #[test]
    fn small_payload_touches_only_needed_blocks() {
        let cover = GrayImage::from_fn(9, 9, |r, c| (40 + r * 13 + c * 7) as u8);
        let payload = GrayImage::new(1, 1, vec![0xA7]).unwrap();
        let stego = embed(&cover, &payload, mu(1)).unwrap();
        let grid = BlockGrid::of(&cover);
        assert_eq!(blocks_for(HEADER_LEN + 1, mu(1)), 5);
        for index in 5..9 {
            assert_eq!(
                grid.read_block(&stego, index),
                grid.read_block(&cover, index)
            );
        }
        assert_eq!(extract(&stego, mu(1)).unwrap(), payload);
    }

    #[test]
    fn zero_payload_round_trip() {
        let cover = GrayImage::from_fn(30, 24, |r, c| ((r * 37 + c * 11) % 256) as u8);
        let payload = GrayImage::filled(5, 3, 0);
        for m in 1..=4 {
            let stego = embed(&cover, &payload, mu(m)).unwrap();
            assert_eq!(extract(&stego, mu(m)).unwrap(), payload);
        }
    }

    #[test]
    fn embed_errors() {
        let payload = GrayImage::filled(1, 1, 0);
        assert_eq!(
            embed(&GrayImage::filled(2, 5, 0), &payload, mu(1)),
            Err(StegoError::CoverTooSmall {
                width: 2,
                height: 5
            })
        );
        // 3x3 cover holds one byte at mu=1, far short of the header
        assert_eq!(
            embed(&GrayImage::filled(3, 3, 0), &payload, mu(1)),
            Err(StegoError::Capacity {
                needed: 5,
                available: 1
            })
        );
        let wide = GrayImage::filled(65536, 1, 0);
        assert!(matches!(
            embed(&GrayImage::filled(3, 3, 0), &wide, mu(1)),
            Err(StegoError::PayloadDimensions { .. })
        ));
    }

    #[test]
    fn extract_rejects_zero_header() {
        let blank = GrayImage::filled(30, 30, 0);
        assert!(matches!(
            extract(&blank, mu(1)),
            Err(StegoError::CorruptStream(_))
        ));
        assert!(matches!(
            extract(&GrayImage::filled(3, 3, 0), mu(1)),
            Err(StegoError::CorruptStream(_))
        ));
    }

    #[test]
    fn replayed_trace_blocks_decode() {
        // stitch the two hand-traced blocks into one image and read them back
        let a = embed_block(&[100u8; 9], &[0x00], mu(1)).unwrap();
        let mut up = [101u8; 9];
        up[BLOCK_CENTER] = 100;
        let b = embed_block(&up, &[0x00], mu(1)).unwrap();
        let mut img = GrayImage::filled(6, 3, 0);
        let grid = BlockGrid::of(&img);
        grid.write_block(&mut img, 0, &a);
        grid.write_block(&mut img, 1, &b);
        assert_eq!(extract_stream(&img, mu(1), 2).unwrap(), vec![0x00, 0x00]);
    }

    proptest! {
        #[test]
        fn round_trip_and_lbp(
            w in 9usize..48, h in 9usize..48, m in 1u8..=4, seed in any::<u64>()
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let params = mu(m);
            let cover = GrayImage::from_fn(w, h, |_, _| rng.random());
            let max = max_payload_bytes(&cover, params);
            prop_assume!(max > 0);
            let payload = GrayImage::from_fn(max, 1, |_, _| rng.random());
            let stego = embed(&cover, &payload, params).unwrap();
            prop_assert_eq!(extract(&stego, params).unwrap(), payload);

            let grid = BlockGrid::of(&cover);
            let clamped = clamp_cover(&cover, grid, grid.len(), params);
            let bound = i16::from(params.step()) * 2 - 1;
            for index in 0..blocks_for(HEADER_LEN + max, params) {
                let (r, c) = grid.reference(index);
                prop_assert_eq!(lbp_code(&stego, r, c).unwrap(), lbp_code(&clamped, r, c).unwrap());
                prop_assert_eq!(stego.get(r, c), cover.get(r, c));
                for i in 0..9 {
                    let (pr, pc) = (r + i / 3 - 1, c + i % 3 - 1);
                    let d = i16::from(stego.get(pr, pc)) - i16::from(clamped.get(pr, pc));
                    prop_assert!(d.abs() <= bound);
                }
            }
        }
    }
}
