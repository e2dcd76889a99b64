//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each exported function has a plain Rust twin returning `Result<_, String>`
//! so the logic can be tested natively; the `#[wasm_bindgen]` wrappers only
//! convert errors.

use lbpstego::analysis::{histogram, pd_histogram, pearson, psnr, quality_index};
use lbpstego::sweep::fit_payload;
use lbpstego::{codec, synthetic, GrayImage, StegoParams};
use wasm_bindgen::prelude::*;

/// Half-width of the PDH window shown in the chart.
pub const PDH_RADIUS: i32 = 24;

#[wasm_bindgen]
pub struct Embedding {
    stego: Vec<u8>,
    diff: Vec<u8>,
    psnr: f64,
    q_index: f64,
    payload_width: usize,
    payload_height: usize,
    embedded_bits: u64,
}

#[wasm_bindgen]
impl Embedding {
    #[wasm_bindgen(getter)]
    pub fn stego(&self) -> Vec<u8> {
        self.stego.clone()
    }

    /// |stego - cover| stretched so the largest change is white.
    #[wasm_bindgen(getter)]
    pub fn diff(&self) -> Vec<u8> {
        self.diff.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn psnr(&self) -> f64 {
        self.psnr
    }

    #[wasm_bindgen(getter, js_name = qIndex)]
    pub fn q_index(&self) -> f64 {
        self.q_index
    }

    #[wasm_bindgen(getter, js_name = payloadWidth)]
    pub fn payload_width(&self) -> usize {
        self.payload_width
    }

    #[wasm_bindgen(getter, js_name = payloadHeight)]
    pub fn payload_height(&self) -> usize {
        self.payload_height
    }

    #[wasm_bindgen(getter, js_name = embeddedBits)]
    pub fn embedded_bits(&self) -> f64 {
        self.embedded_bits as f64
    }
}

#[wasm_bindgen]
pub struct Extracted {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

#[wasm_bindgen]
impl Extracted {
    #[wasm_bindgen(getter)]
    pub fn width(&self) -> usize {
        self.width
    }

    #[wasm_bindgen(getter)]
    pub fn height(&self) -> usize {
        self.height
    }

    #[wasm_bindgen(getter)]
    pub fn pixels(&self) -> Vec<u8> {
        self.pixels.clone()
    }
}

#[wasm_bindgen]
pub struct Curves {
    hist_cover: Vec<f64>,
    hist_stego: Vec<f64>,
    pdh_cover: Vec<f64>,
    pdh_stego: Vec<f64>,
    pdh_corr: f64,
}

#[wasm_bindgen]
impl Curves {
    #[wasm_bindgen(getter, js_name = histCover)]
    pub fn hist_cover(&self) -> Vec<f64> {
        self.hist_cover.clone()
    }

    #[wasm_bindgen(getter, js_name = histStego)]
    pub fn hist_stego(&self) -> Vec<f64> {
        self.hist_stego.clone()
    }

    /// Counts for differences `-PDH_RADIUS..=PDH_RADIUS`.
    #[wasm_bindgen(getter, js_name = pdhCover)]
    pub fn pdh_cover(&self) -> Vec<f64> {
        self.pdh_cover.clone()
    }

    #[wasm_bindgen(getter, js_name = pdhStego)]
    pub fn pdh_stego(&self) -> Vec<f64> {
        self.pdh_stego.clone()
    }

    /// Correlation of the full 511-bin difference histograms.
    #[wasm_bindgen(getter, js_name = pdhCorr)]
    pub fn pdh_corr(&self) -> f64 {
        self.pdh_corr
    }
}

fn image(pixels: &[u8], width: usize, height: usize) -> Result<GrayImage, String> {
    GrayImage::new(width, height, pixels.to_vec()).map_err(|e| e.to_string())
}

fn params(mu: u8) -> Result<StegoParams, String> {
    StegoParams::new(mu).map_err(|e| e.to_string())
}

pub fn synth_pixels(size: usize, seed: u32) -> Vec<u8> {
    synthetic::natural_image(size, size, u64::from(seed)).into_pixels()
}

#[allow(clippy::too_many_arguments)]
pub fn run_embed(
    cover: &[u8],
    width: usize,
    height: usize,
    payload: &[u8],
    payload_width: usize,
    payload_height: usize,
    mu: u8,
    rate: f64,
) -> Result<Embedding, String> {
    let cover = image(cover, width, height)?;
    let source = image(payload, payload_width, payload_height)?;
    let params = params(mu)?;
    if !(rate > 0.0 && rate <= 100.0) {
        return Err(format!("rate {rate}% is outside (0, 100]"));
    }
    let target = (codec::capacity(&cover, params) as f64 * rate / 100.0).floor() as usize;
    let payload = fit_payload(&source, target.saturating_sub(codec::HEADER_LEN))
        .ok_or_else(|| format!("rate {rate}% leaves no room for payload pixels"))?;
    let stego = codec::embed(&cover, &payload, params).map_err(|e| e.to_string())?;

    let deltas: Vec<u8> = cover
        .pixels()
        .iter()
        .zip(stego.pixels())
        .map(|(&c, &s)| c.abs_diff(s))
        .collect();
    let peak = deltas.iter().copied().max().unwrap_or(0).max(1);
    let diff = deltas
        .iter()
        .map(|&d| (u16::from(d) * 255 / u16::from(peak)) as u8)
        .collect();

    Ok(Embedding {
        psnr: psnr(&cover, &stego).map_err(|e| e.to_string())?,
        q_index: quality_index(&cover, &stego).map_err(|e| e.to_string())?,
        stego: stego.into_pixels(),
        diff,
        payload_width: payload.width(),
        payload_height: payload.height(),
        embedded_bits: ((codec::HEADER_LEN + payload.pixel_count()) * 8) as u64,
    })
}

pub fn run_extract(stego: &[u8], width: usize, height: usize, mu: u8) -> Result<Extracted, String> {
    let payload =
        codec::extract(&image(stego, width, height)?, params(mu)?).map_err(|e| e.to_string())?;
    Ok(Extracted {
        width: payload.width(),
        height: payload.height(),
        pixels: payload.into_pixels(),
    })
}

pub fn run_curves(
    cover: &[u8],
    stego: &[u8],
    width: usize,
    height: usize,
) -> Result<Curves, String> {
    let cover = image(cover, width, height)?;
    let stego = image(stego, width, height)?;
    let as_f64 = |c: &[u64]| c.iter().map(|&v| v as f64).collect::<Vec<_>>();
    let pdh_c = pd_histogram(&cover).map_err(|e| e.to_string())?;
    let pdh_s = pd_histogram(&stego).map_err(|e| e.to_string())?;
    let window = |h: &lbpstego::analysis::PdHistogram| {
        h.window(PDH_RADIUS)
            .map(|(_, n)| n as f64)
            .collect::<Vec<_>>()
    };
    Ok(Curves {
        hist_cover: as_f64(&histogram(&cover)),
        hist_stego: as_f64(&histogram(&stego)),
        pdh_cover: window(&pdh_c),
        pdh_stego: window(&pdh_s),
        pdh_corr: pearson(&as_f64(pdh_c.counts()), &as_f64(pdh_s.counts())).unwrap_or(f64::NAN),
    })
}

/// A synthetic `size` x `size` photograph-like image.
#[wasm_bindgen]
pub fn synth(size: usize, seed: u32) -> Vec<u8> {
    synth_pixels(size, seed)
}

/// Embeds as much of `payload` as fits in `rate` percent of the cover's capacity.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn embed(
    cover: &[u8],
    width: usize,
    height: usize,
    payload: &[u8],
    payload_width: usize,
    payload_height: usize,
    mu: u8,
    rate: f64,
) -> Result<Embedding, JsError> {
    run_embed(
        cover,
        width,
        height,
        payload,
        payload_width,
        payload_height,
        mu,
        rate,
    )
    .map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn extract(stego: &[u8], width: usize, height: usize, mu: u8) -> Result<Extracted, JsError> {
    run_extract(stego, width, height, mu).map_err(|e| JsError::new(&e))
}

/// Gray-level and pixel-difference histograms of a cover/stego pair.
#[wasm_bindgen]
pub fn curves(cover: &[u8], stego: &[u8], width: usize, height: usize) -> Result<Curves, JsError> {
    run_curves(cover, stego, width, height).map_err(|e| JsError::new(&e))
}
