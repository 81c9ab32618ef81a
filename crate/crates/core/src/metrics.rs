//! Fidelity measures between a reference (cover) and a test (stego) image.
//!
//! * MSE is taken per color plane over `H*W` pixels, then averaged over R,G,B.
//! * PSNR uses peak level 255 and reports `f64::INFINITY` for identical images.
//! * NAE sums absolute differences over all planes and divides by the summed
//!   magnitude of the *test* image, so it is not symmetric.
//! * SSIM works on BT.601 luma with an 8x8 uniform window, stride 1,
//!   `C1 = (0.01*255)^2`, `C2 = (0.03*255)^2`, and averages the window scores.

use thiserror::Error;

use crate::raster::RasterImage;

/// Peak signal level for 8-bit channels.
pub const PEAK: f64 = 255.0;
pub const SSIM_WINDOW: u32 = 8;
pub const SSIM_K1: f64 = 0.01;
pub const SSIM_K2: f64 = 0.03;
/// BT.601 luma weights, scaled by 1000 so luma stays integral.
const LUMA_WEIGHTS_MILLI: [i64; 3] = [299, 587, 114];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(u32, u32, u32, u32),
    #[error("test image is all black, NAE denominator is zero")]
    ZeroDenominator,
    #[error("image {width}x{height} is smaller than the {window}x{window} SSIM window")]
    ImageTooSmall {
        width: u32,
        height: u32,
        window: u32,
    },
}

fn check_dims(a: &RasterImage, b: &RasterImage) -> Result<(), MetricError> {
    if a.same_dimensions(b) {
        Ok(())
    } else {
        Err(MetricError::DimensionMismatch(
            a.width(),
            a.height(),
            b.width(),
            b.height(),
        ))
    }
}

/// Per-plane MSE for R, G, B.
pub fn mse_per_channel(
    reference: &RasterImage,
    test: &RasterImage,
) -> Result<[f64; 3], MetricError> {
    check_dims(reference, test)?;
    let mut sums = [0u64; 3];
    for (p, s) in reference.pixels().iter().zip(test.pixels()) {
        for c in 0..3 {
            let d = i64::from(p[c]) - i64::from(s[c]);
            sums[c] += (d * d) as u64;
        }
    }
    let n = reference.pixel_count() as f64;
    Ok(sums.map(|s| s as f64 / n))
}

/// Mean of the three per-plane MSE values.
pub fn mse(reference: &RasterImage, test: &RasterImage) -> Result<f64, MetricError> {
    let per = mse_per_channel(reference, test)?;
    Ok(per.iter().sum::<f64>() / 3.0)
}

/// PSNR in dB; `+inf` when `mse_value` is zero.
pub fn psnr(mse_value: f64) -> f64 {
    if mse_value == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (PEAK * PEAK / mse_value).log10()
    }
}

/// `sum |P - S| / sum |S|` over every pixel and channel.
pub fn nae(reference: &RasterImage, test: &RasterImage) -> Result<f64, MetricError> {
    check_dims(reference, test)?;
    let (num, den) = reference
        .pixels()
        .iter()
        .zip(test.pixels())
        .flat_map(|(p, s)| (0..3).map(move |c| (p[c], s[c])))
        .fold((0u64, 0u64), |(num, den), (p, s)| {
            (num + u64::from(p.abs_diff(s)), den + u64::from(s))
        });
    if den == 0 {
        return Err(MetricError::ZeroDenominator);
    }
    Ok(num as f64 / den as f64)
}

/// Luma times 1000.
fn luma_milli(img: &RasterImage) -> Vec<i64> {
    img.pixels()
        .iter()
        .map(|p| {
            (0..3)
                .map(|c| LUMA_WEIGHTS_MILLI[c] * i64::from(p[c]))
                .sum()
        })
        .collect()
}

/// Summed-area table with a zero border: `(w+1)*(h+1)` entries.
struct Integral {
    stride: usize,
    data: Vec<i128>,
}

impl Integral {
    fn build(width: usize, height: usize, value: impl Fn(usize) -> i128) -> Integral {
        let stride = width + 1;
        let mut data = vec![0i128; stride * (height + 1)];
        for y in 0..height {
            let mut row = 0i128;
            for x in 0..width {
                row += value(y * width + x);
                data[(y + 1) * stride + x + 1] = data[y * stride + x + 1] + row;
            }
        }
        Integral { stride, data }
    }

    /// Sum over the `size`x`size` window with top-left corner `(x, y)`.
    fn window(&self, x: usize, y: usize, size: usize) -> i128 {
        let at = |xx: usize, yy: usize| self.data[yy * self.stride + xx];
        at(x + size, y + size) - at(x, y + size) - at(x + size, y) + at(x, y)
    }
}

/// Mean SSIM over all 8x8 windows of the luma planes.
pub fn ssim(reference: &RasterImage, test: &RasterImage) -> Result<f64, MetricError> {
    check_dims(reference, test)?;
    let (w, h) = (reference.width(), reference.height());
    if w < SSIM_WINDOW || h < SSIM_WINDOW {
        return Err(MetricError::ImageTooSmall {
            width: w,
            height: h,
            window: SSIM_WINDOW,
        });
    }
    let a = luma_milli(reference);
    let b = luma_milli(test);
    let (wu, hu) = (w as usize, h as usize);
    let sa = Integral::build(wu, hu, |i| i128::from(a[i]));
    let sb = Integral::build(wu, hu, |i| i128::from(b[i]));
    let saa = Integral::build(wu, hu, |i| i128::from(a[i] * a[i]));
    let sbb = Integral::build(wu, hu, |i| i128::from(b[i] * b[i]));
    let sab = Integral::build(wu, hu, |i| i128::from(a[i] * b[i]));

    let size = SSIM_WINDOW as usize;
    let n = (size * size) as i128;
    // moments are exact integers scaled by n^2 * 1000^2
    let scale = (n * n) as f64 * 1.0e6;
    let c1 = (SSIM_K1 * PEAK).powi(2);
    let c2 = (SSIM_K2 * PEAK).powi(2);

    let mut total = 0.0;
    let mut count = 0u64;
    for y in 0..=hu - size {
        for x in 0..=wu - size {
            let (ma, mb) = (sa.window(x, y, size), sb.window(x, y, size));
            let mu_a2 = (ma * ma) as f64 / scale;
            let mu_b2 = (mb * mb) as f64 / scale;
            let mu_ab = (ma * mb) as f64 / scale;
            let var_a = (n * saa.window(x, y, size) - ma * ma) as f64 / scale;
            let var_b = (n * sbb.window(x, y, size) - mb * mb) as f64 / scale;
            let cov = (n * sab.window(x, y, size) - ma * mb) as f64 / scale;
            total += ((2.0 * mu_ab + c1) * (2.0 * cov + c2))
                / ((mu_a2 + mu_b2 + c1) * (var_a + var_b + c2));
            count += 1;
        }
    }
    Ok(total / count as f64)
}

/// The four fidelity measures for one (reference, test) pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricReport {
    pub mse: f64,
    pub mse_channels: [f64; 3],
    pub psnr: f64,
    pub nae: f64,
    pub ssim: f64,
}

pub fn report(reference: &RasterImage, test: &RasterImage) -> Result<MetricReport, MetricError> {
    let mse_channels = mse_per_channel(reference, test)?;
    let mse = mse_channels.iter().sum::<f64>() / 3.0;
    Ok(MetricReport {
        mse,
        mse_channels,
        psnr: psnr(mse),
        nae: nae(reference, test)?,
        ssim: ssim(reference, test)?,
    })
}
