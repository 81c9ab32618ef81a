//! In-memory RGB rasters and the file formats around them.
//!
//! Everything is decoded into [`RasterImage`]: 8 bits per channel, R,G,B
//! order, row-major from the top-left corner. Grayscale and paletted inputs
//! are expanded, alpha is dropped. Output is lossless only (PNG or BMP),
//! since a lossy encoder would wipe out the low bit planes.

use std::io::Cursor;
use std::path::Path;

use image::{DynamicImage, ImageFormat, ImageReader, RgbImage};
use log::warn;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RasterError {
    #[error("unsupported image format{0}")]
    UnsupportedFormat(String),
    #[error("corrupt image file: {0}")]
    CorruptFile(String),
    #[error("image has zero width or height")]
    ZeroDimension,
    #[error("pixel buffer holds {actual} pixels, expected {width}x{height}")]
    PixelCount {
        width: u32,
        height: u32,
        actual: usize,
    },
    #[error("lossy output format {0:?} is unsupported for stego images; use .png or .bmp")]
    LossyOutput(String),
    #[error("i/o failure on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Rgb = [u8; 3];

/// Decoded RGB image, row-major, top-left origin.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RasterImage {
    width: u32,
    height: u32,
    pixels: Vec<Rgb>,
}

impl RasterImage {
    pub fn new(width: u32, height: u32, pixels: Vec<Rgb>) -> Result<Self, RasterError> {
        if width == 0 || height == 0 {
            return Err(RasterError::ZeroDimension);
        }
        if pixels.len() as u64 != u64::from(width) * u64::from(height) {
            return Err(RasterError::PixelCount {
                width,
                height,
                actual: pixels.len(),
            });
        }
        Ok(RasterImage {
            width,
            height,
            pixels,
        })
    }

    /// Image filled with a single color.
    pub fn filled(width: u32, height: u32, color: Rgb) -> Result<Self, RasterError> {
        let n = width as usize * height as usize;
        RasterImage::new(width, height, vec![color; n])
    }

    /// Builds an image from interleaved R,G,B bytes.
    pub fn from_rgb_bytes(width: u32, height: u32, bytes: &[u8]) -> Result<Self, RasterError> {
        if !bytes.len().is_multiple_of(3) {
            return Err(RasterError::PixelCount {
                width,
                height,
                actual: bytes.len() / 3,
            });
        }
        let pixels = bytes.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect();
        RasterImage::new(width, height, pixels)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixel_count(&self) -> usize {
        self.pixels.len()
    }

    pub fn pixels(&self) -> &[Rgb] {
        &self.pixels
    }

    pub fn pixels_mut(&mut self) -> &mut [Rgb] {
        &mut self.pixels
    }

    pub fn pixel(&self, x: u32, y: u32) -> Rgb {
        self.pixels[y as usize * self.width as usize + x as usize]
    }

    /// Interleaved R,G,B bytes in row-major order.
    pub fn to_rgb_bytes(&self) -> Vec<u8> {
        self.pixels.iter().flatten().copied().collect()
    }

    pub fn same_dimensions(&self, other: &RasterImage) -> bool {
        self.width == other.width && self.height == other.height
    }

    fn to_rgb_image(&self) -> RgbImage {
        RgbImage::from_raw(self.width, self.height, self.to_rgb_bytes())
            .expect("pixel buffer length matches dimensions")
    }

    fn from_dynamic(img: DynamicImage) -> Result<Self, RasterError> {
        if img.width() == 0 || img.height() == 0 {
            return Err(RasterError::ZeroDimension);
        }
        if img.color().has_alpha() {
            warn!("dropping alpha channel from {:?} input", img.color());
        }
        let rgb = img.into_rgb8();
        let (w, h) = rgb.dimensions();
        RasterImage::from_rgb_bytes(w, h, rgb.as_raw())
    }
}

/// Lossless output encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Png,
    Bmp,
}

impl OutputFormat {
    /// Picks the format from a path extension. Paths without an extension get
    /// PNG; lossy or unknown extensions are rejected.
    pub fn from_path(path: &Path) -> Result<OutputFormat, RasterError> {
        let ext = match path.extension().and_then(|e| e.to_str()) {
            None => return Ok(OutputFormat::Png),
            Some(e) => e.to_ascii_lowercase(),
        };
        match ext.as_str() {
            "png" => Ok(OutputFormat::Png),
            "bmp" => Ok(OutputFormat::Bmp),
            "jpg" | "jpeg" | "jpe" | "jfif" | "webp" | "avif" => Err(RasterError::LossyOutput(ext)),
            _ => Err(RasterError::UnsupportedFormat(format!(
                " for output: .{ext}"
            ))),
        }
    }

    fn image_format(self) -> ImageFormat {
        match self {
            OutputFormat::Png => ImageFormat::Png,
            OutputFormat::Bmp => ImageFormat::Bmp,
        }
    }
}

fn check_input_format(format: Option<ImageFormat>) -> Result<ImageFormat, RasterError> {
    match format {
        Some(f @ (ImageFormat::Png | ImageFormat::Bmp | ImageFormat::Jpeg)) => Ok(f),
        Some(other) => Err(RasterError::UnsupportedFormat(format!(": {other:?}"))),
        None => Err(RasterError::UnsupportedFormat(String::from(
            ": unrecognized signature",
        ))),
    }
}

/// Decodes a PNG, BMP or JPEG byte buffer. The format is sniffed from the
/// content, not trusted from a file name.
pub fn decode_image(bytes: &[u8]) -> Result<RasterImage, RasterError> {
    let format = check_input_format(image::guess_format(bytes).ok())?;
    let img = ImageReader::with_format(Cursor::new(bytes), format)
        .decode()
        .map_err(|e| RasterError::CorruptFile(e.to_string()))?;
    RasterImage::from_dynamic(img)
}

/// Reads and decodes an image file.
pub fn load_image(path: impl AsRef<Path>) -> Result<RasterImage, RasterError> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|source| RasterError::Io {
        path: path.display().to_string(),
        source,
    })?;
    decode_image(&bytes)
}

/// Encodes to an in-memory lossless buffer.
pub fn encode_lossless(image: &RasterImage, format: OutputFormat) -> Result<Vec<u8>, RasterError> {
    let mut out = Cursor::new(Vec::new());
    image
        .to_rgb_image()
        .write_to(&mut out, format.image_format())
        .map_err(|e| RasterError::Io {
            path: String::from("<memory>"),
            source: std::io::Error::other(e),
        })?;
    Ok(out.into_inner())
}

/// Writes `image` losslessly, choosing PNG or BMP from the extension.
pub fn save_lossless(image: &RasterImage, path: impl AsRef<Path>) -> Result<(), RasterError> {
    let path = path.as_ref();
    let format = OutputFormat::from_path(path)?;
    save_lossless_as(image, path, format)
}

/// Writes `image` in an explicit lossless format. Lossy extensions on the
/// destination are still refused so a `.jpg` never holds a stego payload.
pub fn save_lossless_as(
    image: &RasterImage,
    path: impl AsRef<Path>,
    format: OutputFormat,
) -> Result<(), RasterError> {
    let path = path.as_ref();
    if let Err(e @ RasterError::LossyOutput(_)) = OutputFormat::from_path(path) {
        return Err(e);
    }
    let bytes = encode_lossless(image, format)?;
    std::fs::write(path, bytes).map_err(|source| RasterError::Io {
        path: path.display().to_string(),
        source,
    })
}
