//! Hash-positioned LSB image steganography.
//!
//! A secret RGB image is framed with a small header ([`payload`]) and written
//! one byte per cover pixel into the four least significant bits of R, G and
//! B ([`embed`]). The channel split is 2-3-3 by default with 3-3-2 kept as a
//! baseline ([`scheme`]). [`metrics`] measures how far the stego image drifts
//! from its cover and [`raster`] handles decoding and lossless output.

pub mod embed;
pub mod metrics;
pub mod payload;
pub mod raster;
pub mod scheme;

use thiserror::Error;

pub use embed::{
    capacity_bits, embed_byte, embed_payload, embed_stream, extract_byte, extract_payload,
    extract_stream,
};
pub use metrics::{mse, nae, psnr, report, ssim, MetricError, MetricReport};
pub use payload::{build_payload, parse_payload, PayloadHeader, StegoPayload};
pub use raster::{load_image, save_lossless, OutputFormat, RasterError, RasterImage};
pub use scheme::{hash_position, BitPosition, Channel, EmbeddingScheme, SchemeId};

/// Errors raised while framing, embedding or extracting a payload.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StegoError {
    #[error("insufficient capacity: payload needs {required} bits, cover holds {available} bits")]
    InsufficientCapacity { required: u64, available: u64 },
    #[error("bad magic {0:02x?}: not a stegkit payload or wrong extraction scheme")]
    BadMagic([u8; 4]),
    #[error("truncated payload: needs {needed} bytes, {available} available")]
    Truncated { needed: u64, available: u64 },
    #[error("unsupported payload version {0}")]
    UnsupportedVersion(u8),
    #[error("invalid payload header: {0}")]
    InvalidHeader(String),
    #[error("scheme mismatch: extracting with {expected}, header says {found}")]
    SchemeMismatch { expected: SchemeId, found: SchemeId },
}
