//! Per-pixel bit placement and the row-major payload stream on top of it.

use crate::payload::{PayloadHeader, StegoPayload, HEADER_LEN};
use crate::raster::{RasterImage, Rgb};
use crate::scheme::{EmbeddingScheme, BITS_PER_PIXEL};
use crate::StegoError;

/// Writes `secret` into the low bits of `cover` following the scheme's
/// schedule. Bits outside the written positions are left untouched.
pub fn embed_byte(cover: Rgb, secret: u8, scheme: &EmbeddingScheme) -> Rgb {
    let mut out = cover;
    for (i, slot) in scheme.schedule().iter().enumerate() {
        let bit = (secret >> (7 - i)) & 1;
        let c = &mut out[slot.channel.index()];
        let mask = slot.position.mask();
        *c = (*c & !mask) | if bit == 1 { mask } else { 0 };
    }
    out
}

/// Reads back the byte written by [`embed_byte`].
pub fn extract_byte(stego: Rgb, scheme: &EmbeddingScheme) -> u8 {
    scheme.schedule().iter().fold(0u8, |acc, slot| {
        let bit = stego[slot.channel.index()] & slot.position.mask() != 0;
        (acc << 1) | u8::from(bit)
    })
}

/// Embeddable bits in a `width`x`height` cover: one byte per pixel.
pub fn capacity_bits(width: u32, height: u32, _scheme: &EmbeddingScheme) -> u64 {
    u64::from(width) * u64::from(height) * u64::from(BITS_PER_PIXEL)
}

/// Embeds raw payload bytes, one per cover pixel in row-major order.
/// Pixels past the payload are copied unchanged.
pub fn embed_stream(
    cover: &RasterImage,
    payload: &[u8],
    scheme: &EmbeddingScheme,
) -> Result<RasterImage, StegoError> {
    let required = payload.len() as u64 * u64::from(BITS_PER_PIXEL);
    let available = capacity_bits(cover.width(), cover.height(), scheme);
    if required > available {
        return Err(StegoError::InsufficientCapacity {
            required,
            available,
        });
    }
    let mut stego = cover.clone();
    for (px, &byte) in stego.pixels_mut().iter_mut().zip(payload) {
        *px = embed_byte(*px, byte, scheme);
    }
    Ok(stego)
}

/// Embeds a framed payload.
pub fn embed_payload(
    cover: &RasterImage,
    payload: &StegoPayload,
    scheme: &EmbeddingScheme,
) -> Result<RasterImage, StegoError> {
    embed_stream(cover, &payload.to_bytes(), scheme)
}

/// Reads `count` bytes starting at pixel `start`.
fn read_bytes(
    stego: &RasterImage,
    start: usize,
    count: usize,
    scheme: &EmbeddingScheme,
) -> Vec<u8> {
    stego.pixels()[start..start + count]
        .iter()
        .map(|&px| extract_byte(px, scheme))
        .collect()
}

/// Recovers the framed payload from a stego image: header first, then
/// exactly the body it declares.
pub fn extract_payload(
    stego: &RasterImage,
    scheme: &EmbeddingScheme,
) -> Result<StegoPayload, StegoError> {
    let available = stego.pixel_count() as u64;
    if available < HEADER_LEN as u64 {
        return Err(StegoError::Truncated {
            needed: HEADER_LEN as u64,
            available,
        });
    }
    let header = PayloadHeader::parse(&read_bytes(stego, 0, HEADER_LEN, scheme))?;
    if header.scheme != scheme.id() {
        return Err(StegoError::SchemeMismatch {
            expected: scheme.id(),
            found: header.scheme,
        });
    }
    let needed = HEADER_LEN as u64 + header.body_len();
    if available < needed {
        return Err(StegoError::Truncated { needed, available });
    }
    let body = read_bytes(stego, HEADER_LEN, header.body_len() as usize, scheme);
    Ok(StegoPayload { header, body })
}

/// Recovers the secret image embedded by [`embed_payload`].
pub fn extract_stream(
    stego: &RasterImage,
    scheme: &EmbeddingScheme,
) -> Result<RasterImage, StegoError> {
    extract_payload(stego, scheme)?.to_image()
}
