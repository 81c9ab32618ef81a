//! In-band framing for the secret image.
//!
//! Wire layout (15-byte header, then body):
//!
//! | offset | size | field                                     |
//! |--------|------|-------------------------------------------|
//! | 0      | 4    | magic `53 32 33 33` (`"S233"`)            |
//! | 4      | 1    | version, `0x01`                           |
//! | 5      | 1    | scheme id, `0x01` = 233, `0x02` = 332     |
//! | 6      | 4    | width, u32 big-endian                     |
//! | 10     | 4    | height, u32 big-endian                    |
//! | 14     | 1    | channels, always `0x03`                   |
//! | 15     | ..   | R,G,B interleaved, row-major              |

use crate::raster::RasterImage;
use crate::scheme::{EmbeddingScheme, SchemeId};
use crate::StegoError;

pub const MAGIC: [u8; 4] = *b"S233";
pub const VERSION: u8 = 0x01;
pub const HEADER_LEN: usize = 15;
pub const CHANNELS: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PayloadHeader {
    pub version: u8,
    pub scheme: SchemeId,
    pub width: u32,
    pub height: u32,
    pub channels: u8,
}

impl PayloadHeader {
    pub fn new(scheme: SchemeId, width: u32, height: u32) -> PayloadHeader {
        PayloadHeader {
            version: VERSION,
            scheme,
            width,
            height,
            channels: CHANNELS,
        }
    }

    /// Body size declared by the header, in bytes.
    pub fn body_len(&self) -> u64 {
        u64::from(self.width) * u64::from(self.height) * u64::from(self.channels)
    }

    pub fn to_bytes(&self) -> [u8; HEADER_LEN] {
        let mut out = [0u8; HEADER_LEN];
        out[0..4].copy_from_slice(&MAGIC);
        out[4] = self.version;
        out[5] = self.scheme.wire_byte();
        out[6..10].copy_from_slice(&self.width.to_be_bytes());
        out[10..14].copy_from_slice(&self.height.to_be_bytes());
        out[14] = self.channels;
        out
    }

    /// Parses and validates the first [`HEADER_LEN`] bytes of `bytes`.
    pub fn parse(bytes: &[u8]) -> Result<PayloadHeader, StegoError> {
        if bytes.len() < HEADER_LEN {
            return Err(StegoError::Truncated {
                needed: HEADER_LEN as u64,
                available: bytes.len() as u64,
            });
        }
        if bytes[0..4] != MAGIC {
            return Err(StegoError::BadMagic([
                bytes[0], bytes[1], bytes[2], bytes[3],
            ]));
        }
        let version = bytes[4];
        if version != VERSION {
            return Err(StegoError::UnsupportedVersion(version));
        }
        let scheme = SchemeId::from_wire_byte(bytes[5])
            .ok_or_else(|| StegoError::InvalidHeader(format!("scheme id 0x{:02x}", bytes[5])))?;
        let width = u32::from_be_bytes(bytes[6..10].try_into().unwrap());
        let height = u32::from_be_bytes(bytes[10..14].try_into().unwrap());
        let channels = bytes[14];
        if width == 0 || height == 0 {
            return Err(StegoError::InvalidHeader(format!(
                "dimensions {width}x{height}"
            )));
        }
        if channels != CHANNELS {
            return Err(StegoError::InvalidHeader(format!("{channels} channels")));
        }
        Ok(PayloadHeader {
            version,
            scheme,
            width,
            height,
            channels,
        })
    }
}

/// Header plus the secret's pixel bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StegoPayload {
    pub header: PayloadHeader,
    pub body: Vec<u8>,
}

impl StegoPayload {
    pub fn serialized_len(&self) -> usize {
        HEADER_LEN + self.body.len()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.serialized_len());
        out.extend_from_slice(&self.header.to_bytes());
        out.extend_from_slice(&self.body);
        out
    }

    /// Rebuilds the secret image from the body.
    pub fn to_image(&self) -> Result<RasterImage, StegoError> {
        RasterImage::from_rgb_bytes(self.header.width, self.header.height, &self.body)
            .map_err(|e| StegoError::InvalidHeader(e.to_string()))
    }
}

/// Frames `secret` for embedding under `scheme`.
pub fn build_payload(secret: &RasterImage, scheme: &EmbeddingScheme) -> StegoPayload {
    StegoPayload {
        header: PayloadHeader::new(scheme.id(), secret.width(), secret.height()),
        body: secret.to_rgb_bytes(),
    }
}

/// Serialized payload length for a `width`x`height` RGB secret.
pub fn payload_len(width: u32, height: u32) -> u64 {
    HEADER_LEN as u64 + PayloadHeader::new(SchemeId::TwoThreeThree, width, height).body_len()
}

/// Parses a serialized payload. Bytes past the declared body are ignored.
pub fn parse_payload(bytes: &[u8]) -> Result<StegoPayload, StegoError> {
    let header = PayloadHeader::parse(bytes)?;
    let needed = HEADER_LEN as u64 + header.body_len();
    if (bytes.len() as u64) < needed {
        return Err(StegoError::Truncated {
            needed,
            available: bytes.len() as u64,
        });
    }
    Ok(StegoPayload {
        header,
        body: bytes[HEADER_LEN..needed as usize].to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn secret(w: u32, h: u32) -> RasterImage {
        let pixels = (0..w * h)
            .map(|i| [(i % 251) as u8, (i / 7 % 256) as u8, (i * 3 % 256) as u8])
            .collect();
        RasterImage::new(w, h, pixels).unwrap()
    }

    #[test]
    fn header_is_bit_exact() {
        let h = PayloadHeader::new(SchemeId::ThreeThreeTwo, 0x0102_0304, 128);
        assert_eq!(
            h.to_bytes(),
            [0x53, 0x32, 0x33, 0x33, 0x01, 0x02, 0x01, 0x02, 0x03, 0x04, 0, 0, 0, 0x80, 0x03]
        );
    }

    #[test]
    fn payload_sizes() {
        let s = EmbeddingScheme::TWO_THREE_THREE;
        assert_eq!(
            build_payload(&secret(128, 128), &s).to_bytes().len(),
            49_167
        );
        assert_eq!(build_payload(&secret(1, 1), &s).to_bytes().len(), 18);
        assert_eq!(payload_len(128, 128), 49_167);
    }

    #[test]
    fn parse_back_equal() {
        let p = build_payload(&secret(5, 3), &EmbeddingScheme::THREE_THREE_TWO);
        let parsed = parse_payload(&p.to_bytes()).unwrap();
        assert_eq!(parsed, p);
        assert_eq!(parsed.to_image().unwrap(), secret(5, 3));
    }

    #[test]
    fn corrupt_first_byte_is_bad_magic() {
        let mut bytes = build_payload(&secret(2, 2), &EmbeddingScheme::TWO_THREE_THREE).to_bytes();
        bytes[0] ^= 0x01;
        assert!(matches!(
            parse_payload(&bytes),
            Err(StegoError::BadMagic(_))
        ));
    }

    #[test]
    fn short_body_is_truncated() {
        let mut bytes = PayloadHeader::new(SchemeId::TwoThreeThree, 128, 128)
            .to_bytes()
            .to_vec();
        bytes.extend(std::iter::repeat_n(0u8, 100));
        match parse_payload(&bytes) {
            Err(StegoError::Truncated { needed, available }) => {
                assert_eq!(needed, 49_167);
                assert_eq!(available, 115);
            }
            other => panic!("expected Truncated, got {other:?}"),
        }
        assert!(matches!(
            parse_payload(&bytes[..10]),
            Err(StegoError::Truncated { .. })
        ));
    }

    #[test]
    fn header_field_validation() {
        let good = PayloadHeader::new(SchemeId::TwoThreeThree, 1, 1).to_bytes();
        let mut b = good;
        b[4] = 2;
        assert!(matches!(
            PayloadHeader::parse(&b),
            Err(StegoError::UnsupportedVersion(2))
        ));
        let mut b = good;
        b[5] = 9;
        assert!(matches!(
            PayloadHeader::parse(&b),
            Err(StegoError::InvalidHeader(_))
        ));
        let mut b = good;
        b[14] = 4;
        assert!(matches!(
            PayloadHeader::parse(&b),
            Err(StegoError::InvalidHeader(_))
        ));
        let mut b = good;
        b[6..10].copy_from_slice(&0u32.to_be_bytes());
        assert!(matches!(
            PayloadHeader::parse(&b),
            Err(StegoError::InvalidHeader(_))
        ));
    }

    proptest! {
        #[test]
        fn header_round_trip(w in 1u32.., h in 1u32.., use_332 in any::<bool>()) {
            let scheme = if use_332 { SchemeId::ThreeThreeTwo } else { SchemeId::TwoThreeThree };
            let header = PayloadHeader::new(scheme, w, h);
            prop_assert_eq!(PayloadHeader::parse(&header.to_bytes()).unwrap(), header);
        }
    }
}
