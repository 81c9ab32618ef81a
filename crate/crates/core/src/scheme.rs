//! Channel splits and the hash rule that picks the bit position for each
//! secret bit inside a cover pixel.
//!
//! A scheme consumes one secret byte per cover pixel, most significant bit
//! first. The first `r_bits` go to Red, the next `g_bits` to Green and the
//! remaining `b_bits` to Blue. Bit `k` of the byte (1-based, restarting for
//! every pixel) lands at position [`hash_position`]`(k, lsb_window)` of its
//! channel, where position 1 is the least significant bit.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Number of secret bits carried by one cover pixel.
pub const BITS_PER_PIXEL: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown scheme {0:?} (expected \"233\" or \"332\")")]
pub struct UnknownScheme(pub String);

/// Identifier of a shipped channel split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemeId {
    /// Red 2, Green 3, Blue 3.
    TwoThreeThree,
    /// Red 3, Green 3, Blue 2 (the baseline split).
    ThreeThreeTwo,
}

impl SchemeId {
    pub const ALL: [SchemeId; 2] = [SchemeId::TwoThreeThree, SchemeId::ThreeThreeTwo];

    pub fn as_str(self) -> &'static str {
        match self {
            SchemeId::TwoThreeThree => "233",
            SchemeId::ThreeThreeTwo => "332",
        }
    }

    /// Byte used for this scheme in the payload header.
    pub fn wire_byte(self) -> u8 {
        match self {
            SchemeId::TwoThreeThree => 0x01,
            SchemeId::ThreeThreeTwo => 0x02,
        }
    }

    pub fn from_wire_byte(byte: u8) -> Option<SchemeId> {
        match byte {
            0x01 => Some(SchemeId::TwoThreeThree),
            0x02 => Some(SchemeId::ThreeThreeTwo),
            _ => None,
        }
    }

    pub fn scheme(self) -> EmbeddingScheme {
        match self {
            SchemeId::TwoThreeThree => EmbeddingScheme::TWO_THREE_THREE,
            SchemeId::ThreeThreeTwo => EmbeddingScheme::THREE_THREE_TWO,
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SchemeId {
    type Err = UnknownScheme;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "233" => Ok(SchemeId::TwoThreeThree),
            "332" => Ok(SchemeId::ThreeThreeTwo),
            other => Err(UnknownScheme(other.to_string())),
        }
    }
}

/// Color channel of an RGB pixel, in storage order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channel {
    Red = 0,
    Green = 1,
    Blue = 2,
}

impl Channel {
    pub const ALL: [Channel; 3] = [Channel::Red, Channel::Green, Channel::Blue];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// 1-based bit position inside a channel byte; 1 is the least significant bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitPosition(u8);

impl BitPosition {
    pub fn new(value: u8) -> Option<BitPosition> {
        (1..=8).contains(&value).then_some(BitPosition(value))
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// Single-bit mask for this position.
    pub fn mask(self) -> u8 {
        1 << (self.0 - 1)
    }
}

/// Maps the 1-based secret bit counter `k` to a bit position in `1..=lsb_window`.
///
/// `k % lsb_window` with a zero remainder mapped to `lsb_window`, i.e.
/// `((k - 1) % lsb_window) + 1`.
///
/// # Panics
///
/// Panics if `k` is zero or `lsb_window` is outside `1..=8`.
pub fn hash_position(k: u32, lsb_window: u8) -> BitPosition {
    assert!(k >= 1, "bit counter is 1-based");
    assert!((1..=8).contains(&lsb_window), "lsb window must be in 1..=8");
    let m = ((k - 1) % u32::from(lsb_window)) + 1;
    BitPosition(m as u8)
}

/// Where one secret bit of a byte goes: channel and bit position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Slot {
    pub channel: Channel,
    pub position: BitPosition,
}

/// A channel split plus the width of the writable low-bit window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmbeddingScheme {
    id: SchemeId,
    r_bits: u8,
    g_bits: u8,
    b_bits: u8,
    lsb_window: u8,
}

impl EmbeddingScheme {
    pub const TWO_THREE_THREE: EmbeddingScheme = EmbeddingScheme {
        id: SchemeId::TwoThreeThree,
        r_bits: 2,
        g_bits: 3,
        b_bits: 3,
        lsb_window: 4,
    };

    pub const THREE_THREE_TWO: EmbeddingScheme = EmbeddingScheme {
        id: SchemeId::ThreeThreeTwo,
        r_bits: 3,
        g_bits: 3,
        b_bits: 2,
        lsb_window: 4,
    };

    pub fn id(&self) -> SchemeId {
        self.id
    }

    pub fn r_bits(&self) -> u8 {
        self.r_bits
    }

    pub fn g_bits(&self) -> u8 {
        self.g_bits
    }

    pub fn b_bits(&self) -> u8 {
        self.b_bits
    }

    pub fn lsb_window(&self) -> u8 {
        self.lsb_window
    }

    pub fn channel_bits(&self, channel: Channel) -> u8 {
        match channel {
            Channel::Red => self.r_bits,
            Channel::Green => self.g_bits,
            Channel::Blue => self.b_bits,
        }
    }

    /// Destination of each secret bit, indexed by `k - 1` (MSB first).
    pub fn schedule(&self) -> [Slot; BITS_PER_PIXEL as usize] {
        let mut slots = [Slot {
            channel: Channel::Red,
            position: BitPosition(1),
        }; BITS_PER_PIXEL as usize];
        let mut k = 0usize;
        for channel in Channel::ALL {
            for _ in 0..self.channel_bits(channel) {
                slots[k] = Slot {
                    channel,
                    position: hash_position(k as u32 + 1, self.lsb_window),
                };
                k += 1;
            }
        }
        slots
    }

    /// Bit positions written in `channel`, in consumption order.
    pub fn channel_positions(&self, channel: Channel) -> Vec<BitPosition> {
        self.schedule()
            .iter()
            .filter(|slot| slot.channel == channel)
            .map(|slot| slot.position)
            .collect()
    }

    /// Mask of every bit the scheme may write in `channel`.
    pub fn channel_mask(&self, channel: Channel) -> u8 {
        self.channel_positions(channel)
            .into_iter()
            .fold(0, |mask, pos| mask | pos.mask())
    }
}

impl From<SchemeId> for EmbeddingScheme {
    fn from(id: SchemeId) -> Self {
        id.scheme()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn positions(scheme: EmbeddingScheme, channel: Channel) -> Vec<u8> {
        scheme
            .channel_positions(channel)
            .into_iter()
            .map(BitPosition::get)
            .collect()
    }

    #[test]
    fn hash_position_follows_worked_sequence() {
        let got: Vec<u8> = (1..=9).map(|k| hash_position(k, 4).get()).collect();
        assert_eq!(got, vec![1, 2, 3, 4, 1, 2, 3, 4, 1]);
    }

    #[test]
    fn hash_position_window_one_is_always_lsb() {
        for k in 1..20 {
            assert_eq!(hash_position(k, 1).get(), 1);
        }
    }

    #[test]
    #[should_panic]
    fn hash_position_rejects_zero_counter() {
        hash_position(0, 4);
    }

    #[test]
    fn schedule_233() {
        let s = EmbeddingScheme::TWO_THREE_THREE;
        assert_eq!(positions(s, Channel::Red), vec![1, 2]);
        assert_eq!(positions(s, Channel::Green), vec![3, 4, 1]);
        assert_eq!(positions(s, Channel::Blue), vec![2, 3, 4]);
    }

    #[test]
    fn schedule_332() {
        let s = EmbeddingScheme::THREE_THREE_TWO;
        assert_eq!(positions(s, Channel::Red), vec![1, 2, 3]);
        assert_eq!(positions(s, Channel::Green), vec![4, 1, 2]);
        assert_eq!(positions(s, Channel::Blue), vec![3, 4]);
    }

    #[test]
    fn shipped_schemes_hold_invariants() {
        for id in SchemeId::ALL {
            let s = id.scheme();
            assert_eq!(s.id(), id);
            assert_eq!(
                u32::from(s.r_bits() + s.g_bits() + s.b_bits()),
                BITS_PER_PIXEL
            );
            assert_eq!(s.lsb_window(), 4);
            for c in Channel::ALL {
                // positions within one channel never collide
                let p = s.channel_positions(c);
                assert_eq!(s.channel_mask(c).count_ones() as usize, p.len());
                assert!(s.channel_mask(c) & 0xF0 == 0);
            }
        }
    }

    #[test]
    fn scheme_id_round_trips() {
        for id in SchemeId::ALL {
            assert_eq!(id.as_str().parse::<SchemeId>().unwrap(), id);
            assert_eq!(SchemeId::from_wire_byte(id.wire_byte()), Some(id));
        }
        assert!("323".parse::<SchemeId>().is_err());
        assert_eq!(SchemeId::from_wire_byte(0x00), None);
    }
}
