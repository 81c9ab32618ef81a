//! Expected embedding distortion for uniformly random covers and payloads,
//! computed by enumeration rather than sampling.
//!
//! For one channel with write positions `P`, every low nibble of the cover
//! (16 values) is paired with every pattern of `|P|` secret bits. The mean
//! squared difference over all pairs is the channel's expected squared
//! error per carrying pixel. Pixels that carry no payload add nothing, so
//! expected MSE scales linearly with utilization.

use stegkit_core::{Channel, EmbeddingScheme};

/// Mean squared error of writing every bit pattern at `positions` (1 = LSB)
/// into every possible low nibble.
pub fn enumerate_channel_sq_error(positions: &[u8]) -> f64 {
    let n = positions.len() as u32;
    let mut total = 0u64;
    let mut cases = 0u64;
    for nibble in 0u8..16 {
        for pattern in 0u32..(1 << n) {
            let mut stego = nibble;
            for (i, &pos) in positions.iter().enumerate() {
                let bit = (pattern >> i) & 1;
                let mask = 1u8 << (pos - 1);
                stego = if bit == 1 {
                    stego | mask
                } else {
                    stego & !mask
                };
            }
            let d = i64::from(stego) - i64::from(nibble);
            total += (d * d) as u64;
            cases += 1;
        }
    }
    total as f64 / cases as f64
}

/// Expected per-channel MSE at full utilization, R,G,B.
pub fn expected_channel_mse(scheme: &EmbeddingScheme) -> [f64; 3] {
    Channel::ALL.map(|c| {
        let positions: Vec<u8> = scheme
            .channel_positions(c)
            .iter()
            .map(|p| p.get())
            .collect();
        enumerate_channel_sq_error(&positions)
    })
}

/// Expected channel-averaged MSE when a fraction `utilization` of the
/// cover pixels carry uniformly random bytes.
pub fn expected_mse(scheme: &EmbeddingScheme, utilization: f64) -> f64 {
    let per = expected_channel_mse(scheme);
    utilization * per.iter().sum::<f64>() / 3.0
}
