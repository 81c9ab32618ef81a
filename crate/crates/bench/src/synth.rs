//! Deterministic synthetic images for hermetic benchmark runs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stegkit_core::RasterImage;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Pattern {
    /// Independent uniform bytes per channel.
    Noise {
        seed: u64,
    },
    /// Red ramps left to right, green top to bottom, blue along the diagonal.
    Gradient,
    Constant([u8; 3]),
    /// Concentric color rings around the center.
    Rings {
        period: f64,
    },
    /// Smooth gradient plus bounded per-pixel noise, photo-like texture.
    Textured {
        seed: u64,
        amplitude: u8,
    },
}

fn ramp(i: u32, n: u32) -> u8 {
    if n <= 1 {
        0
    } else {
        ((u64::from(i) * 255) / u64::from(n - 1)) as u8
    }
}

pub fn generate(pattern: Pattern, width: u32, height: u32) -> RasterImage {
    let n = width as usize * height as usize;
    let pixels: Vec<[u8; 3]> = match pattern {
        Pattern::Noise { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..n).map(|_| rng.random::<[u8; 3]>()).collect()
        }
        Pattern::Gradient => (0..height)
            .flat_map(|y| {
                (0..width).map(move |x| {
                    [
                        ramp(x, width),
                        ramp(y, height),
                        ramp(x + y, width + height - 1),
                    ]
                })
            })
            .collect(),
        Pattern::Constant(c) => vec![c; n],
        Pattern::Rings { period } => {
            let (cx, cy) = (f64::from(width) / 2.0, f64::from(height) / 2.0);
            (0..height)
                .flat_map(|y| {
                    (0..width).map(move |x| {
                        let r = (f64::from(x) - cx).hypot(f64::from(y) - cy);
                        let t = r / period * std::f64::consts::TAU;
                        let wave = |phase: f64| (127.5 + 127.5 * (t + phase).sin()).round() as u8;
                        [wave(0.0), wave(2.1), wave(4.2)]
                    })
                })
                .collect()
        }
        Pattern::Textured { seed, amplitude } => {
            let base = generate(Pattern::Gradient, width, height);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = i16::from(amplitude);
            base.pixels()
                .iter()
                .map(|p| p.map(|v| (i16::from(v) + rng.random_range(-a..=a)).clamp(0, 255) as u8))
                .collect()
        }
    };
    RasterImage::new(width, height, pixels).expect("generator fills every pixel")
}
