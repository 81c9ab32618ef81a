//! Regenerates the demo corpus: `cargo run -p stegkit-bench --example make_corpus -- <dir>`

use std::path::PathBuf;

use image::codecs::jpeg::JpegEncoder;
use stegkit_bench::synth::{generate, Pattern};
use stegkit_core::{save_lossless, RasterImage};

fn write_jpeg(img: &RasterImage, path: &PathBuf) {
    let file = std::fs::File::create(path).expect("create jpeg");
    JpegEncoder::new_with_quality(file, 90)
        .encode(
            &img.to_rgb_bytes(),
            img.width(),
            img.height(),
            image::ExtendedColorType::Rgb8,
        )
        .expect("encode jpeg");
}

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "corpus".into()));
    std::fs::create_dir_all(&dir).expect("create corpus dir");

    write_jpeg(
        &generate(
            Pattern::Textured {
                seed: 400,
                amplitude: 12,
            },
            400,
            400,
        ),
        &dir.join("pic400.jpg"),
    );
    save_lossless(
        &generate(Pattern::Gradient, 580, 580),
        dir.join("gradient580.png"),
    )
    .expect("write cover");
    save_lossless(
        &generate(Pattern::Rings { period: 23.0 }, 128, 128),
        dir.join("rings128.png"),
    )
    .expect("write secret");
    save_lossless(
        &generate(Pattern::Noise { seed: 128 }, 128, 128),
        dir.join("noise128.png"),
    )
    .expect("write secret");

    std::fs::write(
        dir.join("demo.conf"),
        "# demo grid: 2 covers x 2 secrets x 2 schemes\n\
         cover      = pic400.jpg\n\
         cover      = gradient580.png\n\
         secret     = rings128.png\n\
         secret     = noise128.png\n\
         scheme     = 233, 332\n\
         output_dir = out\n\
         emit_stego = true\n",
    )
    .expect("write config");
    println!("corpus written to {}", dir.display());
}
