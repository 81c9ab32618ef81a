//! `stegkit`: embed, extract, measure and benchmark.
//!
//! Exit codes: 0 on success, 1 on domain errors (capacity, bad magic,
//! dimension mismatch, undecodable input), 2 on usage errors. Every failure
//! prints a single `error: ...` line on stderr.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use stegkit_bench::report::fmt4;
use stegkit_bench::{
    run_experiment, run_experiment_with_threads, write_outputs, ConfigError, ExperimentConfig,
};
use stegkit_core::raster::save_lossless_as;
use stegkit_core::{
    build_payload, capacity_bits, embed_payload, extract_stream, load_image, psnr, report,
    EmbeddingScheme, OutputFormat, RasterError, RasterImage, SchemeId,
};

#[derive(Debug, Parser)]
#[command(
    name = "stegkit",
    version,
    about = "Hide an RGB image in the 4 low bits of another"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Embed a secret image into a cover and write a lossless stego image.
    Embed {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        secret: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "233", value_parser = parse_scheme)]
        scheme: SchemeId,
        /// Write BMP instead of PNG.
        #[arg(long)]
        bmp: bool,
    },
    /// Recover the secret image from a stego image.
    Extract {
        #[arg(long)]
        stego: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "233", value_parser = parse_scheme)]
        scheme: SchemeId,
        #[arg(long)]
        bmp: bool,
    },
    /// Print MSE, PSNR, NAE and SSIM between two images.
    Metrics {
        #[arg(long = "ref")]
        reference: PathBuf,
        #[arg(long)]
        test: PathBuf,
    },
    /// Run a cover x secret x scheme grid from a config file.
    Bench {
        #[arg(long)]
        config: PathBuf,
    },
}

fn parse_scheme(s: &str) -> Result<SchemeId, String> {
    s.parse()
        .map_err(|e: stegkit_core::scheme::UnknownScheme| e.to_string())
}

enum Failure {
    Domain(String),
    Usage(String),
}

impl Failure {
    fn domain(e: impl std::fmt::Display) -> Failure {
        Failure::Domain(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn output_format(path: &Path, bmp: bool) -> Result<OutputFormat, Failure> {
    match OutputFormat::from_path(path) {
        Err(e @ RasterError::LossyOutput(_)) => Err(Failure::Usage(e.to_string())),
        _ if bmp => Ok(OutputFormat::Bmp),
        Ok(f) => Ok(f),
        Err(e) => Err(Failure::Usage(e.to_string())),
    }
}

fn load(path: &Path) -> Result<RasterImage, Failure> {
    load_image(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn save(image: &RasterImage, path: &Path, format: OutputFormat) -> CmdResult {
    save_lossless_as(image, path, format).map_err(Failure::domain)
}

fn cmd_embed(cover: &Path, secret: &Path, out: &Path, scheme: SchemeId, bmp: bool) -> CmdResult {
    let format = output_format(out, bmp)?;
    let scheme = EmbeddingScheme::from(scheme);
    let cover_img = load(cover)?;
    let secret_img = load(secret)?;
    let payload = build_payload(&secret_img, &scheme);
    let capacity = capacity_bits(cover_img.width(), cover_img.height(), &scheme);
    let stego = embed_payload(&cover_img, &payload, &scheme).map_err(Failure::domain)?;
    let payload_bits = payload.serialized_len() as u64 * 8;
    save(&stego, out, format)?;
    let mse = stegkit_core::mse(&cover_img, &stego).map_err(Failure::domain)?;
    println!("scheme {}", scheme.id());
    println!("capacity {capacity} bits");
    println!(
        "payload {payload_bits}/{capacity} bits ({:.1}%)",
        100.0 * payload_bits as f64 / capacity as f64
    );
    println!("psnr {} dB", fmt4(psnr(mse)));
    println!("wrote {}", out.display());
    Ok(())
}

fn cmd_extract(stego: &Path, out: &Path, scheme: SchemeId, bmp: bool) -> CmdResult {
    let format = output_format(out, bmp)?;
    let stego_img = load(stego)?;
    let secret = extract_stream(&stego_img, &scheme.scheme()).map_err(Failure::domain)?;
    save(&secret, out, format)?;
    println!("recovered {}x{}", secret.width(), secret.height());
    println!("wrote {}", out.display());
    Ok(())
}

fn cmd_metrics(reference: &Path, test: &Path) -> CmdResult {
    let r = report(&load(reference)?, &load(test)?).map_err(Failure::domain)?;
    println!("mse={}", fmt4(r.mse));
    println!("psnr={}", fmt4(r.psnr));
    println!("nae={}", fmt4(r.nae));
    println!("ssim={}", fmt4(r.ssim));
    Ok(())
}

fn thread_cap() -> Option<usize> {
    let raw = std::env::var("STEGKIT_THREADS").ok()?;
    match raw.trim().parse::<usize>() {
        Ok(n) if n > 0 => Some(n),
        _ => {
            eprintln!("warning: ignoring STEGKIT_THREADS={raw:?}");
            None
        }
    }
}

fn cmd_bench(config_path: &Path) -> CmdResult {
    // unreadable or malformed configs are usage errors
    let config = ExperimentConfig::load(config_path)
        .map_err(|e: ConfigError| Failure::Usage(e.to_string()))?;
    let rows = match thread_cap() {
        Some(n) => run_experiment_with_threads(&config, n),
        None => run_experiment(&config),
    };
    let (outputs, compare_err) =
        write_outputs(&rows, &config.output_dir).map_err(Failure::domain)?;

    let ok = rows.iter().filter(|r| r.is_valid()).count();
    let skipped = rows
        .iter()
        .filter(|r| r.status.label() == "skipped")
        .count();
    for r in rows.iter().filter(|r| !r.is_valid()) {
        eprintln!(
            "warning: {} x {} x {}: {}",
            r.cover_name,
            r.secret_name,
            r.scheme,
            r.status.message()
        );
    }
    println!(
        "{}: {} rows ({ok} ok, {skipped} skipped, {} failed)",
        outputs.results.display(),
        rows.len(),
        rows.len() - ok - skipped
    );
    println!("{}", outputs.timings.display());
    match (&outputs.comparison, &outputs.plot_data, compare_err) {
        (Some(c), Some(p), _) => {
            println!("{}", c.display());
            println!("{}", p.display());
        }
        (_, _, Some(e)) => eprintln!("warning: no comparison written: {e}"),
        _ => {}
    }
    if ok == 0 {
        return Err(Failure::Domain(String::from("every grid cell failed")));
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let result = match &cli.command {
        Command::Embed {
            cover,
            secret,
            out,
            scheme,
            bmp,
        } => cmd_embed(cover, secret, out, *scheme, *bmp),
        Command::Extract {
            stego,
            out,
            scheme,
            bmp,
        } => cmd_extract(stego, out, *scheme, *bmp),
        Command::Metrics { reference, test } => cmd_metrics(reference, test),
        Command::Bench { config } => cmd_bench(config),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
