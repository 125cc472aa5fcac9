use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use frft_riesz::crypto::KeyParam;
use frft_riesz::io::AmplitudeScale;
use frft_riesz::{parse_angle_list, Angle, Path};

#[derive(Debug, Parser)]
#[command(
    name = "frft",
    version,
    about = "Fractional Fourier transforms, chirp-conjugated Riesz operators and double-phase image encryption",
    after_help = "Angles are radians (`0.785`) or pi fractions (`pi/4`, `7pi/8`, `-3pi/8`).\n\
                  FRFT_THREADS=<n> caps the number of worker threads."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Two-dimensional fractional Fourier transform of an image or complex field.
    Frft(FrftArgs),
    /// Riesz potential, Riesz transform or fractional Laplacian at a given order.
    Riesz(RieszArgs),
    /// Encrypt a PGM image into a complex field.
    Encrypt(EncryptArgs),
    /// Decrypt a complex field back into a PGM image.
    Decrypt(DecryptArgs),
    /// Decryption MSE as one key component is detuned.
    Sweep(SweepArgs),
    /// Write a key file.
    Key(KeyArgs),
    /// Write the quadrant test image.
    Synth(SynthArgs),
    /// Check the symbol identities on a frequency grid.
    Selftest(SelftestArgs),
}

/// Optional renderings of a complex result.
#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Amplitude map as an 8-bit PGM.
    #[arg(long, value_name = "PGM")]
    pub amplitude: Option<PathBuf>,
    /// Scaling for the amplitude map.
    #[arg(long, default_value = "linear", value_name = "linear|log")]
    pub scale: AmplitudeScale,
    /// `x,y,re,im,abs` table for external surface plots.
    #[arg(long, value_name = "CSV")]
    pub surface: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FrftArgs {
    /// PGM image or FRC1 complex field.
    #[arg(long, value_name = "FILE")]
    pub input: PathBuf,
    /// FRC1 complex field.
    #[arg(long, value_name = "FILE")]
    pub output: PathBuf,
    #[arg(long, value_parser = parse_order, value_name = "A1,A2", allow_hyphen_values = true)]
    pub order: [Angle; 2],
    #[arg(long, default_value = "fast", value_name = "direct|fast")]
    pub path: Path,
    #[command(flatten)]
    pub render: RenderArgs,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("operator").required(true).args(["beta", "transform_axis", "laplacian"])))]
pub struct RieszArgs {
    /// PGM image or FRC1 complex field.
    #[arg(long, value_name = "FILE")]
    pub input: PathBuf,
    /// FRC1 complex field.
    #[arg(long, value_name = "FILE")]
    pub output: PathBuf,
    #[arg(long, value_parser = parse_order, value_name = "A1,A2", allow_hyphen_values = true)]
    pub order: [Angle; 2],
    /// Riesz potential of order β in (0, 2).
    #[arg(long, value_parser = parse_open_0_2)]
    pub beta: Option<f64>,
    /// Riesz transform along axis 1 (x) or 2 (y).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2), value_name = "J")]
    pub transform_axis: Option<u8>,
    /// Fractional Laplacian of order z in (0, 2).
    #[arg(long, value_parser = parse_open_0_2, value_name = "Z")]
    pub laplacian: Option<f64>,
    /// Evaluate the potential by the spatial double sum (sides up to 64).
    #[arg(long, requires = "beta")]
    pub oracle: bool,
    #[arg(long, default_value = "fast", value_name = "direct|fast")]
    pub path: Path,
    #[command(flatten)]
    pub render: RenderArgs,
}

#[derive(Debug, Args)]
pub struct EncryptArgs {
    /// PGM image to encrypt.
    #[arg(long, value_name = "PGM")]
    pub image: PathBuf,
    /// FRC1 output.
    #[arg(long, value_name = "FILE")]
    pub cipher: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub key: PathBuf,
    /// Leave out the Riesz-potential channel.
    #[arg(long)]
    pub baseline_frft: bool,
    #[arg(long, default_value = "fast", value_name = "direct|fast")]
    pub path: Path,
}

#[derive(Debug, Args)]
pub struct DecryptArgs {
    /// FRC1 input.
    #[arg(long, value_name = "FILE")]
    pub cipher: PathBuf,
    /// PGM output.
    #[arg(long, value_name = "PGM")]
    pub image: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub key: PathBuf,
    /// Original image; prints the MSE of the decrypted result against it.
    #[arg(long, value_name = "PGM")]
    pub reference: Option<PathBuf>,
    #[arg(long)]
    pub baseline_frft: bool,
    #[arg(long, default_value = "fast", value_name = "direct|fast")]
    pub path: Path,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_name = "PGM")]
    pub image: PathBuf,
    #[arg(long, value_name = "FILE")]
    pub key: PathBuf,
    #[arg(long, value_name = "beta|alpha1|alpha2|gamma1|gamma2")]
    pub param: KeyParam,
    /// Deviation range `lo:hi`, radians for angles.
    #[arg(long, value_parser = parse_range, value_name = "LO:HI", allow_hyphen_values = true)]
    pub range: (f64, f64),
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub steps: u32,
    /// `deviation,mse` CSV.
    #[arg(long, value_name = "CSV")]
    pub out: PathBuf,
    #[arg(long)]
    pub baseline_frft: bool,
    #[arg(long, default_value = "fast", value_name = "direct|fast")]
    pub path: Path,
}

#[derive(Debug, Args)]
pub struct KeyArgs {
    #[arg(long, value_parser = parse_order, value_name = "A1,A2", allow_hyphen_values = true)]
    pub alpha: [Angle; 2],
    #[arg(long, value_parser = parse_order, value_name = "G1,G2", allow_hyphen_values = true)]
    pub gamma: [Angle; 2],
    #[arg(long, value_parser = parse_open_0_2)]
    pub beta: f64,
    #[arg(long)]
    pub seed1: u64,
    #[arg(long)]
    pub seed2: u64,
    #[arg(long, value_name = "FILE")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Side length, even.
    #[arg(long, default_value_t = 256, value_parser = parse_even_side)]
    pub size: usize,
    #[arg(long, value_name = "PGM")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Frequency grid side.
    #[arg(long, default_value_t = 128, value_parser = clap::value_parser!(u32).range(2..=4096))]
    pub size: u32,
    /// Relative error added to every potential symbol value, to confirm that
    /// failures are reported.
    #[arg(long, default_value_t = 0.0, hide = true, allow_hyphen_values = true)]
    pub perturb: f64,
}

fn parse_order(s: &str) -> Result<[Angle; 2], String> {
    let v = parse_angle_list(s).map_err(|e| e.to_string())?;
    <[Angle; 2]>::try_from(v).map_err(|v| format!("expected two angles, got {}", v.len()))
}

fn parse_open_0_2(s: &str) -> Result<f64, String> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("`{s}` is not a number"))?;
    if v > 0.0 && v < 2.0 {
        Ok(v)
    } else {
        Err(format!("{v} outside (0, 2)"))
    }
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected `lo:hi`")?;
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("`{t}` is not a finite number"))
    };
    let (lo, hi) = (num(lo)?, num(hi)?);
    if lo > hi {
        return Err(format!("empty range {lo}:{hi}"));
    }
    Ok((lo, hi))
}

fn parse_even_side(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("`{s}` is not a size"))?;
    if n == 0 || n % 2 == 1 || n > 1 << 14 {
        return Err(format!("size {n} must be even and in 2..=16384"));
    }
    Ok(n)
}
