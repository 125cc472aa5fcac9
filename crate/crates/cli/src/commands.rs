use std::path::Path as FsPath;
use std::process::ExitCode;

use anyhow::{Context, Result};
use frft_riesz::crypto::{self, load_key, save_key, EncryptionKey, Scheme};
use frft_riesz::io::{
    amplitude_map, decode_cfield, decode_pgm, denormalize, export_surface_csv, load_cfield,
    load_pgm, normalize, save_cfield, save_pgm, synth_test_image, CFIELD_MAGIC,
};
use frft_riesz::operators::{
    fractional_laplacian, riesz_potential, riesz_potential_spatial_oracle, riesz_transform,
};
use frft_riesz::selftest::{run_selftest, SelfTestConfig};
use frft_riesz::{frft_2d, ComplexGrid, FrftOrder};

use crate::args::{
    DecryptArgs, EncryptArgs, FrftArgs, KeyArgs, RenderArgs, RieszArgs, SelftestArgs, SweepArgs,
    SynthArgs,
};
use crate::Usage;

/// Reads an FRC1 field as is, or a PGM scaled to `[0, 1]`.
fn load_field(path: &FsPath) -> Result<ComplexGrid> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let grid = if bytes.starts_with(CFIELD_MAGIC) {
        decode_cfield(&bytes)?
    } else {
        ComplexGrid::from_real(&normalize(&decode_pgm(&bytes)?))
    };
    Ok(grid)
}

fn render(grid: &ComplexGrid, r: &RenderArgs) -> Result<()> {
    if let Some(p) = &r.amplitude {
        save_pgm(&amplitude_map(grid, r.scale)?, p)?;
    }
    if let Some(p) = &r.surface {
        export_surface_csv(grid, p)?;
    }
    Ok(())
}

fn scheme(baseline: bool) -> Scheme {
    if baseline {
        Scheme::FrftOnly
    } else {
        Scheme::RieszPotential
    }
}

pub fn frft(a: FrftArgs) -> Result<ExitCode> {
    let order = FrftOrder::from_angles(&a.order)?;
    let input = load_field(&a.input)?;
    let out = frft_2d(&input, &order, a.path)?;
    save_cfield(&out, &a.output)?;
    render(&out, &a.render)?;
    Ok(ExitCode::SUCCESS)
}

pub fn riesz(a: RieszArgs) -> Result<ExitCode> {
    let order = FrftOrder::from_angles(&a.order)?;
    let input = load_field(&a.input)?;
    let out = match (a.beta, a.transform_axis, a.laplacian) {
        (Some(beta), _, _) if a.oracle => riesz_potential_spatial_oracle(&input, &order, beta)?,
        (Some(beta), _, _) => riesz_potential(&input, &order, beta, a.path)?,
        (_, Some(j), _) => riesz_transform(&input, &order, usize::from(j), a.path)?,
        (_, _, Some(z)) => fractional_laplacian(&input, &order, z, a.path)?,
        _ => unreachable!("clap requires one operator"),
    };
    save_cfield(&out, &a.output)?;
    render(&out, &a.render)?;
    Ok(ExitCode::SUCCESS)
}

pub fn encrypt(a: EncryptArgs) -> Result<ExitCode> {
    let key = load_key(&a.key)?;
    let image = normalize(&load_pgm(&a.image)?);
    let cipher = crypto::encrypt(&image, &key, scheme(a.baseline_frft), a.path)?;
    save_cfield(&cipher, &a.cipher)?;
    Ok(ExitCode::SUCCESS)
}

pub fn decrypt(a: DecryptArgs) -> Result<ExitCode> {
    let key = load_key(&a.key)?;
    let reference = a.reference.as_deref().map(load_pgm).transpose()?;
    let cipher = load_cfield(&a.cipher)?;
    let plain = crypto::decrypt(&cipher, &key, scheme(a.baseline_frft), a.path)?;
    save_pgm(&denormalize(&plain), &a.image)?;
    if let Some(r) = reference {
        println!("mse {:e}", crypto::mse(&plain, &normalize(&r))?);
    }
    Ok(ExitCode::SUCCESS)
}

/// `steps` points from `lo` to `hi` inclusive; the midpoint of a symmetric
/// range is exactly zero.
fn deviations(lo: f64, hi: f64, steps: u32) -> Vec<f64> {
    if steps == 1 {
        return vec![lo];
    }
    let last = f64::from(steps - 1);
    (0..steps)
        .map(|i| {
            let t = f64::from(i) / last;
            lo * (1.0 - t) + hi * t
        })
        .collect()
}

pub fn sweep(a: SweepArgs) -> Result<ExitCode> {
    let (lo, hi) = a.range;
    if a.steps == 1 && lo != hi {
        return Err(Usage(format!("--steps 1 needs lo == hi, got {lo}:{hi}")).into());
    }
    let key = load_key(&a.key)?;
    let image = normalize(&load_pgm(&a.image)?);
    let devs = deviations(lo, hi, a.steps);
    let s = crypto::key_sensitivity_sweep(
        &image,
        &key,
        a.param,
        &devs,
        scheme(a.baseline_frft),
        a.path,
    )?;
    frft_riesz::io::write_atomic(&a.out, s.to_csv().as_bytes())?;
    match s.argmin() {
        Some(i) => println!(
            "{}: minimum mse {:e} at deviation {:e}",
            a.param,
            s.mse[i].expect("argmin is defined"),
            s.deviations[i]
        ),
        None => println!("{}: no valid key in the range", a.param),
    }
    Ok(ExitCode::SUCCESS)
}

pub fn key(a: KeyArgs) -> Result<ExitCode> {
    let key = EncryptionKey::new(a.alpha, a.gamma, a.beta, a.seed1, a.seed2)
        .map_err(|e| Usage(e.to_string()))?;
    save_key(&key, &a.output)?;
    Ok(ExitCode::SUCCESS)
}

pub fn synth(a: SynthArgs) -> Result<ExitCode> {
    save_pgm(&synth_test_image(a.size)?, &a.output)?;
    Ok(ExitCode::SUCCESS)
}

pub fn selftest(a: SelftestArgs) -> Result<ExitCode> {
    let cfg = SelfTestConfig {
        size: a.size as usize,
        potential_perturbation: a.perturb,
        ..SelfTestConfig::default()
    };
    let outcomes = run_selftest(&cfg)?;
    let mut ok = true;
    for o in &outcomes {
        let verdict = if o.passed() { "PASS" } else { "FAIL" };
        println!(
            "{verdict} {}: max error {:.3e} (tolerance {:.0e})",
            o.name, o.max_error, o.tolerance
        );
        ok &= o.passed();
    }
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_grid() {
        let d = deviations(-0.2, 0.2, 41);
        assert_eq!(d.len(), 41);
        assert_eq!(d[0], -0.2);
        assert_eq!(d[20], 0.0);
        assert_eq!(d[40], 0.2);
        assert_eq!(deviations(0.1, 0.1, 1), vec![0.1]);
    }
}
