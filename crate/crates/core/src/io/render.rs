use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::grid::{coordinates, ComplexGrid};

use super::pgm::ImageU8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AmplitudeScale {
    #[default]
    Linear,
    /// `log(1 + |s|)` before normalizing.
    Log,
}

impl std::str::FromStr for AmplitudeScale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(AmplitudeScale::Linear),
            "log" => Ok(AmplitudeScale::Log),
            other => Err(Error::invalid(format!(
                "unknown scale `{other}` (linear or log)"
            ))),
        }
    }
}

/// `|s|` scaled so the maximum maps to 255. An all-zero field renders black.
pub fn amplitude_map(grid: &ComplexGrid, scale: AmplitudeScale) -> Result<ImageU8> {
    if !grid.is_finite() {
        return Err(Error::invalid("amplitude map of a non-finite field"));
    }
    let amp: Vec<f64> = grid
        .data()
        .iter()
        .map(|z| match scale {
            AmplitudeScale::Linear => z.norm(),
            AmplitudeScale::Log => z.norm().ln_1p(),
        })
        .collect();
    let max = amp.iter().copied().fold(0.0, f64::max);
    let pixels = amp
        .iter()
        .map(|&a| {
            if max > 0.0 {
                (a / max * 255.0).round() as u8
            } else {
                0
            }
        })
        .collect();
    ImageU8::new(grid.width(), grid.height(), pixels)
}

/// `x,y,re,im,abs` rows in row-major order, 17 significant digits.
pub fn surface_csv(grid: &ComplexGrid) -> String {
    let xs = coordinates(grid.width());
    let ys = coordinates(grid.height());
    let mut s = String::with_capacity(96 * (grid.data().len() + 1));
    s.push_str("x,y,re,im,abs\n");
    for (r, &y) in ys.iter().enumerate() {
        for (c, &x) in xs.iter().enumerate() {
            let z = grid.get(c, r);
            let _ = writeln!(
                s,
                "{x:.16e},{y:.16e},{:.16e},{:.16e},{:.16e}",
                z.re,
                z.im,
                z.norm()
            );
        }
    }
    s
}

pub fn export_surface_csv(grid: &ComplexGrid, path: &Path) -> Result<()> {
    super::write_atomic(path, surface_csv(grid).as_bytes())
}
