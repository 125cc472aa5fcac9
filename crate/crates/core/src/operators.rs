//! Chirp-conjugated fractional operators.
//!
//! Every multiplier operator follows the same three stages: transform with
//! order α, multiply by a symbol on the scaled frequency, transform back with
//! order −α. The Riesz potential additionally has a spatial form,
//!
//! ```text
//! I_β^α f(x) = (1/γ(β))·e_{−α}(x)·∫ f(y)·e_α(y)·|x − y|^{β−2} dy,
//! ```
//!
//! which is evaluated here by brute force ([`riesz_potential_spatial_oracle`])
//! and by FFT linear convolution ([`riesz_potential_convolution`]).

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::frft::{chirp_field, frft_2d, ifrft_2d, Path};
use crate::gamma::gamma_beta;
use crate::grid::ComplexGrid;
use crate::order::FrftOrder;
use crate::symbols::{SymbolKind, SymbolSpec};

/// Largest side accepted by the O(N⁴) spatial oracle.
pub const ORACLE_MAX_SIDE: usize = 64;

/// `F_{−α}[m ⊙ F_α f]` for a precomputed multiplier grid.
pub fn apply_multiplier_grid(
    grid: &ComplexGrid,
    order: &FrftOrder,
    multiplier: &ComplexGrid,
    path: Path,
) -> Result<ComplexGrid> {
    let g = frft_2d(grid, order, path)?;
    let h = g.hadamard(multiplier)?;
    ifrft_2d(&h, order, path)
}

/// `F_{−α}[m ⊙ F_α f]` with `m` and `α` taken from `spec`.
pub fn apply_multiplier(grid: &ComplexGrid, spec: &SymbolSpec, path: Path) -> Result<ComplexGrid> {
    let m = spec.multiplier(grid.width(), grid.height())?;
    apply_multiplier_grid(grid, &spec.order, &m, path)
}

pub fn riesz_potential(
    grid: &ComplexGrid,
    order: &FrftOrder,
    beta: f64,
    path: Path,
) -> Result<ComplexGrid> {
    let spec = SymbolSpec::new(SymbolKind::RieszPotential { beta }, order.clone())?;
    apply_multiplier(grid, &spec, path)
}

/// `R_j^α f` with a 1-based axis `j`.
pub fn riesz_transform(
    grid: &ComplexGrid,
    order: &FrftOrder,
    axis: usize,
    path: Path,
) -> Result<ComplexGrid> {
    let spec = SymbolSpec::new(SymbolKind::RieszTransform { axis }, order.clone())?;
    apply_multiplier(grid, &spec, path)
}

pub fn fractional_laplacian(
    grid: &ComplexGrid,
    order: &FrftOrder,
    z: f64,
    path: Path,
) -> Result<ComplexGrid> {
    let spec = SymbolSpec::new(SymbolKind::FracLaplacian { z }, order.clone())?;
    apply_multiplier(grid, &spec, path)
}

/// `∫_0^θ sec^β t dt` by composite Simpson.
fn sec_power_integral(beta: f64, theta: f64) -> f64 {
    const STEPS: usize = 2048;
    let h = theta / STEPS as f64;
    let f = |t: f64| t.cos().powf(-beta);
    let mut acc = f(0.0) + f(theta);
    for k in 1..STEPS {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(k as f64 * h);
    }
    acc * h / 3.0
}

/// `∫ |t|^{β−2} dt` over the cell `[−dx/2, dx/2] × [−dy/2, dy/2]`.
pub fn singular_cell_weight(beta: f64, dx: f64, dy: f64) -> f64 {
    let (a, b) = (dx / 2.0, dy / 2.0);
    let theta = (b / a).atan();
    4.0 / beta
        * (a.powf(beta) * sec_power_integral(beta, theta)
            + b.powf(beta) * sec_power_integral(beta, PI / 2.0 - theta))
}

/// Kernel `|t|^{β−2}·Δx·Δy` on all offsets, `(2W−1) × (2H−1)`, zero offset at the center.
fn offset_kernel(beta: f64, width: usize, height: usize) -> Vec<f64> {
    let (dx, dy) = (crate::grid::spacing(width), crate::grid::spacing(height));
    let kw = 2 * width - 1;
    let kh = 2 * height - 1;
    let mut k = Vec::with_capacity(kw * kh);
    for r in 0..kh {
        let ty = (r as f64 - (height - 1) as f64) * dy;
        for c in 0..kw {
            let tx = (c as f64 - (width - 1) as f64) * dx;
            let d = tx.hypot(ty);
            k.push(if d > 0.0 {
                d.powf(beta - 2.0) * dx * dy
            } else {
                singular_cell_weight(beta, dx, dy)
            });
        }
    }
    k
}

fn check_oracle_beta(beta: f64) -> Result<f64> {
    gamma_beta(beta, 2)
}

/// Spatial Riesz potential by explicit double sum, O(N⁴). Sides are capped at
/// [`ORACLE_MAX_SIDE`].
pub fn riesz_potential_spatial_oracle(
    grid: &ComplexGrid,
    order: &FrftOrder,
    beta: f64,
) -> Result<ComplexGrid> {
    let (w, h) = grid.shape();
    if w > ORACLE_MAX_SIDE || h > ORACLE_MAX_SIDE {
        return Err(Error::invalid(format!(
            "spatial oracle limited to {ORACLE_MAX_SIDE}x{ORACLE_MAX_SIDE}, got {w}x{h}"
        )));
    }
    let g_beta = check_oracle_beta(beta)?;
    let e = chirp_field(order, w, h)?;
    let g = grid.hadamard(&e)?;
    let k = offset_kernel(beta, w, h);
    let kw = 2 * w - 1;
    let gd = g.data();
    let mut out = vec![Complex64::new(0.0, 0.0); w * h];
    out.par_chunks_mut(w).enumerate().for_each(|(xr, row)| {
        for (xc, slot) in row.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for yr in 0..h {
                let kr = (xr + h - 1 - yr) * kw;
                for yc in 0..w {
                    acc += gd[yr * w + yc] * k[kr + xc + w - 1 - yc];
                }
            }
            *slot = acc;
        }
    });
    let ed = e.data();
    for (v, ez) in out.iter_mut().zip(ed) {
        *v = ez.conj() * *v / g_beta;
    }
    ComplexGrid::new(w, h, out)
}

fn fft_2d(
    data: &mut [Complex64],
    w: usize,
    h: usize,
    inverse: bool,
    planner: &mut FftPlanner<f64>,
) {
    let (rows, cols) = if inverse {
        (planner.plan_fft_inverse(w), planner.plan_fft_inverse(h))
    } else {
        (planner.plan_fft_forward(w), planner.plan_fft_forward(h))
    };
    data.par_chunks_mut(w).for_each(|r| rows.process(r));
    let mut t = vec![Complex64::new(0.0, 0.0); w * h];
    for r in 0..h {
        for c in 0..w {
            t[c * h + r] = data[r * w + c];
        }
    }
    t.par_chunks_mut(h).for_each(|c| cols.process(c));
    for r in 0..h {
        for c in 0..w {
            data[r * w + c] = t[c * h + r];
        }
    }
}

/// Spatial Riesz potential through an FFT linear convolution with the same
/// kernel and singular-cell weight as the oracle. Any grid size.
pub fn riesz_potential_convolution(
    grid: &ComplexGrid,
    order: &FrftOrder,
    beta: f64,
) -> Result<ComplexGrid> {
    let g_beta = check_oracle_beta(beta)?;
    let (w, h) = grid.shape();
    let e = chirp_field(order, w, h)?;
    let g = grid.hadamard(&e)?;
    let k = offset_kernel(beta, w, h);
    let (kw, kh) = (2 * w - 1, 2 * h - 1);
    let (lw, lh) = (2 * w, 2 * h);

    let mut gp = vec![Complex64::new(0.0, 0.0); lw * lh];
    for r in 0..h {
        gp[r * lw..r * lw + w].copy_from_slice(&g.data()[r * w..(r + 1) * w]);
    }
    // Offset t goes to index t mod L.
    let mut kp = vec![Complex64::new(0.0, 0.0); lw * lh];
    for r in 0..kh {
        let ty = r as isize - (h as isize - 1);
        let pr = ty.rem_euclid(lh as isize) as usize;
        for c in 0..kw {
            let tx = c as isize - (w as isize - 1);
            let pc = tx.rem_euclid(lw as isize) as usize;
            kp[pr * lw + pc] = Complex64::new(k[r * kw + c], 0.0);
        }
    }
    let mut planner = FftPlanner::new();
    fft_2d(&mut gp, lw, lh, false, &mut planner);
    fft_2d(&mut kp, lw, lh, false, &mut planner);
    for (a, b) in gp.iter_mut().zip(&kp) {
        *a *= b;
    }
    fft_2d(&mut gp, lw, lh, true, &mut planner);
    let scale = 1.0 / ((lw * lh) as f64 * g_beta);
    let mut out = Vec::with_capacity(w * h);
    for r in 0..h {
        for c in 0..w {
            out.push(e.get(c, r).conj() * gp[r * lw + c] * scale);
        }
    }
    ComplexGrid::new(w, h, out)
}

/// How [`chirp_derivative`] differentiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DerivativeMethod {
    /// `F_{−α}[(2πi·ũ)^ς ⊙ F_α f]`.
    #[default]
    Spectral,
    /// Fourth-order centered differences of `e_α·f` on a periodic grid, then `e_{−α}·`.
    FiniteDifference,
}

impl std::str::FromStr for DerivativeMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spectral" => Ok(DerivativeMethod::Spectral),
            "fd" | "finite-difference" => Ok(DerivativeMethod::FiniteDifference),
            other => Err(Error::invalid(format!(
                "unknown derivative method `{other}`"
            ))),
        }
    }
}

/// Fourth-order periodic difference along one axis: `order` is 1 or 2.
fn difference(data: &[Complex64], w: usize, h: usize, axis: usize, order: u32) -> Vec<Complex64> {
    let n = if axis == 0 { w } else { h };
    let d = crate::grid::spacing(n);
    let at = |c: usize, r: usize, k: isize| {
        if axis == 0 {
            data[r * w + (c as isize + k).rem_euclid(n as isize) as usize]
        } else {
            data[(r as isize + k).rem_euclid(n as isize) as usize * w + c]
        }
    };
    let mut out = Vec::with_capacity(w * h);
    for r in 0..h {
        for c in 0..w {
            let f = |k| at(c, r, k);
            out.push(match order {
                1 => (-f(2) + 8.0 * f(1) - 8.0 * f(-1) + f(-2)) / (12.0 * d),
                _ => (-f(2) + 16.0 * f(1) - 30.0 * f(0) + 16.0 * f(-1) - f(-2)) / (12.0 * d * d),
            });
        }
    }
    out
}

/// `e_{−α}·∂^ς(e_α·f)`.
pub fn chirp_derivative(
    grid: &ComplexGrid,
    order: &FrftOrder,
    sigma: [u32; 2],
    method: DerivativeMethod,
    path: Path,
) -> Result<ComplexGrid> {
    match method {
        DerivativeMethod::Spectral => {
            let spec = SymbolSpec::new(SymbolKind::Monomial(sigma), order.clone())?;
            apply_multiplier(grid, &spec, path)
        }
        DerivativeMethod::FiniteDifference => {
            if sigma[0] + sigma[1] > 2 {
                return Err(Error::invalid(format!(
                    "finite differences support |ς| ≤ 2, got ({}, {})",
                    sigma[0], sigma[1]
                )));
            }
            let (w, h) = grid.shape();
            let e = chirp_field(order, w, h)?;
            let mut data = grid.hadamard(&e)?.into_data();
            for (axis, &s) in sigma.iter().enumerate() {
                match s {
                    0 => {}
                    1 | 2 => data = difference(&data, w, h, axis, s),
                    _ => unreachable!(),
                }
            }
            let d = ComplexGrid::new(w, h, data)?;
            d.hadamard(&e.map(|z| z.conj()))
        }
    }
}

/// `Σ_j I_1^α R_j^α (e_{−α}·∂_j(e_α f))`, which reproduces `f` away from the DC bin.
pub fn reconstruct_identity(
    grid: &ComplexGrid,
    order: &FrftOrder,
    path: Path,
    method: DerivativeMethod,
) -> Result<ComplexGrid> {
    let mut acc: Option<ComplexGrid> = None;
    for j in 1..=2usize {
        let mut sigma = [0u32; 2];
        sigma[j - 1] = 1;
        let d = chirp_derivative(grid, order, sigma, method, path)?;
        let r = riesz_transform(&d, order, j, path)?;
        let t = riesz_potential(&r, order, 1.0, path)?;
        acc = Some(match acc {
            None => t,
            Some(a) => {
                let data = a.data().iter().zip(t.data()).map(|(x, y)| x + y).collect();
                ComplexGrid::new(a.width(), a.height(), data)?
            }
        });
    }
    Ok(acc.expect("two axes"))
}

/// `(Σ|f|^p·Δx·Δy)^{1/p}` for `p ≥ 1`.
pub fn lp_norm(grid: &ComplexGrid, p: f64) -> Result<f64> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::invalid(format!(
            "norm exponent {p} must be finite and >= 1"
        )));
    }
    let s: f64 = grid.data().iter().map(|z| z.norm().powf(p)).sum();
    Ok((s * grid.cell_area()).powf(p.recip()))
}

/// `(‖f‖_p, ‖e_α f‖_p)`.
pub fn rotation_invariance_check(
    grid: &ComplexGrid,
    order: &FrftOrder,
    p: f64,
) -> Result<(f64, f64)> {
    let e = chirp_field(order, grid.width(), grid.height())?;
    Ok((lp_norm(grid, p)?, lp_norm(&grid.hadamard(&e)?, p)?))
}

/// The target exponent `q` with `1/q = 1/p − β/2`.
pub fn hls_exponent(beta: f64, p: f64) -> Result<f64> {
    gamma_beta(beta, 2)?;
    if !(p > 1.0 && p < 2.0 / beta) {
        return Err(Error::invalid(format!(
            "p = {p} outside (1, {}) for beta {beta}",
            2.0 / beta
        )));
    }
    Ok((1.0 / p - beta / 2.0).recip())
}

/// `‖I_β^α f‖_q / ‖f‖_p` for each member, with the potential evaluated in
/// the spatial domain.
pub fn hls_ratio(family: &[ComplexGrid], order: &FrftOrder, beta: f64, p: f64) -> Result<Vec<f64>> {
    let q = hls_exponent(beta, p)?;
    family
        .iter()
        .map(|f| {
            let i = riesz_potential_convolution(f, order, beta)?;
            Ok(lp_norm(&i, q)? / lp_norm(f, p)?)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian(n: usize, sigma: f64) -> ComplexGrid {
        let h = (n / 2) as f64;
        ComplexGrid::from_index_fn(n, n, |c, r| {
            let (x, y) = (c as f64 - h, r as f64 - h);
            Complex64::new((-(x * x + y * y) / (2.0 * sigma * sigma)).exp(), 0.0)
        })
        .unwrap()
    }

    #[test]
    fn unit_cell_weight_closed_form() {
        let d = 0.25;
        let want = d * 4.0 * (1.0 + 2f64.sqrt()).ln();
        assert!((singular_cell_weight(1.0, d, d) - want).abs() < 1e-12);
    }

    #[test]
    fn oracle_and_convolution_agree() {
        let f = gaussian(16, 2.0);
        let o = FrftOrder::pair(PI / 4.0, 3.0 * PI / 8.0).unwrap();
        let a = riesz_potential_spatial_oracle(&f, &o, 0.8).unwrap();
        let b = riesz_potential_convolution(&f, &o, 0.8).unwrap();
        assert!(b.rel_l2_error(&a).unwrap() < 1e-12);
    }

    #[test]
    fn oracle_guard() {
        let f = ComplexGrid::zeros(66, 2).unwrap();
        let o = FrftOrder::pair(1.0, 1.0).unwrap();
        assert!(riesz_potential_spatial_oracle(&f, &o, 1.0).is_err());
    }

    #[test]
    fn zero_order_derivative_is_identity() {
        let f = gaussian(16, 3.0);
        let o = FrftOrder::pair(0.4, 2.2).unwrap();
        for m in [
            DerivativeMethod::Spectral,
            DerivativeMethod::FiniteDifference,
        ] {
            let d = chirp_derivative(&f, &o, [0, 0], m, Path::Fast).unwrap();
            assert!(d.rel_l2_error(&f).unwrap() < 1e-13);
        }
        assert!(chirp_derivative(
            &f,
            &o,
            [2, 1],
            DerivativeMethod::FiniteDifference,
            Path::Fast
        )
        .is_err());
    }

    #[test]
    fn hls_exponent_range() {
        assert!((hls_exponent(1.0, 1.5).unwrap() - 6.0).abs() < 1e-12);
        assert!(hls_exponent(1.0, 2.0).is_err());
        assert!(hls_exponent(1.0, 1.0).is_err());
    }

    #[test]
    fn lp_norm_of_constant() {
        let f = ComplexGrid::from_fn(4, 4, |_, _| Complex64::new(0.0, 2.0)).unwrap();
        // 16 cells of area 1/4: ∫|f|^p = 4·2^p.
        assert!((lp_norm(&f, 2.0).unwrap() - 4.0).abs() < 1e-14);
        assert!((lp_norm(&f, 1.0).unwrap() - 8.0).abs() < 1e-14);
    }
}
