//! Sampled fractional Fourier transform on the centered grid.
//!
//! An axis angle α is split as `α = k·π + r` with `|r| ≤ π/2`. For odd `k`
//! the output is reflected through the grid center, which is exact because the
//! kernel depends on α only through `cot α` and `csc α`. The remaining order
//! `r` is applied as a chirp–convolution–chirp shear,
//!
//! ```text
//! F_r = e^{ir/2} · M_p · C_r · M_p,   p = −tan(r/2)/2,
//! ```
//!
//! where `M_p` multiplies by `exp(2πi·p·x²)` and `C_r` is the circular
//! convolution whose DFT eigenvalues are `exp(−iπ·sin r·s²/N)` for the signed
//! bin index `s`. On a grid with `Δ = 1/√N` this operator is unitary,
//! `F_{−α}` inverts `F_α` exactly, and `r = π/2` gives the unitary centered DFT.
//!
//! [`frft_1d_direct`] evaluates the operator through explicit O(N²) sums;
//! [`frft_1d_fast`] uses FFTs. Both compute the same matrix.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::grid::{coordinates, reflected_index, ComplexGrid};
use crate::order::{AxisOrder, FrftOrder, Regime};

/// Which evaluation route a transform takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Path {
    Direct,
    #[default]
    Fast,
}

impl std::str::FromStr for Path {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Path::Direct),
            "fast" => Ok(Path::Fast),
            other => Err(Error::invalid(format!(
                "unknown path `{other}` (expected direct or fast)"
            ))),
        }
    }
}

/// `exp(2πi·a·x_k²)` along one axis.
fn axis_chirp(a: f64, n: usize) -> Vec<Complex64> {
    coordinates(n)
        .into_iter()
        .map(|x| Complex64::from_polar(1.0, 2.0 * PI * a * x * x))
        .collect()
}

/// `e^{2πi·m/n}` for `m = 0..n`, indexed exactly by integer phase.
fn roots_of_unity(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|m| Complex64::from_polar(1.0, 2.0 * PI * m as f64 / n as f64))
        .collect()
}

fn reflect_in_place(v: &mut [Complex64]) {
    let n = v.len();
    let src = v.to_vec();
    for (k, out) in v.iter_mut().enumerate() {
        *out = src[reflected_index(k, n)];
    }
}

enum Kernel {
    Copy,
    Shear {
        /// `exp(2πi·p·x²)`.
        pre: Vec<Complex64>,
        /// `e^{ir/2}·exp(2πi·p·x²)`.
        post: Vec<Complex64>,
        route: Route,
    },
}

enum Route {
    /// Circulant kernel in the sample domain.
    Direct(Vec<Complex64>),
    Fast {
        /// Eigenvalues divided by `N` so the inverse FFT needs no rescaling.
        eig: Vec<Complex64>,
        fwd: Arc<dyn Fft<f64>>,
        inv: Arc<dyn Fft<f64>>,
    },
}

/// Precomputed 1D transform for one axis length and angle.
pub struct AxisPlan {
    n: usize,
    reflect: bool,
    kernel: Kernel,
}

impl AxisPlan {
    pub fn new(axis: &AxisOrder, n: usize, path: Path) -> Result<Self> {
        Self::with_planner(axis, n, path, &mut FftPlanner::new())
    }

    fn with_planner(
        axis: &AxisOrder,
        n: usize,
        path: Path,
        planner: &mut FftPlanner<f64>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("transform length is zero"));
        }
        match axis.regime {
            Regime::Identity => {
                return Ok(AxisPlan {
                    n,
                    reflect: false,
                    kernel: Kernel::Copy,
                })
            }
            Regime::Reflection => {
                return Ok(AxisPlan {
                    n,
                    reflect: true,
                    kernel: Kernel::Copy,
                })
            }
            Regime::Generic => {}
        }
        if n % 2 == 1 {
            return Err(Error::invalid(format!(
                "axis length {n} is odd; fractional orders need an even length"
            )));
        }
        let (reflect, r) = axis.reduced();
        let p = -(r / 2.0).tan() / 2.0;
        let pre = axis_chirp(p, n);
        let phase = Complex64::from_polar(1.0, r / 2.0);
        let post = pre.iter().map(|&e| phase * e).collect();

        let h = (n / 2) as i64;
        let sin_r = r.sin();
        let inv_n = 1.0 / n as f64;
        let eig: Vec<Complex64> = (0..n as i64)
            .map(|nu| {
                let s = ((nu + h) % n as i64 - h) as f64;
                Complex64::from_polar(inv_n, -PI * sin_r * s * s / n as f64)
            })
            .collect();

        let route = match path {
            Path::Fast => Route::Fast {
                eig,
                fwd: planner.plan_fft_forward(n),
                inv: planner.plan_fft_inverse(n),
            },
            Path::Direct => {
                let w = roots_of_unity(n);
                let kernel = (0..n)
                    .map(|t| {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for (nu, &l) in eig.iter().enumerate() {
                            acc += l * w[(nu * t) % n];
                        }
                        acc
                    })
                    .collect();
                Route::Direct(kernel)
            }
        };
        Ok(AxisPlan {
            n,
            reflect,
            kernel: Kernel::Shear { pre, post, route },
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Transforms `v` in place; `v.len()` must equal the plan length.
    pub fn apply(&self, v: &mut [Complex64]) {
        debug_assert_eq!(v.len(), self.n);
        if let Kernel::Shear { pre, post, route } = &self.kernel {
            for (z, e) in v.iter_mut().zip(pre) {
                *z *= e;
            }
            match route {
                Route::Fast { eig, fwd, inv } => {
                    fwd.process(v);
                    for (z, l) in v.iter_mut().zip(eig) {
                        *z *= l;
                    }
                    inv.process(v);
                }
                Route::Direct(kernel) => {
                    let g = v.to_vec();
                    let n = self.n;
                    for (l, out) in v.iter_mut().enumerate() {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for (j, &gj) in g.iter().enumerate() {
                            acc += kernel[(l + n - j) % n] * gj;
                        }
                        *out = acc;
                    }
                }
            }
            for (z, e) in v.iter_mut().zip(post) {
                *z *= e;
            }
        }
        if self.reflect {
            reflect_in_place(v);
        }
    }
}

fn check_finite(samples: &[Complex64]) -> Result<()> {
    if samples.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::invalid("input contains non-finite samples"))
    }
}

fn frft_1d(samples: &[Complex64], alpha: f64, path: Path) -> Result<Vec<Complex64>> {
    check_finite(samples)?;
    let plan = AxisPlan::new(&AxisOrder::new(alpha)?, samples.len(), path)?;
    let mut out = samples.to_vec();
    plan.apply(&mut out);
    Ok(out)
}

/// 1D transform by explicit sums, O(N²).
pub fn frft_1d_direct(samples: &[Complex64], alpha: f64) -> Result<Vec<Complex64>> {
    frft_1d(samples, alpha, Path::Direct)
}

/// 1D transform through FFTs, O(N log N).
pub fn frft_1d_fast(samples: &[Complex64], alpha: f64) -> Result<Vec<Complex64>> {
    frft_1d(samples, alpha, Path::Fast)
}

fn transpose(data: &[Complex64], width: usize, height: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); data.len()];
    for r in 0..height {
        for c in 0..width {
            out[c * height + r] = data[r * width + c];
        }
    }
    out
}

/// Separable 2D transform: axis 0 along rows, then axis 1 along columns.
pub fn frft_2d(grid: &ComplexGrid, order: &FrftOrder, path: Path) -> Result<ComplexGrid> {
    if order.len() != 2 {
        return Err(Error::invalid(format!(
            "2D transform needs 2 angles, got {}",
            order.len()
        )));
    }
    check_finite(grid.data())?;
    let (w, h) = grid.shape();
    let mut planner = FftPlanner::new();
    let row_plan = AxisPlan::with_planner(order.axis(0), w, path, &mut planner)?;
    let col_plan = AxisPlan::with_planner(order.axis(1), h, path, &mut planner)?;

    let mut data = grid.data().to_vec();
    data.par_chunks_mut(w).for_each(|row| row_plan.apply(row));
    let mut cols = transpose(&data, w, h);
    cols.par_chunks_mut(h).for_each(|col| col_plan.apply(col));
    ComplexGrid::new(w, h, transpose(&cols, h, w))
}

/// Inverse transform, i.e. the transform of order `−α`.
pub fn ifrft_2d(grid: &ComplexGrid, order: &FrftOrder, path: Path) -> Result<ComplexGrid> {
    frft_2d(grid, &order.negate(), path)
}

/// `e_α(x) = exp(2πi·Σ_k a(α_k)·x_k²)` on a `width × height` grid.
pub fn chirp_field(order: &FrftOrder, width: usize, height: usize) -> Result<ComplexGrid> {
    if order.len() != 2 {
        return Err(Error::invalid("chirp field needs 2 angles"));
    }
    order.require_generic("chirp field")?;
    let cx = axis_chirp(order.axis(0).a, width);
    let cy = axis_chirp(order.axis(1).a, height);
    ComplexGrid::from_index_fn(width, height, |c, r| cx[c] * cy[r])
}
