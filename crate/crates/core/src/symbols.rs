//! Fractional multipliers evaluated on the scaled frequency `ũ = (u₁·csc α₁, u₂·csc α₂)`.
//!
//! The `ũ = 0` bin is singular for the Riesz potential and the Laplacian. A
//! [`DcPolicy`] replaces `|ũ|` there by a fixed radius, and both symbols use the
//! same radius, so the pair stays exactly reciprocal and the potential keeps its
//! semigroup property on the whole grid.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{coordinates, spacing, ComplexGrid};
use crate::order::FrftOrder;

/// The radius substituted for `|ũ|` at the DC bin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DcPolicy {
    /// Smallest nonzero `|ũ|` on the grid.
    #[default]
    SmallestNonzero,
    /// Geometric mean of `|ũ|` over the DC frequency cell,
    /// `exp(⟨ln|ũ|⟩_cell)`, in closed form.
    CellGeometricMean,
}

/// `⟨ln r⟩` over the rectangle `[−a, a] × [−b, b]`.
fn mean_log_radius(a: f64, b: f64) -> f64 {
    let ab = a * b;
    (ab * (a * a + b * b).ln() - 3.0 * ab + a * a * (b / a).atan() + b * b * (a / b).atan())
        / (2.0 * ab)
}

/// `ũ` and `|ũ|` for every bin of one (order, shape) pair.
#[derive(Debug)]
pub struct ScaledFrequencyGrid {
    width: usize,
    height: usize,
    u1: Vec<f64>,
    u2: Vec<f64>,
    modulus: Vec<f64>,
    smallest_nonzero: f64,
    cell_radius: f64,
}

type CacheKey = (u64, u64, usize, usize);

const CACHE_CAPACITY: usize = 64;

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<ScaledFrequencyGrid>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<ScaledFrequencyGrid>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl ScaledFrequencyGrid {
    /// Builds the grid without touching the cache.
    pub fn build(order: &FrftOrder, width: usize, height: usize) -> Result<Self> {
        if order.len() != 2 {
            return Err(Error::invalid("scaled frequency needs 2 angles"));
        }
        order.require_generic("scaled frequency")?;
        if width == 0 || height == 0 {
            return Err(Error::invalid("empty frequency grid"));
        }
        let (c1, c2) = (order.axis(0).csc, order.axis(1).csc);
        let u1: Vec<f64> = coordinates(width).into_iter().map(|u| u * c1).collect();
        let u2: Vec<f64> = coordinates(height).into_iter().map(|u| u * c2).collect();
        let mut modulus = Vec::with_capacity(width * height);
        let mut smallest = f64::INFINITY;
        for &v in &u2 {
            for &w in &u1 {
                let m = w.hypot(v);
                if m > 0.0 && m < smallest {
                    smallest = m;
                }
                modulus.push(m);
            }
        }
        let a = spacing(width) * c1.abs() / 2.0;
        let b = spacing(height) * c2.abs() / 2.0;
        // A 1×1 grid has no nonzero bin; fall back to the cell radius.
        let cell_radius = mean_log_radius(a, b).exp();
        if !smallest.is_finite() {
            smallest = cell_radius;
        }
        Ok(ScaledFrequencyGrid {
            width,
            height,
            u1,
            u2,
            modulus,
            smallest_nonzero: smallest,
            cell_radius,
        })
    }

    /// Shared, cached grid for `(order, width, height)`.
    pub fn get(order: &FrftOrder, width: usize, height: usize) -> Result<Arc<Self>> {
        if order.len() != 2 {
            return Err(Error::invalid("scaled frequency needs 2 angles"));
        }
        let key = (
            order.axis(0).angle.to_bits(),
            order.axis(1).angle.to_bits(),
            width,
            height,
        );
        let mut map = cache().lock().unwrap_or_else(|e| e.into_inner());
        if let Some(g) = map.get(&key) {
            return Ok(Arc::clone(g));
        }
        let g = Arc::new(Self::build(order, width, height)?);
        if map.len() >= CACHE_CAPACITY {
            map.clear();
        }
        map.insert(key, Arc::clone(&g));
        Ok(g)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// `ũ` at column `c`, row `r`.
    pub fn at(&self, c: usize, r: usize) -> [f64; 2] {
        [self.u1[c], self.u2[r]]
    }

    /// Row-major `|ũ|`.
    pub fn modulus(&self) -> &[f64] {
        &self.modulus
    }

    pub fn dc_radius(&self, policy: DcPolicy) -> f64 {
        match policy {
            DcPolicy::SmallestNonzero => self.smallest_nonzero,
            DcPolicy::CellGeometricMean => self.cell_radius,
        }
    }
}

/// `ũ = (u₁·csc α₁, u₂·csc α₂)`.
pub fn scaled_frequency(order: &FrftOrder, u: [f64; 2]) -> Result<[f64; 2]> {
    if order.len() != 2 {
        return Err(Error::invalid("scaled frequency needs 2 angles"));
    }
    order.require_generic("scaled frequency")?;
    Ok([u[0] * order.axis(0).csc, u[1] * order.axis(1).csc])
}

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta < 2.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("beta {beta} outside (0, 2)")))
    }
}

fn check_z(z: f64) -> Result<()> {
    if z > 0.0 && z.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "laplacian exponent {z} must be positive"
        )))
    }
}

fn radius(ut: [f64; 2], dc_radius: f64) -> f64 {
    let r = ut[0].hypot(ut[1]);
    if r > 0.0 {
        r
    } else {
        dc_radius
    }
}

/// `(2π)^{−β}·|ũ|^{−β}`, with `dc_radius` standing in for `|ũ|` at `ũ = 0`.
pub fn riesz_potential_symbol(beta: f64, ut: [f64; 2], dc_radius: f64) -> Result<f64> {
    check_beta(beta)?;
    Ok((2.0 * PI * radius(ut, dc_radius)).powf(-beta))
}

/// `(2π)^z·|ũ|^z`, computed as the reciprocal of the potential symbol.
pub fn laplacian_symbol(z: f64, ut: [f64; 2], dc_radius: f64) -> Result<f64> {
    check_z(z)?;
    Ok((2.0 * PI * radius(ut, dc_radius)).powf(-z).recip())
}

/// `−i·ũ_j/|ũ|` for `j ∈ {1, 2}`, zero at `ũ = 0`.
pub fn riesz_transform_multiplier(j: usize, ut: [f64; 2]) -> Result<Complex64> {
    if !(1..=2).contains(&j) {
        return Err(Error::invalid(format!(
            "Riesz transform axis {j} not in 1..=2"
        )));
    }
    let r = ut[0].hypot(ut[1]);
    if r == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(Complex64::new(0.0, -ut[j - 1] / r))
}

/// `∏_j (2πi·ũ_j)^{ς_j}`.
pub fn monomial_symbol(sigma: [u32; 2], ut: [f64; 2]) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for (&s, &u) in sigma.iter().zip(&ut) {
        let f = Complex64::new(0.0, 2.0 * PI * u);
        for _ in 0..s {
            acc *= f;
        }
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SymbolKind {
    RieszPotential {
        beta: f64,
    },
    /// Axis is 1-based.
    RieszTransform {
        axis: usize,
    },
    FracLaplacian {
        z: f64,
    },
    Monomial([u32; 2]),
}

/// A multiplier, the order whose scaled frequency it is evaluated on, and the DC rule.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolSpec {
    pub kind: SymbolKind,
    pub order: FrftOrder,
    pub dc: DcPolicy,
}

impl SymbolSpec {
    pub fn new(kind: SymbolKind, order: FrftOrder) -> Result<Self> {
        let spec = SymbolSpec {
            kind,
            order,
            dc: DcPolicy::default(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_dc(mut self, dc: DcPolicy) -> Self {
        self.dc = dc;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.order.len() != 2 {
            return Err(Error::invalid("symbols need a 2-axis order"));
        }
        self.order.require_generic("symbol")?;
        match self.kind {
            SymbolKind::RieszPotential { beta } => check_beta(beta),
            SymbolKind::FracLaplacian { z } => check_z(z),
            SymbolKind::RieszTransform { axis } => {
                riesz_transform_multiplier(axis, [0.0; 2]).map(|_| ())
            }
            SymbolKind::Monomial(_) => Ok(()),
        }
    }

    /// Value at one scaled frequency.
    pub fn value(&self, ut: [f64; 2], dc_radius: f64) -> Result<Complex64> {
        Ok(match self.kind {
            SymbolKind::RieszPotential { beta } => {
                riesz_potential_symbol(beta, ut, dc_radius)?.into()
            }
            SymbolKind::FracLaplacian { z } => laplacian_symbol(z, ut, dc_radius)?.into(),
            SymbolKind::RieszTransform { axis } => riesz_transform_multiplier(axis, ut)?,
            SymbolKind::Monomial(s) => monomial_symbol(s, ut),
        })
    }

    /// The multiplier sampled on a `width × height` frequency grid.
    pub fn multiplier(&self, width: usize, height: usize) -> Result<ComplexGrid> {
        self.validate()?;
        let fg = ScaledFrequencyGrid::get(&self.order, width, height)?;
        let dc = fg.dc_radius(self.dc);
        let mut data = Vec::with_capacity(width * height);
        for r in 0..height {
            for c in 0..width {
                data.push(self.value(fg.at(c, r), dc)?);
            }
        }
        ComplexGrid::new(width, height, data)
    }
}
