//! Transform orders and their per-axis constants.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::angle::Angle;
use crate::error::{Error, Result};

/// `|sin α|` below this is treated as an exact multiple of π.
pub const REGIME_TOLERANCE: f64 = 1e-12;

/// How the kernel of one axis behaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Generic,
    /// α ≡ 0 (mod 2π): `δ(x − u)`.
    Identity,
    /// α ≡ π (mod 2π): `δ(x + u)`.
    Reflection,
}

/// One axis of an order: the angle, its regime, and the kernel constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisOrder {
    pub angle: f64,
    pub regime: Regime,
    /// `cot(α)/2`.
    pub a: f64,
    /// `sec(α)`.
    pub b: f64,
    /// `sqrt(1 − i·cot α)`, principal branch.
    pub c: Complex64,
    /// `1/sin(α)`.
    pub csc: f64,
}

impl AxisOrder {
    pub fn new(angle: f64) -> Result<Self> {
        if !angle.is_finite() {
            return Err(Error::invalid(format!("order angle {angle} is not finite")));
        }
        let (s, c) = angle.sin_cos();
        if s.abs() < REGIME_TOLERANCE {
            let regime = if c > 0.0 {
                Regime::Identity
            } else {
                Regime::Reflection
            };
            return Ok(AxisOrder {
                angle,
                regime,
                a: f64::NAN,
                b: c.recip(),
                c: Complex64::new(f64::NAN, f64::NAN),
                csc: f64::NAN,
            });
        }
        let cot = c / s;
        Ok(AxisOrder {
            angle,
            regime: Regime::Generic,
            a: cot / 2.0,
            b: c.recip(),
            c: Complex64::new(1.0, -cot).sqrt(),
            csc: s.recip(),
        })
    }

    pub fn is_generic(&self) -> bool {
        self.regime == Regime::Generic
    }

    /// Splits the angle as `k·π + r` with `r ∈ [−π/2, π/2]`, after wrapping
    /// into `(−π, π]`. Returns `(reflect, r)` where `reflect` is `k` odd.
    ///
    /// The split is odd-symmetric, so `−α` reduces to `(reflect, −r)`.
    pub(crate) fn reduced(&self) -> (bool, f64) {
        // Work on |α| and restore the sign so the symmetry is exact in floating point.
        let sign = if self.angle < 0.0 { -1.0 } else { 1.0 };
        let mut w = self.angle.abs().rem_euclid(2.0 * PI);
        if w > PI {
            w -= 2.0 * PI;
        }
        let (reflect, r) = if w > PI / 2.0 {
            (true, w - PI)
        } else if w < -PI / 2.0 {
            (true, w + PI)
        } else {
            (false, w)
        };
        (reflect, sign * r)
    }
}

/// A per-axis order vector. Axis 0 runs along a row (x), axis 1 down a column (y).
#[derive(Debug, Clone, PartialEq)]
pub struct FrftOrder {
    axes: Vec<AxisOrder>,
}

impl FrftOrder {
    pub fn new(angles: &[f64]) -> Result<Self> {
        if angles.is_empty() {
            return Err(Error::invalid("order needs at least one angle"));
        }
        let axes = angles
            .iter()
            .map(|&a| AxisOrder::new(a))
            .collect::<Result<Vec<_>>>()?;
        Ok(FrftOrder { axes })
    }

    pub fn from_angles(angles: &[Angle]) -> Result<Self> {
        let r: Vec<f64> = angles.iter().map(Angle::radians).collect();
        Self::new(&r)
    }

    /// Two-axis order.
    pub fn pair(a1: f64, a2: f64) -> Result<Self> {
        Self::new(&[a1, a2])
    }

    pub fn axes(&self) -> &[AxisOrder] {
        &self.axes
    }

    pub fn axis(&self, k: usize) -> &AxisOrder {
        &self.axes[k]
    }

    pub fn len(&self) -> usize {
        self.axes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axes.is_empty()
    }

    pub fn angles(&self) -> Vec<f64> {
        self.axes.iter().map(|a| a.angle).collect()
    }

    pub fn negate(&self) -> Self {
        let neg: Vec<f64> = self.axes.iter().map(|a| -a.angle).collect();
        // Negating a finite angle cannot fail.
        Self::new(&neg).expect("negated order")
    }

    pub fn is_all_generic(&self) -> bool {
        self.axes.iter().all(AxisOrder::is_generic)
    }

    pub fn require_generic(&self, what: &str) -> Result<()> {
        match self.axes.iter().position(|a| !a.is_generic()) {
            None => Ok(()),
            Some(k) => Err(Error::invalid(format!(
                "{what}: axis {k} angle {} is a multiple of pi",
                self.axes[k].angle
            ))),
        }
    }

    /// `c(α) = ∏ c(α_k)`.
    pub fn c_product(&self) -> Complex64 {
        self.axes.iter().map(|a| a.c).product()
    }
}
