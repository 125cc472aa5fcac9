//! Grid-wide checks of the algebraic identities between the symbols.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Result;
use crate::order::FrftOrder;
use crate::symbols::{
    laplacian_symbol, riesz_potential_symbol, riesz_transform_multiplier, DcPolicy,
    ScaledFrequencyGrid,
};

#[derive(Debug, Clone, PartialEq)]
pub struct SelfTestConfig {
    /// Grid side.
    pub size: usize,
    pub orders: Vec<[f64; 2]>,
    /// Relative error injected into every potential symbol value. Zero for a
    /// real run; nonzero values let tests confirm that failures are caught.
    pub potential_perturbation: f64,
}

impl Default for SelfTestConfig {
    fn default() -> Self {
        SelfTestConfig {
            size: 128,
            orders: vec![
                [PI / 2.0, PI / 2.0],
                [PI / 4.0, PI / 4.0],
                [7.0 * PI / 8.0, 5.0 * PI / 8.0],
                [PI / 8.0, 3.0 * PI / 8.0],
                [-2.0, 4.0],
            ],
            potential_perturbation: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub max_error: f64,
    pub tolerance: f64,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.max_error <= self.tolerance
    }
}

struct Worst {
    name: &'static str,
    tolerance: f64,
    max: f64,
}

impl Worst {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Worst {
            name,
            tolerance,
            max: 0.0,
        }
    }

    fn see(&mut self, err: f64) {
        // NaN counts as a failure.
        if err.is_nan() {
            self.max = f64::INFINITY;
        } else if err > self.max {
            self.max = err;
        }
    }

    fn done(self) -> CheckOutcome {
        CheckOutcome {
            name: self.name,
            max_error: self.max,
            tolerance: self.tolerance,
        }
    }
}

/// Runs the semigroup, reciprocal, unit-sum and decomposition checks over
/// every bin of every configured order.
pub fn run_selftest(cfg: &SelfTestConfig) -> Result<Vec<CheckOutcome>> {
    let mut semigroup = Worst::new("semigroup m(0.3)·m(0.4) = m(0.7)", 1e-12);
    let mut reciprocal = Worst::new("reciprocal potential·laplacian = 1", 1e-15);
    let mut unit_sum = Worst::new("riesz unit sum", 1e-14);
    let mut decomposition = Worst::new("decomposition product-sum", 1e-12);
    let bump = 1.0 + cfg.potential_perturbation;
    for angles in &cfg.orders {
        let order = FrftOrder::pair(angles[0], angles[1])?;
        let fg = ScaledFrequencyGrid::get(&order, cfg.size, cfg.size)?;
        for policy in [DcPolicy::SmallestNonzero, DcPolicy::CellGeometricMean] {
            let dc = fg.dc_radius(policy);
            let m = |beta: f64, u: [f64; 2]| riesz_potential_symbol(beta, u, dc).map(|v| v * bump);
            for r in 0..cfg.size {
                for c in 0..cfg.size {
                    let u = fg.at(c, r);
                    let m7 = m(0.7, u)?;
                    semigroup.see(((m(0.3, u)? * m(0.4, u)?) - m7).abs() / m7);
                    reciprocal.see((m(0.75, u)? * laplacian_symbol(0.75, u, dc)? - 1.0).abs());
                    if u[0] == 0.0 && u[1] == 0.0 {
                        continue;
                    }
                    let r1 = riesz_transform_multiplier(1, u)?;
                    let r2 = riesz_transform_multiplier(2, u)?;
                    unit_sum.see((r1.norm_sqr() + r2.norm_sqr() - 1.0).abs());
                    let d = Complex64::new(0.0, 2.0 * PI);
                    let s = m(1.0, u)? * (r1 * d * u[0] + r2 * d * u[1]);
                    decomposition.see((s - 1.0).norm());
                }
            }
        }
    }
    Ok(vec![
        semigroup.done(),
        reciprocal.done(),
        unit_sum.done(),
        decomposition.done(),
    ])
}
