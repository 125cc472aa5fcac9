use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::ComplexGrid;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Output `i` of the SplitMix64 stream started at `seed`.
pub fn splitmix64(seed: u64, i: u64) -> u64 {
    mix(seed.wrapping_add(i.wrapping_mul(GOLDEN_GAMMA)))
}

/// Maps the top 53 bits to `[0, 1)`.
pub fn unit_interval(z: u64) -> f64 {
    (z >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// A random phase screen `p(x) = exp(2πi·n(x))` with `n` uniform on `[0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseMask {
    width: usize,
    height: usize,
    phases: Vec<f64>,
}

impl PhaseMask {
    /// Phase `k` (row-major) is output `k` of the stream for `seed`.
    pub fn generate(seed: u64, width: usize, height: usize) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::invalid(format!("mask {width}x{height} is empty")));
        }
        let phases = (0..(width * height) as u64)
            .map(|i| unit_interval(splitmix64(seed, i)))
            .collect();
        Ok(PhaseMask {
            width,
            height,
            phases,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn field(&self) -> ComplexGrid {
        let data = self
            .phases
            .iter()
            .map(|&n| Complex64::from_polar(1.0, 2.0 * PI * n))
            .collect();
        ComplexGrid::new(self.width, self.height, data).expect("mask shape")
    }

    /// `p*`.
    pub fn conjugate_field(&self) -> ComplexGrid {
        self.field().map(|z| z.conj())
    }
}
