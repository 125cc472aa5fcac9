#![allow(dead_code)]

use std::f64::consts::PI;

use frft_riesz::crypto::splitmix64;
use frft_riesz::ComplexGrid;
use num_complex::Complex64;

/// Deterministic uniform values in [-1, 1).
pub struct Noise {
    seed: u64,
    i: u64,
}

impl Noise {
    pub fn new(seed: u64) -> Self {
        Noise { seed, i: 0 }
    }

    pub fn next(&mut self) -> f64 {
        self.i += 1;
        (splitmix64(self.seed, self.i) >> 11) as f64 / (1u64 << 52) as f64 - 1.0
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.i += 1;
        (splitmix64(self.seed, self.i) % n as u64) as usize
    }
}

pub fn random_grid(w: usize, h: usize, seed: u64) -> ComplexGrid {
    let mut n = Noise::new(seed);
    ComplexGrid::from_index_fn(w, h, |_, _| Complex64::new(n.next(), n.next())).unwrap()
}

/// Centered Gaussian with width `sigma` measured in samples.
pub fn gaussian(n: usize, sigma: f64) -> ComplexGrid {
    let h = (n / 2) as f64;
    ComplexGrid::from_index_fn(n, n, |c, r| {
        let (x, y) = (c as f64 - h, r as f64 - h);
        Complex64::new((-(x * x + y * y) / (2.0 * sigma * sigma)).exp(), 0.0)
    })
    .unwrap()
}

/// Unitary centered DFT along one axis by explicit sums.
pub fn centered_dft_1d(f: &[Complex64]) -> Vec<Complex64> {
    let n = f.len();
    let h = (n / 2) as i64;
    (0..n as i64)
        .map(|k| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, &v) in f.iter().enumerate() {
                let m = ((k - h) * (j as i64 - h)).rem_euclid(n as i64);
                acc += v * Complex64::from_polar(1.0, -2.0 * PI * m as f64 / n as f64);
            }
            acc / (n as f64).sqrt()
        })
        .collect()
}

pub fn centered_dft_2d(g: &ComplexGrid) -> ComplexGrid {
    let (w, h) = g.shape();
    let mut rows = Vec::with_capacity(w * h);
    for r in 0..h {
        rows.extend(centered_dft_1d(&g.data()[r * w..(r + 1) * w]));
    }
    let mut out = vec![Complex64::new(0.0, 0.0); w * h];
    for c in 0..w {
        let col: Vec<Complex64> = (0..h).map(|r| rows[r * w + c]).collect();
        for (r, v) in centered_dft_1d(&col).into_iter().enumerate() {
            out[r * w + c] = v;
        }
    }
    ComplexGrid::new(w, h, out).unwrap()
}
