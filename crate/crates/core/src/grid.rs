//! Sample grids on the centered coordinate lattice.
//!
//! An axis of `n` samples has spacing `Δ = 1/√n` and coordinates
//! `x_k = (k − ⌊n/2⌋)·Δ`. With this spacing the quarter-turn transform is the
//! unitary centered DFT and the output lattice coincides with the input one.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub fn spacing(n: usize) -> f64 {
    (n as f64).sqrt().recip()
}

pub fn coordinate(k: usize, n: usize) -> f64 {
    (k as f64 - (n / 2) as f64) * spacing(n)
}

pub fn coordinates(n: usize) -> Vec<f64> {
    (0..n).map(|k| coordinate(k, n)).collect()
}

/// Index of `−x_k` on a centered axis; index 0 is its own partner when `n` is even.
pub fn reflected_index(k: usize, n: usize) -> usize {
    (2 * (n / 2) + n - k) % n
}

fn check_shape(width: usize, height: usize, len: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::invalid(format!("grid {width}x{height} is empty")));
    }
    let expected = width
        .checked_mul(height)
        .ok_or_else(|| Error::invalid("grid size overflows"))?;
    if expected != len {
        return Err(Error::DimensionMismatch {
            expected: format!("{expected} samples for {width}x{height}"),
            actual: format!("{len} samples"),
        });
    }
    Ok(())
}

/// Row-major complex field.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexGrid {
    width: usize,
    height: usize,
    data: Vec<Complex64>,
}

impl ComplexGrid {
    pub fn new(width: usize, height: usize, data: Vec<Complex64>) -> Result<Self> {
        check_shape(width, height, data.len())?;
        Ok(ComplexGrid {
            width,
            height,
            data,
        })
    }

    pub fn zeros(width: usize, height: usize) -> Result<Self> {
        Self::new(
            width,
            height,
            vec![Complex64::new(0.0, 0.0); width * height],
        )
    }

    /// Samples `f(x, y)` at the grid coordinates.
    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(f64, f64) -> Complex64,
    ) -> Result<Self> {
        let xs = coordinates(width);
        let ys = coordinates(height);
        let mut data = Vec::with_capacity(width * height);
        for &y in &ys {
            for &x in &xs {
                data.push(f(x, y));
            }
        }
        Self::new(width, height, data)
    }

    /// Samples `f(col, row)` by index.
    pub fn from_index_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> Complex64,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(width * height);
        for r in 0..height {
            for c in 0..width {
                data.push(f(c, r));
            }
        }
        Self::new(width, height, data)
    }

    pub fn from_real(grid: &RealGrid) -> Self {
        ComplexGrid {
            width: grid.width,
            height: grid.height,
            data: grid.data.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<Complex64> {
        self.data
    }

    pub fn get(&self, col: usize, row: usize) -> Complex64 {
        self.data[row * self.width + col]
    }

    pub fn spacing_x(&self) -> f64 {
        spacing(self.width)
    }

    pub fn spacing_y(&self) -> f64 {
        spacing(self.height)
    }

    /// Area of one cell, the quadrature weight of discrete integrals.
    pub fn cell_area(&self) -> f64 {
        self.spacing_x() * self.spacing_y()
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn ensure_same_shape(&self, other: &ComplexGrid) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                expected: format!("{}x{}", self.width, self.height),
                actual: format!("{}x{}", other.width, other.height),
            });
        }
        Ok(())
    }

    /// Pointwise product with another grid of the same shape.
    pub fn hadamard(&self, other: &ComplexGrid) -> Result<ComplexGrid> {
        self.ensure_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a * b)
            .collect();
        Ok(ComplexGrid { data, ..*self })
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> ComplexGrid {
        ComplexGrid {
            data: self.data.iter().map(|&z| f(z)).collect(),
            ..*self
        }
    }

    pub fn modulus(&self) -> RealGrid {
        RealGrid {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(|z| z.norm()).collect(),
        }
    }

    /// Plain (unweighted) Euclidean norm of the samples.
    pub fn l2_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `‖self − other‖₂ / ‖other‖₂`.
    pub fn rel_l2_error(&self, reference: &ComplexGrid) -> Result<f64> {
        self.ensure_same_shape(reference)?;
        let num: f64 = self
            .data
            .iter()
            .zip(&reference.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        Ok((num / reference.data.iter().map(|z| z.norm_sqr()).sum::<f64>()).sqrt())
    }

    pub fn max_abs_diff(&self, other: &ComplexGrid) -> Result<f64> {
        self.ensure_same_shape(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

/// Row-major real field, e.g. a normalized image.
#[derive(Debug, Clone, PartialEq)]
pub struct RealGrid {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl RealGrid {
    pub fn new(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
        check_shape(width, height, data.len())?;
        Ok(RealGrid {
            width,
            height,
            data,
        })
    }

    pub fn filled(width: usize, height: usize, value: f64) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn get(&self, col: usize, row: usize) -> f64 {
        self.data[row * self.width + col]
    }
}
