//! Gamma function and the Riesz-potential normalization.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) by the Lanczos approximation, with reflection below 1/2.
///
/// Poles (0, −1, −2, …) return infinity of the appropriate sign or NaN.
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        let s = (PI * x).sin();
        if s == 0.0 {
            return f64::NAN;
        }
        return PI / (s * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
}

/// `γ(β) = π^{n/2}·2^β·Γ(β/2)/Γ((n−β)/2)` for `0 < β < n`.
pub fn gamma_beta(beta: f64, n: usize) -> Result<f64> {
    let nf = n as f64;
    if !(beta > 0.0 && beta < nf) {
        return Err(Error::invalid(format!("beta {beta} outside (0, {n})")));
    }
    Ok(PI.powf(nf / 2.0) * 2f64.powf(beta) * gamma(beta / 2.0) / gamma((nf - beta) / 2.0))
}
