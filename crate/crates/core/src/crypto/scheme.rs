use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frft::{frft_2d, Path};
use crate::grid::{ComplexGrid, RealGrid};
use crate::symbols::{SymbolKind, SymbolSpec};

use super::key::EncryptionKey;
use super::mask::PhaseMask;

/// Whether the Riesz-potential amplitude channel sits between the two masks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scheme {
    #[default]
    RieszPotential,
    /// Plain double phase coding with two transforms.
    FrftOnly,
}

fn masks(key: &EncryptionKey, width: usize, height: usize) -> Result<(PhaseMask, PhaseMask)> {
    Ok((
        PhaseMask::generate(key.seed1, width, height)?,
        PhaseMask::generate(key.seed2, width, height)?,
    ))
}

/// The amplitude channel, or its reciprocal for decryption.
fn channel(key: &EncryptionKey, width: usize, height: usize, inverse: bool) -> Result<ComplexGrid> {
    let kind = if inverse {
        SymbolKind::FracLaplacian { z: key.beta }
    } else {
        SymbolKind::RieszPotential { beta: key.beta }
    };
    SymbolSpec::new(kind, key.alpha_order()?)?.multiplier(width, height)
}

/// `ζ₂ = F_γ[m ⊙ F_α(ζ₁ ⊙ p₁) ⊙ p₂]`.
pub fn encrypt(
    image: &RealGrid,
    key: &EncryptionKey,
    scheme: Scheme,
    path: Path,
) -> Result<ComplexGrid> {
    key.validate()?;
    if let Some(v) = image.data().iter().find(|v| !(0.0..=1.0).contains(*v)) {
        return Err(Error::invalid(format!(
            "image value {v} outside [0, 1]; normalize first"
        )));
    }
    let (w, h) = image.shape();
    let (p1, p2) = masks(key, w, h)?;
    let z1 = ComplexGrid::from_real(image).hadamard(&p1.field())?;
    let mut g = frft_2d(&z1, &key.alpha_order()?, path)?;
    if scheme == Scheme::RieszPotential {
        g = g.hadamard(&channel(key, w, h, false)?)?;
    }
    let g = g.hadamard(&p2.field())?;
    frft_2d(&g, &key.gamma_order()?, path)
}

/// `ζ₃ = |F_{−α}[m⁻¹ ⊙ F_{−γ}ζ₂ ⊙ p₂*] ⊙ p₁*|`, clamped to `[0, 1]`.
pub fn decrypt(
    cipher: &ComplexGrid,
    key: &EncryptionKey,
    scheme: Scheme,
    path: Path,
) -> Result<RealGrid> {
    key.validate()?;
    let (w, h) = cipher.shape();
    let (p1, p2) = masks(key, w, h)?;
    let mut g = frft_2d(cipher, &key.gamma_order()?.negate(), path)?;
    if scheme == Scheme::RieszPotential {
        g = g.hadamard(&channel(key, w, h, true)?)?;
    }
    let g = g.hadamard(&p2.conjugate_field())?;
    let z = frft_2d(&g, &key.alpha_order()?.negate(), path)?.hadamard(&p1.conjugate_field())?;
    let data = z
        .data()
        .iter()
        .map(|v: &Complex64| v.norm().clamp(0.0, 1.0))
        .collect();
    RealGrid::new(w, h, data)
}

/// Mean of the squared pixel differences.
pub fn mse(a: &RealGrid, b: &RealGrid) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            expected: format!("{}x{}", a.width(), a.height()),
            actual: format!("{}x{}", b.width(), b.height()),
        });
    }
    let s: f64 = a
        .data()
        .iter()
        .zip(b.data())
        .map(|(x, y)| (x - y) * (x - y))
        .sum();
    Ok(s / a.data().len() as f64)
}

/// A single key component that a sweep perturbs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeyParam {
    Alpha1,
    Alpha2,
    Gamma1,
    Gamma2,
    Beta,
}

impl KeyParam {
    pub const ALL: [KeyParam; 5] = [
        KeyParam::Alpha1,
        KeyParam::Alpha2,
        KeyParam::Gamma1,
        KeyParam::Gamma2,
        KeyParam::Beta,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            KeyParam::Alpha1 => "alpha1",
            KeyParam::Alpha2 => "alpha2",
            KeyParam::Gamma1 => "gamma1",
            KeyParam::Gamma2 => "gamma2",
            KeyParam::Beta => "beta",
        }
    }

    /// The key with this component shifted by `delta` (radians for angles).
    pub fn perturb(&self, key: &EncryptionKey, delta: f64) -> EncryptionKey {
        let mut k = *key;
        match self {
            KeyParam::Alpha1 => k.alpha[0] = k.alpha[0].offset(delta),
            KeyParam::Alpha2 => k.alpha[1] = k.alpha[1].offset(delta),
            KeyParam::Gamma1 => k.gamma[0] = k.gamma[0].offset(delta),
            KeyParam::Gamma2 => k.gamma[1] = k.gamma[1].offset(delta),
            KeyParam::Beta => k.beta += delta,
        }
        k
    }
}

impl std::fmt::Display for KeyParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for KeyParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        KeyParam::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown key parameter `{s}`")))
    }
}

/// MSE of the decrypted image for each perturbation of one key component.
/// `None` marks a perturbed key that is not valid (an axis on a multiple of π
/// or β outside (0, 2)).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub param: KeyParam,
    pub deviations: Vec<f64>,
    pub mse: Vec<Option<f64>>,
}

impl SweepResult {
    /// `deviation,mse` lines with a header; undefined points have an empty MSE.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("deviation,mse\n");
        for (d, m) in self.deviations.iter().zip(&self.mse) {
            match m {
                Some(v) => s.push_str(&format!("{d:.16e},{v:.16e}\n")),
                None => s.push_str(&format!("{d:.16e},\n")),
            }
        }
        s
    }

    /// Index of the smallest defined MSE.
    pub fn argmin(&self) -> Option<usize> {
        self.mse
            .iter()
            .enumerate()
            .filter_map(|(i, m)| m.map(|v| (i, v)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(i, _)| i)
    }
}

/// Encrypts once with `key`, then decrypts with each perturbed key.
/// Deviations run in parallel; the result keeps their input order.
pub fn key_sensitivity_sweep(
    image: &RealGrid,
    key: &EncryptionKey,
    param: KeyParam,
    deviations: &[f64],
    scheme: Scheme,
    path: Path,
) -> Result<SweepResult> {
    if deviations.is_empty() {
        return Err(Error::invalid("sweep needs at least one deviation"));
    }
    if let Some(d) = deviations.iter().find(|d| !d.is_finite()) {
        return Err(Error::invalid(format!("deviation {d} is not finite")));
    }
    let cipher = encrypt(image, key, scheme, path)?;
    let mse = deviations
        .par_iter()
        .map(|&d| {
            let k = param.perturb(key, d);
            if k.validate().is_err() {
                return Ok(None);
            }
            let out = decrypt(&cipher, &k, scheme, path)?;
            mse(&out, image).map(Some)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        param,
        deviations: deviations.to_vec(),
        mse,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::Angle;

    fn table_key() -> EncryptionKey {
        EncryptionKey::new(
            [Angle::pi_fraction(7.0, 8), Angle::pi_fraction(5.0, 8)],
            [Angle::pi_fraction(1.0, 4), Angle::pi_fraction(3.0, 8)],
            0.75,
            11,
            29,
        )
        .unwrap()
    }

    fn disk(n: usize) -> RealGrid {
        let h = n as f64 / 2.0;
        let data = (0..n * n)
            .map(|i| {
                let (x, y) = ((i % n) as f64 - h, (i / n) as f64 - h);
                if x * x + y * y < h * h / 4.0 {
                    0.9
                } else {
                    0.1
                }
            })
            .collect();
        RealGrid::new(n, n, data).unwrap()
    }

    #[test]
    fn mse_basics() {
        let z = RealGrid::filled(3, 2, 0.0).unwrap();
        let o = RealGrid::filled(3, 2, 1.0).unwrap();
        assert_eq!(mse(&z, &o).unwrap(), 1.0);
        assert_eq!(mse(&o, &o).unwrap(), 0.0);
        assert!(mse(&z, &RealGrid::filled(2, 3, 0.0).unwrap()).is_err());
    }

    #[test]
    fn round_trip_both_schemes() {
        let img = disk(32);
        for scheme in [Scheme::RieszPotential, Scheme::FrftOnly] {
            let c = encrypt(&img, &table_key(), scheme, Path::Fast).unwrap();
            let d = decrypt(&c, &table_key(), scheme, Path::Fast).unwrap();
            assert!(mse(&d, &img).unwrap() < 1e-20);
        }
    }

    #[test]
    fn zero_image_gives_zero_cipher() {
        let c = encrypt(
            &RealGrid::filled(8, 8, 0.0).unwrap(),
            &table_key(),
            Scheme::default(),
            Path::Fast,
        )
        .unwrap();
        assert!(c.data().iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn rejects_unnormalized_image() {
        let img = RealGrid::filled(4, 4, 2.0).unwrap();
        assert!(encrypt(&img, &table_key(), Scheme::default(), Path::Fast).is_err());
    }

    #[test]
    fn sweep_marks_invalid_points() {
        let img = disk(16);
        let r = key_sensitivity_sweep(
            &img,
            &table_key(),
            KeyParam::Beta,
            &[-0.5, 0.0, 1.3],
            Scheme::default(),
            Path::Fast,
        )
        .unwrap();
        assert!(r.mse[0].is_some() && r.mse[2].is_none());
        assert_eq!(r.argmin(), Some(1));
        assert_eq!(r.to_csv().lines().count(), 4);
        assert_eq!("gamma2".parse::<KeyParam>().unwrap(), KeyParam::Gamma2);
    }
}
