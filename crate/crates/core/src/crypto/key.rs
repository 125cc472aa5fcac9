use std::fmt::Write as _;
use std::path::Path as FsPath;

use crate::angle::{parse_angle, Angle};
use crate::error::{Error, Result};
use crate::order::FrftOrder;

/// Everything needed to encrypt and decrypt: two transform orders, the
/// potential exponent and the two mask seeds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EncryptionKey {
    pub alpha: [Angle; 2],
    pub gamma: [Angle; 2],
    pub beta: f64,
    pub seed1: u64,
    pub seed2: u64,
}

pub const KEY_FIELDS: [&str; 7] = [
    "alpha1", "alpha2", "gamma1", "gamma2", "beta", "seed1", "seed2",
];

impl EncryptionKey {
    pub fn new(
        alpha: [Angle; 2],
        gamma: [Angle; 2],
        beta: f64,
        seed1: u64,
        seed2: u64,
    ) -> Result<Self> {
        let key = EncryptionKey {
            alpha,
            gamma,
            beta,
            seed1,
            seed2,
        };
        key.validate()?;
        Ok(key)
    }

    pub fn validate(&self) -> Result<()> {
        self.alpha_order()?.require_generic("key alpha")?;
        self.gamma_order()?.require_generic("key gamma")?;
        if !(self.beta > 0.0 && self.beta < 2.0) {
            return Err(Error::invalid(format!(
                "key beta {} outside (0, 2)",
                self.beta
            )));
        }
        Ok(())
    }

    pub fn alpha_order(&self) -> Result<FrftOrder> {
        FrftOrder::from_angles(&self.alpha)
    }

    pub fn gamma_order(&self) -> Result<FrftOrder> {
        FrftOrder::from_angles(&self.gamma)
    }

    /// Bitwise equality, including how each angle is written.
    pub fn same_bits(&self, other: &EncryptionKey) -> bool {
        self.alpha
            .iter()
            .zip(&other.alpha)
            .all(|(a, b)| a.same_bits(b))
            && self
                .gamma
                .iter()
                .zip(&other.gamma)
                .all(|(a, b)| a.same_bits(b))
            && self.beta.to_bits() == other.beta.to_bits()
            && self.seed1 == other.seed1
            && self.seed2 == other.seed2
    }

    /// `name = value` lines in [`KEY_FIELDS`] order.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "alpha1 = {}", self.alpha[0]);
        let _ = writeln!(s, "alpha2 = {}", self.alpha[1]);
        let _ = writeln!(s, "gamma1 = {}", self.gamma[0]);
        let _ = writeln!(s, "gamma2 = {}", self.gamma[1]);
        let _ = writeln!(s, "beta = {:?}", self.beta);
        let _ = writeln!(s, "seed1 = {}", self.seed1);
        let _ = writeln!(s, "seed2 = {}", self.seed2);
        s
    }

    /// Parses a key file. Blank lines and `#` comments are ignored; every
    /// field must appear exactly once.
    pub fn parse(text: &str) -> Result<Self> {
        let mut angles: [Option<Angle>; 4] = [None; 4];
        let mut beta = None;
        let mut seeds: [Option<u64>; 2] = [None; 2];
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |field: &str, message: String| Error::Parse {
                line,
                field: field.to_string(),
                message,
            };
            let (name, value) = content
                .split_once('=')
                .ok_or_else(|| err("", format!("expected `name = value`, got `{content}`")))?;
            let (name, value) = (name.trim(), value.trim());
            let duplicate = || err(name, "given more than once".to_string());
            match name {
                "alpha1" | "alpha2" | "gamma1" | "gamma2" => {
                    let slot = KEY_FIELDS
                        .iter()
                        .position(|&f| f == name)
                        .expect("angle field");
                    if angles[slot].is_some() {
                        return Err(duplicate());
                    }
                    angles[slot] = Some(parse_angle(value).map_err(|e| err(name, e.to_string()))?);
                }
                "beta" => {
                    if beta.is_some() {
                        return Err(duplicate());
                    }
                    let v = match parse_angle(value) {
                        Ok(Angle::Radians(v)) => v,
                        _ => return Err(err(name, format!("`{value}` is not a decimal number"))),
                    };
                    beta = Some(v);
                }
                "seed1" | "seed2" => {
                    let slot = usize::from(name == "seed2");
                    if seeds[slot].is_some() {
                        return Err(duplicate());
                    }
                    let v: u64 = value.parse().map_err(|_| {
                        err(name, format!("`{value}` is not an unsigned 64-bit integer"))
                    })?;
                    seeds[slot] = Some(v);
                }
                other => return Err(err(other, "unknown field".to_string())),
            }
        }
        let missing = |field: &str| Error::MissingField {
            field: field.to_string(),
        };
        let angle = |k: usize| angles[k].ok_or_else(|| missing(KEY_FIELDS[k]));
        let key = EncryptionKey {
            alpha: [angle(0)?, angle(1)?],
            gamma: [angle(2)?, angle(3)?],
            beta: beta.ok_or_else(|| missing("beta"))?,
            seed1: seeds[0].ok_or_else(|| missing("seed1"))?,
            seed2: seeds[1].ok_or_else(|| missing("seed2"))?,
        };
        key.validate()?;
        Ok(key)
    }
}

pub fn save_key(key: &EncryptionKey, path: &FsPath) -> Result<()> {
    crate::io::write_atomic(path, key.to_text().as_bytes())
}

pub fn load_key(path: &FsPath) -> Result<EncryptionKey> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    EncryptionKey::parse(&text)
}
