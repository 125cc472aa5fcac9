//! Angle literals.
//!
//! Orders are written either as plain radians (`0.785`, `-1.2e-1`) or as
//! rational multiples of π (`pi/2`, `7pi/8`, `-3pi/8`, `1.05pi/4`). Keeping the
//! π-multiple form around lets key files reproduce an order such as 7π/8
//! bit-for-bit instead of going through a rounded decimal.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An angle in radians, remembering how it was written.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Angle {
    /// `coeff·π/denom`.
    PiFraction {
        coeff: f64,
        denom: u32,
    },
    Radians(f64),
}

impl Angle {
    pub fn pi_fraction(coeff: f64, denom: u32) -> Self {
        Angle::PiFraction { coeff, denom }
    }

    pub fn radians(&self) -> f64 {
        match *self {
            Angle::PiFraction { coeff, denom } => coeff * PI / f64::from(denom),
            Angle::Radians(r) => r,
        }
    }

    /// Adds `delta` radians. A π-fraction stays a π-fraction so that the
    /// literal form survives perturbation in key sweeps.
    pub fn offset(&self, delta: f64) -> Self {
        if delta == 0.0 {
            return *self;
        }
        match *self {
            Angle::PiFraction { coeff, denom } => {
                let shifted = coeff + delta * f64::from(denom) / PI;
                Angle::PiFraction {
                    coeff: shifted,
                    denom,
                }
            }
            Angle::Radians(r) => Angle::Radians(r + delta),
        }
    }

    /// Bitwise equality of the literal, including its representation.
    pub fn same_bits(&self, other: &Angle) -> bool {
        match (self, other) {
            (
                Angle::PiFraction { coeff: a, denom: m },
                Angle::PiFraction { coeff: b, denom: n },
            ) => a.to_bits() == b.to_bits() && m == n,
            (Angle::Radians(a), Angle::Radians(b)) => a.to_bits() == b.to_bits(),
            _ => false,
        }
    }
}

impl From<f64> for Angle {
    fn from(r: f64) -> Self {
        Angle::Radians(r)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Angle::PiFraction { coeff, denom } => {
                if coeff == 1.0 {
                    write!(f, "pi")?;
                } else if coeff == -1.0 {
                    write!(f, "-pi")?;
                } else {
                    write!(f, "{coeff}pi")?;
                }
                if denom != 1 {
                    write!(f, "/{denom}")?;
                }
                Ok(())
            }
            Angle::Radians(r) => write!(f, "{r:.16e}"),
        }
    }
}

impl FromStr for Angle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_angle(s)
    }
}

fn parse_finite(s: &str, what: &str) -> Result<f64> {
    // f64::from_str accepts "inf"/"nan"; only plain decimals are allowed here.
    let ok = !s.is_empty()
        && s.bytes()
            .all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'e' | b'E' | b'+' | b'-'));
    let v: f64 = if ok { s.parse().ok() } else { None }
        .ok_or_else(|| Error::invalid(format!("{what}: `{s}` is not a decimal number")))?;
    if !v.is_finite() {
        return Err(Error::invalid(format!("{what}: `{s}` is not finite")));
    }
    Ok(v)
}

/// Parses `<decimal>` or `[<decimal>]pi[/<positive integer>]`.
pub fn parse_angle(text: &str) -> Result<Angle> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::invalid("empty angle"));
    }
    let Some(pos) = s.find("pi") else {
        return parse_finite(s, "angle").map(Angle::Radians);
    };
    let (head, tail) = (&s[..pos], &s[pos + 2..]);
    let coeff = match head {
        "" | "+" => 1.0,
        "-" => -1.0,
        h => parse_finite(h, "angle coefficient")?,
    };
    let denom = if tail.is_empty() {
        1
    } else {
        let d = tail
            .strip_prefix('/')
            .ok_or_else(|| Error::invalid(format!("angle `{s}`: expected `/` after `pi`")))?;
        let denom: u32 = d
            .parse()
            .map_err(|_| Error::invalid(format!("angle `{s}`: bad denominator `{d}`")))?;
        if denom == 0 {
            return Err(Error::invalid(format!("angle `{s}`: zero denominator")));
        }
        denom
    };
    let angle = Angle::PiFraction { coeff, denom };
    if !angle.radians().is_finite() {
        return Err(Error::invalid(format!("angle `{s}` is not finite")));
    }
    Ok(angle)
}

/// Parses a comma-separated list of angles, e.g. `pi/4,3pi/8`.
pub fn parse_angle_list(text: &str) -> Result<Vec<Angle>> {
    text.split(',').map(parse_angle).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pi_fractions() {
        assert_eq!(parse_angle("pi/2").unwrap().radians(), PI / 2.0);
        assert_eq!(parse_angle("7pi/8").unwrap().radians(), 7.0 * PI / 8.0);
        assert_eq!(parse_angle("-pi/4").unwrap().radians(), -PI / 4.0);
        assert_eq!(parse_angle("pi").unwrap().radians(), PI);
        assert_eq!(parse_angle(" 2pi ").unwrap().radians(), 2.0 * PI);
        assert_eq!(parse_angle("1.05pi/4").unwrap().radians(), 1.05 * PI / 4.0);
    }

    #[test]
    fn parses_radians() {
        assert_eq!(parse_angle("0.25").unwrap(), Angle::Radians(0.25));
        assert_eq!(parse_angle("-1e-3").unwrap(), Angle::Radians(-1e-3));
    }

    #[test]
    fn rejects_garbage() {
        for bad in [
            "", "pi/0", "pi/", "xpi", "nan", "inf", "pi/-3", "7pi8", "1e400",
        ] {
            assert!(parse_angle(bad).is_err(), "{bad} should be rejected");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["pi/2", "7pi/8", "-pi/4", "1.05pi/4", "pi", "-3pi/8"] {
            let a = parse_angle(s).unwrap();
            assert_eq!(a.to_string(), s);
            assert!(parse_angle(&a.to_string()).unwrap().same_bits(&a));
        }
        let r = Angle::Radians(0.1 + 0.2);
        assert!(parse_angle(&r.to_string()).unwrap().same_bits(&r));
    }

    #[test]
    fn offset_keeps_pi_form() {
        let a = parse_angle("pi/4").unwrap().offset(0.05 * PI / 4.0);
        assert!(matches!(a, Angle::PiFraction { denom: 4, .. }));
        assert!((a.radians() - 1.05 * PI / 4.0).abs() < 1e-15);
    }
}
