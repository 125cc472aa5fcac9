//! Binary complex-field format:
//!
//! ```text
//! "FRC1" | width: u32 LE | height: u32 LE | (re: f64 LE, im: f64 LE) × width·height
//! ```

use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::ComplexGrid;

pub const CFIELD_MAGIC: &[u8; 4] = b"FRC1";
const HEADER_LEN: usize = 12;

pub fn encode_cfield(grid: &ComplexGrid) -> Result<Vec<u8>> {
    let w = u32::try_from(grid.width()).map_err(|_| Error::invalid("width exceeds u32"))?;
    let h = u32::try_from(grid.height()).map_err(|_| Error::invalid("height exceeds u32"))?;
    let mut out = Vec::with_capacity(HEADER_LEN + 16 * grid.data().len());
    out.extend_from_slice(CFIELD_MAGIC);
    out.extend_from_slice(&w.to_le_bytes());
    out.extend_from_slice(&h.to_le_bytes());
    for z in grid.data() {
        out.extend_from_slice(&z.re.to_le_bytes());
        out.extend_from_slice(&z.im.to_le_bytes());
    }
    Ok(out)
}

pub fn decode_cfield(bytes: &[u8]) -> Result<ComplexGrid> {
    if bytes.len() < HEADER_LEN {
        return Err(Error::Format(format!(
            "complex field: {} bytes is shorter than the header",
            bytes.len()
        )));
    }
    if &bytes[..4] != CFIELD_MAGIC {
        return Err(Error::UnsupportedFormat(
            "complex field: bad magic; expected FRC1".into(),
        ));
    }
    let word = |i: usize| u32::from_le_bytes(bytes[i..i + 4].try_into().expect("4 bytes")) as usize;
    let (w, h) = (word(4), word(8));
    if w == 0 || h == 0 {
        return Err(Error::Format(format!(
            "complex field: zero dimension {w}x{h}"
        )));
    }
    let payload = w
        .checked_mul(h)
        .and_then(|n| n.checked_mul(16))
        .ok_or_else(|| Error::Format(format!("complex field: {w}x{h} overflows")))?;
    let have = bytes.len() - HEADER_LEN;
    if have != payload {
        return Err(Error::Format(format!(
            "complex field: length mismatch, {w}x{h} needs {payload} payload bytes, found {have}"
        )));
    }
    let f = |i: usize| f64::from_le_bytes(bytes[i..i + 8].try_into().expect("8 bytes"));
    let data = (0..w * h)
        .map(|k| {
            let at = HEADER_LEN + 16 * k;
            Complex64::new(f(at), f(at + 8))
        })
        .collect();
    ComplexGrid::new(w, h, data)
}

pub fn load_cfield(path: &Path) -> Result<ComplexGrid> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_cfield(&bytes)
}

pub fn save_cfield(grid: &ComplexGrid, path: &Path) -> Result<()> {
    super::write_atomic(path, &encode_cfield(grid)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ComplexGrid {
        ComplexGrid::from_index_fn(2, 2, |c, r| {
            Complex64::new(c as f64 - 0.1, -(r as f64) * 1e-300)
        })
        .unwrap()
    }

    #[test]
    fn layout_and_round_trip() {
        let g = sample();
        let bytes = encode_cfield(&g).unwrap();
        assert_eq!(bytes.len(), 76);
        assert_eq!(&bytes[..12], b"FRC1\x02\0\0\0\x02\0\0\0");
        let back = decode_cfield(&bytes).unwrap();
        for (a, b) in g.data().iter().zip(back.data()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn rejects_damage() {
        let bytes = encode_cfield(&sample()).unwrap();
        let e = decode_cfield(&bytes[..70]).unwrap_err();
        assert!(e.to_string().contains("length mismatch"), "{e}");
        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(matches!(
            decode_cfield(&bad),
            Err(Error::UnsupportedFormat(_))
        ));
        let mut huge = bytes;
        huge[4..8].copy_from_slice(&u32::MAX.to_le_bytes());
        huge[8..12].copy_from_slice(&u32::MAX.to_le_bytes());
        assert!(decode_cfield(&huge).is_err());
        assert!(decode_cfield(b"FRC1\0\0\0\0\x01\0\0\0").is_err());
    }
}
