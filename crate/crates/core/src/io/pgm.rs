use std::path::Path;

use crate::error::{Error, Result};
use crate::grid::RealGrid;

/// 8-bit grayscale raster, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageU8 {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl ImageU8 {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::invalid(format!("image {width}x{height} is empty")));
        }
        if width.checked_mul(height) != Some(pixels.len()) {
            return Err(Error::DimensionMismatch {
                expected: format!("{width}x{height} pixels"),
                actual: format!("{} pixels", pixels.len()),
            });
        }
        Ok(ImageU8 {
            width,
            height,
            pixels,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, col: usize, row: usize) -> u8 {
        self.pixels[row * self.width + col]
    }
}

/// Byte cursor over a PGM header: whitespace-separated tokens with `#`
/// comments running to the end of the line.
struct Header<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Header<'_> {
    fn skip_space(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&c| c != b'\n') {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        self.skip_space();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Format(format!("PGM header: missing {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Format(format!("PGM header: {what} out of range")))
    }
}

/// Decodes a binary (P5) PGM with maxval 255.
pub fn decode_pgm(bytes: &[u8]) -> Result<ImageU8> {
    let magic = bytes
        .get(..2)
        .ok_or_else(|| Error::Format("PGM: file too short".into()))?;
    match magic {
        b"P5" => {}
        b"P2" => {
            return Err(Error::UnsupportedFormat(
                "ASCII PGM (P2); only P5 is read".into(),
            ))
        }
        m => {
            return Err(Error::UnsupportedFormat(format!(
                "bad magic {:?}; expected P5",
                String::from_utf8_lossy(m)
            )))
        }
    }
    let mut h = Header { bytes, pos: 2 };
    if !bytes
        .get(2)
        .is_some_and(|b| b.is_ascii_whitespace() || *b == b'#')
    {
        return Err(Error::Format("PGM: no separator after magic".into()));
    }
    let width = h.number("width")?;
    let height = h.number("height")?;
    let maxval = h.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(Error::Format(format!(
            "PGM: zero dimension {width}x{height}"
        )));
    }
    if maxval != 255 {
        return Err(Error::UnsupportedFormat(format!(
            "PGM maxval {maxval}; only 255 is read"
        )));
    }
    if !bytes.get(h.pos).is_some_and(u8::is_ascii_whitespace) {
        return Err(Error::Format("PGM: no whitespace before raster".into()));
    }
    let start = h.pos + 1;
    let need = width
        .checked_mul(height)
        .ok_or_else(|| Error::Format("PGM: dimensions overflow".into()))?;
    let have = bytes.len() - start;
    if have < need {
        return Err(Error::Format(format!(
            "PGM truncated: raster needs {need} bytes, found {have}"
        )));
    }
    ImageU8::new(width, height, bytes[start..start + need].to_vec())
}

pub fn encode_pgm(image: &ImageU8) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", image.width, image.height).into_bytes();
    out.extend_from_slice(&image.pixels);
    out
}

pub fn load_pgm(path: &Path) -> Result<ImageU8> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_pgm(&bytes)
}

pub fn save_pgm(image: &ImageU8, path: &Path) -> Result<()> {
    super::write_atomic(path, &encode_pgm(image))
}

/// `v/255`.
pub fn normalize(image: &ImageU8) -> RealGrid {
    let data = image.pixels.iter().map(|&v| f64::from(v) / 255.0).collect();
    RealGrid::new(image.width, image.height, data).expect("image shape")
}

/// `round(clamp(v, 0, 1)·255)`; NaN maps to 0.
pub fn denormalize(grid: &RealGrid) -> ImageU8 {
    let pixels = grid
        .data()
        .iter()
        .map(|&v| {
            let c = if v.is_nan() { 0.0 } else { v.clamp(0.0, 1.0) };
            (c * 255.0).round() as u8
        })
        .collect();
    ImageU8::new(grid.width(), grid.height(), pixels).expect("grid shape")
}

/// Quadrant test image: 0 where both indices fall in the same half, 255 elsewhere.
pub fn synth_test_image(n: usize) -> Result<ImageU8> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::invalid(format!(
            "test image side {n} must be positive and even"
        )));
    }
    let h = n / 2;
    let pixels = (0..n * n)
        .map(|i| if (i / n < h) == (i % n < h) { 0 } else { 255 })
        .collect();
    ImageU8::new(n, n, pixels)
}
