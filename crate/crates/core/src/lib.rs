//! Fractional Fourier transforms, chirp-conjugated fractional operators and
//! double phase image encryption on centered sample grids.
//!
//! ```
//! use frft_riesz::{frft_2d, ifrft_2d, ComplexGrid, FrftOrder, Path};
//! use num_complex::Complex64;
//!
//! let f = ComplexGrid::from_fn(32, 32, |x, y| Complex64::new((-(x * x + y * y)).exp(), 0.0)).unwrap();
//! let order = FrftOrder::pair(0.9, 2.1).unwrap();
//! let g = frft_2d(&f, &order, Path::Fast).unwrap();
//! let back = ifrft_2d(&g, &order, Path::Fast).unwrap();
//! assert!(back.rel_l2_error(&f).unwrap() < 1e-12);
//! ```

pub mod angle;
pub mod crypto;
pub mod error;
pub mod frft;
pub mod gamma;
pub mod grid;
pub mod io;
pub mod operators;
pub mod order;
pub mod selftest;
pub mod symbols;

pub use angle::{parse_angle, parse_angle_list, Angle};
pub use error::{Error, Result};
pub use frft::{chirp_field, frft_1d_direct, frft_1d_fast, frft_2d, ifrft_2d, Path};
pub use grid::{ComplexGrid, RealGrid};
pub use order::{FrftOrder, Regime};
pub use symbols::{DcPolicy, SymbolKind, SymbolSpec};
