//! Double phase coding with a Riesz-potential amplitude channel.
//!
//! Encryption multiplies the image by a random phase mask, applies the
//! transform of order α, scales the amplitudes by the potential symbol of
//! exponent β, applies a second phase mask and finishes with the transform of
//! order γ. Decryption runs the same steps backwards with conjugate masks and
//! the reciprocal (Laplacian) symbol, then takes the modulus.

mod key;
mod mask;
mod scheme;

pub use key::{load_key, save_key, EncryptionKey, KEY_FIELDS};
pub use mask::{splitmix64, unit_interval, PhaseMask};
pub use scheme::{decrypt, encrypt, key_sensitivity_sweep, mse, KeyParam, Scheme, SweepResult};
