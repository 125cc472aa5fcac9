//! Raster and field files, test-image synthesis and renderings.

mod cfield;
mod pgm;
mod render;

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

pub use cfield::{decode_cfield, encode_cfield, load_cfield, save_cfield, CFIELD_MAGIC};
pub use pgm::{
    decode_pgm, denormalize, encode_pgm, load_pgm, normalize, save_pgm, synth_test_image, ImageU8,
};
pub use render::{amplitude_map, export_surface_csv, surface_csv, AmplitudeScale};

/// Writes `bytes` to a temporary sibling file, then renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let name = path
        .file_name()
        .ok_or_else(|| Error::invalid(format!("{} is not a file path", path.display())))?;
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        name.to_string_lossy(),
        std::process::id()
    ));
    let result = std::fs::File::create(&tmp)
        .and_then(|mut f| {
            f.write_all(bytes)?;
            f.sync_all()
        })
        .and_then(|()| std::fs::rename(&tmp, path));
    if let Err(e) = result {
        let _ = std::fs::remove_file(&tmp);
        return Err(Error::io(path, e));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("out.bin");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(std::fs::read(&p).unwrap(), b"two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn io_errors_carry_path() {
        let e = write_atomic(Path::new("/nonexistent-dir/x.pgm"), b"").unwrap_err();
        assert!(e.to_string().contains("/nonexistent-dir/x.pgm"), "{e}");
    }
}
