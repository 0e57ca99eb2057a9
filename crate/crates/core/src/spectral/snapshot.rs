//! Binary snapshot format for spectral fields.
//!
//! ```text
//! magic    "QGK1"            4 bytes
//! version  u32 LE            currently 1
//! n        u32 LE
//! L        f64 LE
//! time     f64 LE
//! coeffs   n² × (re f64 LE, im f64 LE)
//! ```
//!
//! Coefficients are written row-major in ascending signed wavenumber order:
//! `k1` from `-n/2` to `n/2 - 1` (outer), `k2` likewise (inner).

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;

use super::field::SpectralField;
use super::grid::GridSpec;
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"QGK1";
pub const VERSION: u32 = 1;

/// Relative tolerance on `|c(k) − conj c(−k)|` accepted by the reader.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;

fn signed_order(n: usize) -> impl Iterator<Item = (i64, i64)> {
    let half = (n / 2) as i64;
    (-half..half).flat_map(move |k1| (-half..half).map(move |k2| (k1, k2)))
}

pub fn write_snapshot<W: Write>(mut w: W, field: &SpectralField, time: f64) -> Result<()> {
    let grid = field.grid();
    let n = u32::try_from(grid.n()).map_err(|_| Error::Snapshot("grid too large for the header".into()))?;
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&n.to_le_bytes())?;
    w.write_all(&grid.box_length().to_le_bytes())?;
    w.write_all(&time.to_le_bytes())?;
    for (k1, k2) in signed_order(grid.n()) {
        let c = field.get(k1, k2);
        w.write_all(&c.re.to_le_bytes())?;
        w.write_all(&c.im.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

fn read_array<const N: usize, R: Read>(r: &mut R) -> Result<[u8; N]> {
    let mut buf = [0u8; N];
    r.read_exact(&mut buf).map_err(|e| match e.kind() {
        std::io::ErrorKind::UnexpectedEof => Error::Snapshot("truncated file".into()),
        _ => Error::Io(e),
    })?;
    Ok(buf)
}

/// Reads a snapshot and returns the field with its time stamp.
///
/// The field is placed on a grid with the default dealias policy. Files whose
/// coefficients are not Hermitian-symmetric are rejected.
pub fn read_snapshot<R: Read>(mut r: R) -> Result<(SpectralField, f64)> {
    let magic: [u8; 4] = read_array(&mut r)?;
    if &magic != MAGIC {
        return Err(Error::Snapshot(format!("bad magic {magic:?}")));
    }
    let version = u32::from_le_bytes(read_array(&mut r)?);
    if version != VERSION {
        return Err(Error::Snapshot(format!("unsupported version {version}")));
    }
    let n = u32::from_le_bytes(read_array(&mut r)?) as usize;
    let box_length = f64::from_le_bytes(read_array(&mut r)?);
    let time = f64::from_le_bytes(read_array(&mut r)?);
    let grid = GridSpec::new(n, box_length).map_err(|e| Error::Snapshot(e.to_string()))?;
    let mut field = SpectralField::zeros(grid);
    for (k1, k2) in signed_order(n) {
        let re = f64::from_le_bytes(read_array(&mut r)?);
        let im = f64::from_le_bytes(read_array(&mut r)?);
        field.set(k1, k2, Complex64::new(re, im));
    }
    let mut rest = [0u8; 1];
    if r.read(&mut rest)? != 0 {
        return Err(Error::Snapshot("trailing bytes after coefficients".into()));
    }
    if !field.is_finite() {
        return Err(Error::Snapshot("non-finite coefficient".into()));
    }
    let defect = field.hermitian_defect();
    let scale = field.max_abs();
    if defect > HERMITIAN_TOLERANCE * scale {
        return Err(Error::Snapshot(format!(
            "coefficients are not Hermitian-symmetric (defect {defect:e}, scale {scale:e})"
        )));
    }
    Ok((field, time))
}

pub fn save(path: impl AsRef<Path>, field: &SpectralField, time: f64) -> Result<()> {
    write_snapshot(BufWriter::new(File::create(path)?), field, time)
}

pub fn load(path: impl AsRef<Path>) -> Result<(SpectralField, f64)> {
    read_snapshot(BufReader::new(File::open(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::random::white;

    #[test]
    fn header_layout() {
        let grid = GridSpec::new(8, 2.5).unwrap();
        let u = SpectralField::single_mode(grid, 1, 0, 2.0, 0.0);
        let mut buf = Vec::new();
        write_snapshot(&mut buf, &u, 0.75).unwrap();
        assert_eq!(buf.len(), 4 + 4 + 4 + 8 + 8 + 64 * 16);
        assert_eq!(&buf[0..4], b"QGK1");
        assert_eq!(u32::from_le_bytes(buf[4..8].try_into().unwrap()), 1);
        assert_eq!(u32::from_le_bytes(buf[8..12].try_into().unwrap()), 8);
        assert_eq!(f64::from_le_bytes(buf[12..20].try_into().unwrap()), 2.5);
        assert_eq!(f64::from_le_bytes(buf[20..28].try_into().unwrap()), 0.75);
        // (k1, k2) = (1, 0) sits at row 1 + 4 = 5, column 0 + 4 = 4
        let off = 28 + (5 * 8 + 4) * 16;
        assert_eq!(f64::from_le_bytes(buf[off..off + 8].try_into().unwrap()), 1.0);
    }

    #[test]
    fn round_trip() {
        let grid = GridSpec::new(16, 3.0).unwrap();
        let u = white(grid, 9, 1.0);
        let mut buf = Vec::new();
        write_snapshot(&mut buf, &u, 1.5).unwrap();
        let (v, t) = read_snapshot(buf.as_slice()).unwrap();
        assert_eq!(t, 1.5);
        assert_eq!(v, u);
    }

    #[test]
    fn rejects_non_hermitian_and_garbage() {
        let grid = GridSpec::new(8, 1.0).unwrap();
        let mut u = SpectralField::zeros(grid);
        u.set(1, 1, Complex64::new(1.0, 0.0));
        let mut buf = Vec::new();
        write_snapshot(&mut buf, &u, 0.0).unwrap();
        assert!(matches!(read_snapshot(buf.as_slice()), Err(Error::Snapshot(_))));
        assert!(matches!(read_snapshot(&b"QGK2"[..]), Err(Error::Snapshot(_))));
        assert!(matches!(read_snapshot(&buf[..40]), Err(Error::Snapshot(_))));
    }
}
