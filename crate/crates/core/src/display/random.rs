//! Random displays and coordinate changes for property checks.

use rand::Rng;

use super::{CoordinateChange, DisplayMatrix};
use crate::error::Result;
use crate::matrix::WittMatrix;
use crate::ring::Ring;
use crate::witt::WittVector;

/// A random Witt vector with small random components.
pub fn random_witt<R: Rng + ?Sized>(rng: &mut R, p: u64, len: usize, ring: &Ring) -> WittVector {
    let comps = (0..len).map(|_| ring.random_elem(rng, 3, 3, p as i64)).collect();
    WittVector::new(p, comps).expect("components share the ring")
}

pub fn random_witt_matrix<R: Rng + ?Sized>(rng: &mut R, p: u64, len: usize, ring: &Ring, rows: usize, cols: usize) -> WittMatrix {
    let zero = WittVector::zero(p, len, ring);
    WittMatrix::from_fn(rows, cols, &zero, |_, _| random_witt(rng, p, len, ring))
}

/// A random display; retries until `w0(B)` is invertible.
pub fn random_display<R: Rng + ?Sized>(rng: &mut R, p: u64, h: usize, d: usize, len: usize, ring: &Ring) -> Result<DisplayMatrix> {
    loop {
        let b = random_witt_matrix(rng, p, len, ring, h, h);
        if b.w0().det()?.is_unit() {
            return DisplayMatrix::new(p, h, d, b);
        }
    }
}

/// A random invertible coordinate change.
pub fn random_change<R: Rng + ?Sized>(rng: &mut R, p: u64, h: usize, d: usize, len: usize, ring: &Ring) -> Result<CoordinateChange> {
    loop {
        let a = random_witt_matrix(rng, p, len, ring, d, d);
        let e = random_witt_matrix(rng, p, len, ring, h - d, h - d);
        if !a.w0().det()?.is_unit() || !e.w0().det()?.is_unit() {
            continue;
        }
        let b = random_witt_matrix(rng, p, len, ring, d, h - d);
        let c = random_witt_matrix(rng, p, len, ring, h - d, d);
        return CoordinateChange::new(a, b, c, e);
    }
}

/// A random column of `h` Witt vectors.
pub fn random_column<R: Rng + ?Sized>(rng: &mut R, p: u64, h: usize, len: usize, ring: &Ring) -> Vec<WittVector> {
    (0..h).map(|_| random_witt(rng, p, len, ring)).collect()
}
