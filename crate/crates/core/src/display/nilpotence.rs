//! Nilpotence of the lower-right corner modulo `p`.

use super::DisplayMatrix;
use crate::error::Result;
use crate::ring::{Ring, RingDescriptor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nilpotence {
    /// The smallest `n` with `f^n(B) ... f(B) B = 0`.
    Nilpotent(usize),
    /// The corner is invertible modulo `p`, so no twisted product vanishes.
    NotNilpotent,
    /// No vanishing product within the iteration bound.
    Unknown { iterations: usize },
}

/// The truncation exponent when `R/(p)` is a quotient by an ideal power,
/// else 32.
pub fn default_max_iter(ring_mod_p: &Ring) -> usize {
    match ring_mod_p.descriptor() {
        Some(RingDescriptor::QuotientByIdealPower { exponent, .. }) => *exponent as usize,
        _ => 32,
    }
}

pub(super) fn is_nilpotent(disp: &DisplayMatrix, max_iter: Option<usize>) -> Result<Nilpotence> {
    let rp = disp.ring().mod_p(disp.p)?;
    let (d, h) = (disp.d, disp.h);
    let corner = disp.form.w0().submatrix(d..h, d..h).reduce_into(&rp)?;
    if corner.is_zero() {
        return Ok(Nilpotence::Nilpotent(0));
    }
    if corner.det()?.is_unit() {
        return Ok(Nilpotence::NotNilpotent);
    }
    let max_iter = max_iter.unwrap_or_else(|| default_max_iter(&rp));
    let mut twist = corner.clone();
    let mut product = corner;
    for n in 1..=max_iter {
        twist = twist.power_entries(disp.p);
        product = twist.mul(&product)?;
        if product.is_zero() {
            return Ok(Nilpotence::Nilpotent(n));
        }
    }
    Ok(Nilpotence::Unknown { iterations: max_iter })
}
