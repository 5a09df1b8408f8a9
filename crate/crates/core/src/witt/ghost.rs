//! Ghost-component arithmetic in torsion-free rings.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::Result;
use crate::ring::Elem;

/// `w_k(x) = sum_{i<=k} p^i x_i^(p^(k-i))` for `k < count`.
pub(crate) fn ghost_components(p: u64, comps: &[Elem], count: usize) -> Vec<Elem> {
    assert!(count <= comps.len());
    let mut powers: Vec<Elem> = Vec::with_capacity(count);
    let mut out = Vec::with_capacity(count);
    for c in &comps[..count] {
        for pw in powers.iter_mut() {
            *pw = pw.pow(p);
        }
        powers.push(c.clone());
        let mut acc = powers[0].clone();
        let mut pi = BigInt::one();
        for pw in &powers[1..] {
            pi *= p;
            acc = acc.add(&pw.scale_int(&pi));
        }
        out.push(acc);
    }
    out
}

/// Inverts the ghost map: finds `c` with `w_k(c) = ghosts[k]`, dividing
/// exactly by `p^k` at each step. The ring must be torsion-free; a
/// non-exact division means the targets were not ghosts of a Witt vector.
pub(crate) fn solve_from_ghosts(p: u64, ghosts: &[Elem]) -> Result<Vec<Elem>> {
    let mut comps: Vec<Elem> = Vec::with_capacity(ghosts.len());
    let mut powers: Vec<Elem> = Vec::with_capacity(ghosts.len());
    for g in ghosts {
        for pw in powers.iter_mut() {
            *pw = pw.pow(p);
        }
        let mut acc = g.clone();
        let mut pi = BigInt::one();
        for pw in &powers {
            acc = acc.sub(&pw.scale_int(&pi));
            pi *= p;
        }
        let c = acc.div_exact_int(&pi)?;
        powers.push(c.clone());
        comps.push(c);
    }
    Ok(comps)
}
