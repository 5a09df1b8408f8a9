//! The dual display and the pairing certificate.
//!
//! Derivation of the dual matrix form. Let `e^1, ..., e^h` be the dual
//! basis of `P^t = Hom(P, W(R))`. Since `Q = I_R P + <e_{d+1}, ..., e_h>`,
//! the maps sending `Q` into `I_R` are `Q^t = I_R P^t + <e^1, ..., e^d>`, so
//! the dual has dimension `h - d` and its basis in standard order is
//!
//! ```text
//! (e^{d+1}, ..., e^h, e^1, ..., e^d).
//! ```
//!
//! Write `V^-t e^k = sum_i c_ik e^i` for `k <= d` and
//! `V^-t (v(1) e^k) = sum_i c_ik e^i` for `k > d`, so `c` is the structure
//! matrix of the dual in the natural order. Pair each generator of `Q^t`
//! with each generator of `Q` in the defining relation
//! `v(<V^-t g, V^-1 x>) = g(x)`:
//!
//! - `g = e^k` (`k <= d`) with `x = v(1) e_j` (`j <= d`): `V^-1 x = F e_j`, and
//!   `g(x) = v(1) delta_kj`.
//! - `g = v(1) e^k` (`k > d`) with `x = e_j` (`j > d`): `V^-t g = F^t e^k`,
//!   and `g(x) = v(1) delta_kj`.
//! - mixed pairs: both sides vanish unless `k = j`, which cannot happen.
//!
//! In every case the left side is `v((c^T b)_kj)` with `b = B^-1`, and `v` is
//! injective, so `c^T b = 1` and `c = (b^-1)^T = B^T`. The dual matrix form
//! is `c^-1 = b^T` with rows and columns reordered into the standard order:
//! `B_dual[i][j] = b[perm[j]][perm[i]]` where `perm` lists the standard
//! order as natural indices. Applying the construction twice returns `B`
//! exactly, so the biduality isomorphism is the identity change.

use super::{basis_vector, DisplayMatrix};
use crate::error::{Error, Result};
use crate::witt::WittVector;

/// Natural indices of the dual basis in standard order.
pub(super) fn dual_order(h: usize, d: usize) -> Vec<usize> {
    (d..h).chain(0..d).collect()
}

pub(super) fn dual(disp: &DisplayMatrix) -> Result<DisplayMatrix> {
    let perm = dual_order(disp.h, disp.d);
    let bt = disp.structure.transpose();
    DisplayMatrix::new(disp.p, disp.h, disp.h - disp.d, bt.permute(&perm))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingReport {
    /// Number of `(g, x)` pairs checked.
    pub pairs: usize,
    /// Pairs `(k, j)` of natural indices where the relation failed.
    pub failures: Vec<(usize, usize)>,
}

impl PairingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `v(<V^-t g, V^-1 x>) = g(x)` for `g` over the generators of `Q^t`
/// and `x` over the generators of `Q`, each scaled by the given Witt
/// scalars (Teichmüller one when `scalars` is empty).
pub fn pairing_certificate(disp: &DisplayMatrix, scalars: &[WittVector]) -> Result<PairingReport> {
    let dual = disp.dual()?;
    let (h, d) = (disp.h, disp.d);
    let len = disp.witt_len();
    let one = WittVector::one(disp.p, len, disp.ring());
    let scalars = if scalars.is_empty() { std::slice::from_ref(&one) } else { scalars };
    let perm = dual_order(h, d);
    let mut pairs = 0;
    let mut failures = Vec::new();
    for k in 0..h {
        for j in 0..h {
            for s in scalars {
                for t in scalars {
                    // g = s e^k (times v(1) when k > d), x = t e_j (times v(1) when j <= d)
                    let g_nat = scaled_basis(disp, k, s, k >= d);
                    let x = scaled_basis(disp, j, t, j < d);
                    let g_std: Vec<WittVector> = perm.iter().map(|&i| g_nat[i].clone()).collect();
                    let vt_g_std = dual.apply_vinv(&g_std)?;
                    let mut vt_g = vec![vt_g_std[0].clone(); h];
                    for (pos, &i) in perm.iter().enumerate() {
                        vt_g[i] = vt_g_std[pos].clone();
                    }
                    let vinv_x = disp.apply_vinv(&x)?;
                    let l = vt_g[0].len().min(vinv_x[0].len());
                    let mut pairing = WittVector::zero(disp.p, l, disp.ring());
                    for i in 0..h {
                        pairing = pairing.add(&vt_g[i].truncate(l)?.mul(&vinv_x[i].truncate(l)?));
                    }
                    let lhs = pairing.verschiebung();
                    let mut rhs = WittVector::zero(disp.p, len, disp.ring());
                    for i in 0..h {
                        rhs = rhs.add(&g_nat[i].mul(&x[i]));
                    }
                    pairs += 1;
                    if lhs != rhs.truncate(l)? {
                        failures.push((k, j));
                    }
                }
            }
        }
    }
    if pairs == 0 {
        return Err(Error::Precondition("no pairs to check".into()));
    }
    Ok(PairingReport { pairs, failures })
}

fn scaled_basis(disp: &DisplayMatrix, j: usize, s: &WittVector, shifted: bool) -> Vec<WittVector> {
    let s = if shifted { s.verschiebung() } else { s.clone() };
    basis_vector(disp, j).iter().map(|x| x.mul(&s)).collect()
}
