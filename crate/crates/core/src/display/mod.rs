//! Displays in matrix form.
//!
//! A display of height `h` and dimension `d` over `R` is stored through its
//! matrix form `B`, the inverse of the structure matrix `b = (b_ij)` with
//!
//! ```text
//! F e_j     = sum_i b_ij e_i    (j <= d)
//! V^-1 e_j  = sum_i b_ij e_i    (j > d)
//! ```
//!
//! so that, writing `b = [u1 | u2]` with `u1` the first `d` columns,
//! `F [x; y] = [u1 | p u2] [fx; fy]` and `V^-1 [vx; y] = [u1 | u2] [x; fy]`.

mod coords;
pub mod corpus;
mod dual;
mod nilpotence;
pub mod random;
mod reduce;

use crate::error::{Error, Result};
use crate::matrix::{ElemMatrix, WittMatrix};
use crate::ring::Ring;
use crate::witt::WittVector;

pub use coords::{transform_matrix_form, CoordinateChange};
pub use dual::{pairing_certificate, PairingReport};
pub use nilpotence::{default_max_iter, Nilpotence};
pub use reduce::reduce_h2;

#[derive(Clone, Debug, PartialEq)]
pub struct DisplayMatrix {
    p: u64,
    h: usize,
    d: usize,
    form: WittMatrix,
    structure: WittMatrix,
}

impl DisplayMatrix {
    /// Validates `B` and computes the structure matrix `B^-1`.
    pub fn new(p: u64, h: usize, d: usize, form: WittMatrix) -> Result<Self> {
        if h < 2 || d == 0 || d >= h {
            return Err(Error::Shape(format!("need h >= 2 and 1 <= d < h, got h = {h}, d = {d}")));
        }
        if form.nrows() != h || form.ncols() != h {
            return Err(Error::Shape(format!("matrix form is {}x{}, expected {h}x{h}", form.nrows(), form.ncols())));
        }
        if form.p() != p {
            return Err(Error::WittMismatch(format!("entries use p = {}, display p = {p}", form.p())));
        }
        let det0 = form.w0().det()?;
        if !det0.is_unit() {
            return Err(Error::NotInvertible(format!("det w0(B) = {det0} is not a unit")));
        }
        let structure = form.inverse()?;
        Ok(DisplayMatrix { p, h, d, form, structure })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn height(&self) -> usize {
        self.h
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn witt_len(&self) -> usize {
        self.form.witt_len()
    }

    pub fn ring(&self) -> &Ring {
        self.form.ring()
    }

    /// The matrix form `B`.
    pub fn matrix_form(&self) -> &WittMatrix {
        &self.form
    }

    /// The structure matrix `b = B^-1`.
    pub fn structure_matrix(&self) -> &WittMatrix {
        &self.structure
    }

    /// Witt length after one Frobenius application.
    pub fn frobenius_len(&self) -> usize {
        self.form.zero_entry().frobenius_len()
    }

    pub fn truncate(&self, len: usize) -> Result<Self> {
        Ok(DisplayMatrix {
            p: self.p,
            h: self.h,
            d: self.d,
            form: self.form.truncate(len)?,
            structure: self.structure.truncate(len)?,
        })
    }

    fn check_column(&self, x: &[WittVector]) -> Result<()> {
        if x.len() != self.h {
            return Err(Error::Shape(format!("column of length {} for height {}", x.len(), self.h)));
        }
        x.iter().try_for_each(|c| crate::matrix::Entry::compatible(self.form.zero_entry(), c))
    }

    /// `[u1 | p u2]` at length `len`: the matrix of `F` against `f(x)`.
    pub fn frobenius_matrix(&self, len: usize) -> Result<WittMatrix> {
        let b = self.structure.truncate(len)?;
        let pw = WittVector::from_int(self.p, len, self.ring(), self.p);
        Ok(WittMatrix::from_fn(self.h, self.h, b.zero_entry(), |i, j| {
            if j < self.d {
                b.get(i, j).clone()
            } else {
                pw.mul(b.get(i, j))
            }
        }))
    }

    /// `F x` for a column `x` of `h` Witt vectors; the result has the
    /// Frobenius length.
    pub fn apply_f(&self, x: &[WittVector]) -> Result<Vec<WittVector>> {
        self.check_column(x)?;
        let len = self.frobenius_len();
        let fx = x.iter().map(WittVector::frobenius).collect::<Result<Vec<_>>>()?;
        self.frobenius_matrix(len)?.apply(&fx)
    }

    /// `V^-1 [vx; y]` given `x` (first `d` entries) and `y` directly.
    pub fn apply_vinv_parts(&self, x: &[WittVector], y: &[WittVector]) -> Result<Vec<WittVector>> {
        if x.len() != self.d || y.len() != self.h - self.d {
            return Err(Error::Shape(format!("expected {} + {} entries", self.d, self.h - self.d)));
        }
        let fy = y.iter().map(WittVector::frobenius).collect::<Result<Vec<_>>>()?;
        let len = x.iter().chain(&fy).map(WittVector::len).min().unwrap();
        let mut col: Vec<WittVector> = x.iter().map(|v| v.truncate(len)).collect::<Result<_>>()?;
        for v in &fy {
            col.push(v.truncate(len)?);
        }
        self.structure.truncate(len)?.apply(&col)
    }

    /// `V^-1 q` for `q` in `Q`, encoded as a column whose first `d` entries
    /// lie in `I_R`. The result has length `N - 1`.
    pub fn apply_vinv(&self, q: &[WittVector]) -> Result<Vec<WittVector>> {
        self.check_column(q)?;
        let x = q[..self.d]
            .iter()
            .map(|v| {
                v.verschiebung_preimage()
                    .map_err(|_| Error::Precondition(format!("entry {v} of a Q-vector is not in I_R")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.apply_vinv_parts(&x, &q[self.d..])
    }

    /// Last column of `w0(B)`.
    pub fn last_column_w0(&self) -> Vec<crate::ring::Elem> {
        self.form.w0().column(self.h - 1)
    }

    /// `w0(B)` as a matrix over `R`.
    pub fn w0(&self) -> ElemMatrix {
        self.form.w0()
    }

    pub fn change_of_coords(&self, phi: &CoordinateChange) -> Result<(DisplayMatrix, ElemMatrix)> {
        coords::change_of_coords(self, phi)
    }

    pub fn is_nilpotent(&self, max_iter: Option<usize>) -> Result<Nilpotence> {
        nilpotence::is_nilpotent(self, max_iter)
    }

    pub fn dual(&self) -> Result<DisplayMatrix> {
        dual::dual(self)
    }

    /// Entrywise image of `B` in a ring with the same variables.
    pub fn reduce_into(&self, ring: &Ring) -> Result<Self> {
        DisplayMatrix::new(self.p, self.h, self.d, self.form.reduce_into(ring)?)
    }
}

/// The standard basis vector `e_j` at the display's length.
pub fn basis_vector(d: &DisplayMatrix, j: usize) -> Vec<WittVector> {
    let zero = WittVector::zero(d.p, d.witt_len(), d.ring());
    let one = WittVector::one(d.p, d.witt_len(), d.ring());
    (0..d.h).map(|i| if i == j { one.clone() } else { zero.clone() }).collect()
}

#[cfg(test)]
mod tests;
