//! Changes of coordinates `phi = [[a, v b], [c, e]]`.

use super::DisplayMatrix;
use crate::error::{Error, Result};
use crate::matrix::{ElemMatrix, Entry, WittMatrix};
use crate::ring::Ring;
use crate::witt::WittVector;

/// An isomorphism of displays in block form. The block `b` is stored
/// itself rather than `v b`: the transformed matrix form uses `b` at full
/// length in characteristic `p`, where `v b` only determines `N - 1` of its
/// components.
#[derive(Clone, Debug, PartialEq)]
pub struct CoordinateChange {
    a: WittMatrix,
    b: WittMatrix,
    c: WittMatrix,
    e: WittMatrix,
}

impl CoordinateChange {
    pub fn new(a: WittMatrix, b: WittMatrix, c: WittMatrix, e: WittMatrix) -> Result<Self> {
        let d = a.nrows();
        let r = e.nrows();
        let shapes = [(&a, d, d), (&b, d, r), (&c, r, d), (&e, r, r)];
        for (m, rows, cols) in shapes {
            if m.nrows() != rows || m.ncols() != cols {
                return Err(Error::Shape(format!("block is {}x{}, expected {rows}x{cols}", m.nrows(), m.ncols())));
            }
        }
        let phi = CoordinateChange { a, b, c, e };
        let w = phi.to_matrix()?.w0();
        let det = w.det()?;
        if !det.is_unit() {
            return Err(Error::NotInvertible(format!("det w0(phi) = {det}")));
        }
        Ok(phi)
    }

    pub fn identity(p: u64, len: usize, ring: &Ring, h: usize, d: usize) -> Self {
        let zero = WittVector::zero(p, len, ring);
        CoordinateChange {
            a: WittMatrix::identity(d, &zero),
            b: WittMatrix::zeros(d, h - d, &zero),
            c: WittMatrix::zeros(h - d, d, &zero),
            e: WittMatrix::identity(h - d, &zero),
        }
    }

    /// Diagonal change with the given entries.
    pub fn diagonal(entries: &[WittVector], d: usize) -> Result<Self> {
        let h = entries.len();
        if d == 0 || d >= h {
            return Err(Error::Shape(format!("dimension {d} for height {h}")));
        }
        let zero = entries[0].zero_like();
        let diag = |range: std::ops::Range<usize>| {
            let off = range.start;
            WittMatrix::from_fn(range.len(), range.len(), &zero, |i, j| {
                if i == j {
                    entries[off + i].clone()
                } else {
                    zero.clone()
                }
            })
        };
        Self::new(diag(0..d), WittMatrix::zeros(d, h - d, &zero), WittMatrix::zeros(h - d, d, &zero), diag(d..h))
    }

    /// Reads the blocks off a full matrix whose upper-right block lies in
    /// `I_R`. The top component of `b`, which the matrix does not
    /// determine, is set to zero.
    pub fn from_matrix(m: &WittMatrix, d: usize) -> Result<Self> {
        let h = m.nrows();
        let len = m.witt_len();
        let ur = m.submatrix(0..d, d..h);
        if !ur.in_ideal_ir() {
            return Err(Error::Precondition("upper-right block of phi is not in I_R".into()));
        }
        let zero = m.zero_entry().clone();
        let b = ur.map(&zero, |x| Ok(x.verschiebung_preimage()?.pad(len)))?;
        Self::new(m.submatrix(0..d, 0..d), b, m.submatrix(d..h, 0..d), m.submatrix(d..h, d..h))
    }

    pub fn a(&self) -> &WittMatrix {
        &self.a
    }

    pub fn b(&self) -> &WittMatrix {
        &self.b
    }

    pub fn c(&self) -> &WittMatrix {
        &self.c
    }

    pub fn e(&self) -> &WittMatrix {
        &self.e
    }

    pub fn height(&self) -> usize {
        self.a.nrows() + self.e.nrows()
    }

    pub fn dimension(&self) -> usize {
        self.a.nrows()
    }

    pub fn witt_len(&self) -> usize {
        self.a.witt_len()
    }

    /// `[[a, v b], [c, e]]`.
    pub fn to_matrix(&self) -> Result<WittMatrix> {
        WittMatrix::from_blocks(&self.a, &self.b.verschiebung(), &self.c, &self.e)
    }

    /// `w0(e)`: the action on `Q / I_R P`, a single element when `d = h - 1`.
    pub fn one_form_factor(&self) -> ElemMatrix {
        self.e.w0()
    }

    /// `self . first`, the change applying `first` and then `self`.
    ///
    /// The upper-right block of the product is
    /// `a2 v(b1) + v(b2) e1 = v(f(a2) b1 + b2 f(e1))`.
    pub fn compose(&self, first: &CoordinateChange) -> Result<Self> {
        let (a2, b2, c2, e2) = (&self.a, &self.b, &self.c, &self.e);
        let (a1, b1, c1, e1) = (&first.a, &first.b, &first.c, &first.e);
        let len = self.witt_len();
        let a = a2.mul(a1)?.add(&b2.verschiebung().mul(c1)?)?;
        let c = c2.mul(a1)?.add(&e2.mul(c1)?)?;
        let e = c2.mul(&b1.verschiebung())?.add(&e2.mul(e1)?)?;
        let fa2 = a2.frobenius()?;
        let flen = fa2.witt_len();
        let b = fa2.mul(&b1.truncate(flen)?)?.add(&b2.truncate(flen)?.mul(&e1.frobenius()?)?)?;
        let zero = WittVector::zero(a.p(), len, a.ring());
        let b = b.map(&zero, |x| Ok(x.pad(len)))?;
        Ok(CoordinateChange { a, b, c, e })
    }

    /// The inverse change. Its `b` block is `-f(a') b f(e)^-1`, where `a'` is
    /// the upper-left block of the inverse matrix, so that both composites
    /// are the identity including the top component of `b`.
    pub fn inverse(&self) -> Result<Self> {
        let inv = self.to_matrix()?.inverse()?;
        let (h, d) = (self.height(), self.dimension());
        let len = self.witt_len();
        let a = inv.submatrix(0..d, 0..d);
        let c = inv.submatrix(d..h, 0..d);
        let e = inv.submatrix(d..h, d..h);
        let fe_inv = self.e.frobenius()?.inverse()?;
        let fa = a.frobenius()?;
        let flen = fa.witt_len();
        let b = fa.mul(&self.b.truncate(flen)?)?.mul(&fe_inv)?.neg();
        let zero = WittVector::zero(a.p(), len, a.ring());
        let b = b.map(&zero, |x| Ok(x.pad(len)))?;
        Ok(CoordinateChange { a, b, c, e })
    }

    /// Builds a change without checking that it is invertible, for generic
    /// (symbolic) blocks whose determinant is not a unit of the ring.
    pub fn from_blocks_unchecked(a: WittMatrix, b: WittMatrix, c: WittMatrix, e: WittMatrix) -> Self {
        CoordinateChange { a, b, c, e }
    }

    pub fn truncate(&self, len: usize) -> Result<Self> {
        Ok(CoordinateChange {
            a: self.a.truncate(len)?,
            b: self.b.truncate(len)?,
            c: self.c.truncate(len)?,
            e: self.e.truncate(len)?,
        })
    }
}

/// `B' = [[fa, b], [p fc, fe]] . B . phi^-1`, returned with `w0(e)`.
/// Costs one Frobenius application: outside characteristic `p` the result
/// is one component shorter.
pub(super) fn change_of_coords(disp: &DisplayMatrix, phi: &CoordinateChange) -> Result<(DisplayMatrix, ElemMatrix)> {
    if phi.height() != disp.h || phi.dimension() != disp.d {
        return Err(Error::Shape(format!(
            "change of shape ({}, {}) for display ({}, {})",
            phi.height(),
            phi.dimension(),
            disp.h,
            disp.d
        )));
    }
    if phi.witt_len() != disp.witt_len() {
        return Err(Error::WittMismatch(format!("phi has length {}, B has {}", phi.witt_len(), disp.witt_len())));
    }
    let form = transform_matrix_form(&disp.form, phi)?;
    let out = DisplayMatrix::new(disp.p, disp.h, disp.d, form)?;
    Ok((out, phi.one_form_factor()))
}

/// The matrix part of [`change_of_coords`], for any square `form` of the
/// right size. `phi` may be longer than `form`.
pub fn transform_matrix_form(form: &WittMatrix, phi: &CoordinateChange) -> Result<WittMatrix> {
    let fa = phi.a.frobenius()?;
    let len = fa.witt_len().min(form.witt_len());
    let phi_inv = phi.truncate(len)?.to_matrix()?.inverse()?;
    let pw = WittVector::from_int(form.p(), len, form.ring(), form.p());
    let left = WittMatrix::from_blocks(
        &fa.truncate(len)?,
        &phi.b.truncate(len)?,
        &phi.c.frobenius()?.truncate(len)?.scale(&pw),
        &phi.e.frobenius()?.truncate(len)?,
    )?;
    left.mul(&form.truncate(len)?)?.mul(&phi_inv)
}
