//! Dense matrices over `R` and over `W_N(R)`.

use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};
use crate::witt::WittVector;

/// Ring operations a matrix entry needs.
pub trait Entry: Clone + PartialEq + fmt::Display + fmt::Debug {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn invert(&self) -> Result<Self>;
    fn compatible(&self, other: &Self) -> Result<()>;
}

impl Entry for Elem {
    fn add(&self, other: &Self) -> Self {
        Elem::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Elem::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Elem::mul(self, other)
    }
    fn neg(&self) -> Self {
        Elem::neg(self)
    }
    fn is_zero(&self) -> bool {
        Elem::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        self.ring().zero()
    }
    fn one_like(&self) -> Self {
        self.ring().one()
    }
    fn invert(&self) -> Result<Self> {
        Elem::invert(self)
    }
    fn compatible(&self, other: &Self) -> Result<()> {
        self.ring().check_same(other.ring())
    }
}

impl Entry for WittVector {
    fn add(&self, other: &Self) -> Self {
        WittVector::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        WittVector::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        WittVector::mul(self, other)
    }
    fn neg(&self) -> Self {
        WittVector::neg(self)
    }
    fn is_zero(&self) -> bool {
        WittVector::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        WittVector::zero(self.p(), self.len(), self.ring())
    }
    fn one_like(&self) -> Self {
        WittVector::one(self.p(), self.len(), self.ring())
    }
    fn invert(&self) -> Result<Self> {
        WittVector::invert(self)
    }
    fn compatible(&self, other: &Self) -> Result<()> {
        if self.p() != other.p() || self.len() != other.len() {
            return Err(Error::WittMismatch(format!("{self:?} vs {other:?}")));
        }
        self.ring().check_same(other.ring())
    }
}

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    zero: T,
    data: Vec<T>,
}

pub type ElemMatrix = Matrix<Elem>;
pub type WittMatrix = Matrix<WittVector>;

impl<T: Entry> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let first = rows
            .first()
            .and_then(|r| r.first())
            .ok_or_else(|| Error::Shape("matrix needs at least one entry".into()))?
            .clone();
        let cols = rows[0].len();
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::Shape(format!("ragged rows: {} vs {cols}", r.len())));
            }
            for x in r {
                first.compatible(&x)?;
                data.push(x);
            }
        }
        Ok(Matrix { rows: nrows, cols, zero: first.zero_like(), data })
    }

    pub fn from_fn(rows: usize, cols: usize, zero: &T, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, zero: zero.zero_like(), data }
    }

    pub fn zeros(rows: usize, cols: usize, zero: &T) -> Self {
        Self::from_fn(rows, cols, zero, |_, _| zero.zero_like())
    }

    pub fn identity(n: usize, zero: &T) -> Self {
        let one = zero.one_like();
        Self::from_fn(n, n, zero, |i, j| if i == j { one.clone() } else { zero.zero_like() })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn zero_entry(&self) -> &T {
        &self.zero
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: T) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        self.zero.compatible(&other.zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self::from_fn(self.rows, self.cols, &self.zero, |i, j| self.get(i, j).add(other.get(i, j))))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self::from_fn(self.rows, self.cols, &self.zero, |i, j| self.get(i, j).sub(other.get(i, j))))
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.rows, self.cols, &self.zero, |i, j| self.get(i, j).neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        self.zero.compatible(&other.zero)?;
        Ok(Self::from_fn(self.rows, other.cols, &self.zero, |i, j| {
            let mut acc = self.zero.clone();
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            acc
        }))
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = self.zero.clone();
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect())
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::from_fn(self.rows, self.cols, &self.zero, |i, j| s.mul(self.get(i, j)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, &self.zero, |i, j| self.get(j, i).clone())
    }

    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> Self {
        let (r0, c0) = (rows.start, cols.start);
        Self::from_fn(rows.len(), cols.len(), &self.zero, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// `[[a, b], [c, e]]`.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, e: &Self) -> Result<Self> {
        if a.rows != b.rows || c.rows != e.rows || a.cols != c.cols || b.cols != e.cols {
            return Err(Error::Shape("block sizes do not fit".into()));
        }
        let (r, s) = (a.rows, a.cols);
        Ok(Self::from_fn(a.rows + c.rows, a.cols + b.cols, &a.zero, |i, j| match (i < r, j < s) {
            (true, true) => a.get(i, j).clone(),
            (true, false) => b.get(i, j - s).clone(),
            (false, true) => c.get(i - r, j).clone(),
            (false, false) => e.get(i - r, j - s).clone(),
        }))
    }

    /// Reorders rows and columns: entry `(i, j)` of the result is entry
    /// `(perm[i], perm[j])` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        Self::from_fn(self.rows, self.cols, &self.zero, |i, j| self.get(perm[i], perm[j]).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| if i == j { *self.get(i, j) == self.zero.one_like() } else { self.get(i, j).is_zero() })
            })
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Self {
        let n = self.rows - 1;
        Self::from_fn(n, n, &self.zero, |i, j| {
            let r = if i < skip_row { i } else { i + 1 };
            let c = if j < skip_col { j } else { j + 1 };
            self.get(r, c).clone()
        })
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::Shape(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        Ok(self.det_unchecked())
    }

    fn det_unchecked(&self) -> T {
        match self.rows {
            0 => self.zero.one_like(),
            1 => self.data[0].clone(),
            2 => self.data[0].mul(&self.data[3]).sub(&self.data[1].mul(&self.data[2])),
            n => {
                let mut acc = self.zero.clone();
                for j in 0..n {
                    let a = self.get(0, j);
                    if a.is_zero() {
                        continue;
                    }
                    let term = a.mul(&self.minor(0, j).det_unchecked());
                    acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                }
                acc
            }
        }
    }

    /// Transpose of the cofactor matrix.
    pub fn adjugate(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("adjugate of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 1 {
            return Ok(Self::identity(1, &self.zero));
        }
        Ok(Self::from_fn(n, n, &self.zero, |i, j| {
            let m = self.minor(j, i).det_unchecked();
            if (i + j) % 2 == 0 {
                m
            } else {
                m.neg()
            }
        }))
    }

    /// Adjugate divided by the determinant.
    pub fn inverse(&self) -> Result<Self> {
        let det = self.det()?;
        let inv = det.invert().map_err(|e| Error::NotInvertible(format!("determinant {det}: {e}")))?;
        Ok(self.adjugate()?.scale(&inv))
    }

    pub fn map<U: Entry>(&self, zero: &U, f: impl Fn(&T) -> Result<U>) -> Result<Matrix<U>> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, zero: zero.zero_like(), data })
    }
}

impl ElemMatrix {
    pub fn ring(&self) -> &Ring {
        self.zero.ring()
    }

    pub fn parse(ring: &Ring, rows: &[&[&str]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| crate::ring::parse::parse_element(ring, s)).collect())
                .collect::<Result<_>>()?,
        )
    }

    /// Entrywise Teichmüller lifts.
    pub fn teichmuller(&self, p: u64, len: usize) -> WittMatrix {
        let zero = WittVector::zero(p, len, self.ring());
        Matrix::from_fn(self.rows, self.cols, &zero, |i, j| WittVector::teichmuller(p, self.get(i, j), len))
    }

    pub fn reduce_into(&self, ring: &Ring) -> Result<Self> {
        self.map(&ring.zero(), |x| ring.reduce_from(x))
    }

    /// Entrywise `x -> x^q`.
    pub fn power_entries(&self, q: u64) -> Self {
        Self::from_fn(self.rows, self.cols, &self.zero, |i, j| self.get(i, j).pow(q))
    }
}

impl WittMatrix {
    pub fn p(&self) -> u64 {
        self.zero.p()
    }

    /// Witt length of the entries.
    pub fn witt_len(&self) -> usize {
        self.zero.len()
    }

    pub fn ring(&self) -> &Ring {
        self.zero.ring()
    }

    /// Entrywise `w_0`.
    pub fn w0(&self) -> ElemMatrix {
        Matrix::from_fn(self.rows, self.cols, self.zero.component(0), |i, j| self.get(i, j).component(0).clone())
    }

    /// Entrywise Frobenius; shortens entries by one unless the ring has
    /// characteristic `p`.
    pub fn frobenius(&self) -> Result<Self> {
        let zero = self.zero.frobenius()?;
        self.map(&zero, WittVector::frobenius)
    }

    pub fn frobenius_inverse(&self) -> Result<Self> {
        self.map(&self.zero, WittVector::frobenius_inverse)
    }

    pub fn verschiebung(&self) -> Self {
        Self::from_fn(self.rows, self.cols, &self.zero, |i, j| self.get(i, j).verschiebung())
    }

    pub fn truncate(&self, len: usize) -> Result<Self> {
        let zero = self.zero.truncate(len)?;
        self.map(&zero, |x| x.truncate(len))
    }

    pub fn reduce_into(&self, ring: &Ring) -> Result<Self> {
        let zero = self.zero.reduce_into(ring)?;
        self.map(&zero, |x| x.reduce_into(ring))
    }

    /// Whether every entry lies in `I_R`.
    pub fn in_ideal_ir(&self) -> bool {
        self.data.iter().all(WittVector::in_ideal_ir)
    }
}

impl<T: Entry> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            f.write_str(if i == 0 { "[" } else { " " })?;
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
            if i + 1 == self.rows {
                f.write_str("]")?;
            } else {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

impl<T: Entry> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elem_inverse_over_truncated_ring() {
        let r = Ring::parse("Z/9[u1]/(3,u1)^3").unwrap();
        let m = ElemMatrix::parse(&r, &[&["1", "u1"], &["3", "2 + u1"]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&m).unwrap().is_identity());
    }

    #[test]
    fn witt_inverse_matches_product() {
        let r = Ring::parse("Z/4").unwrap();
        let w = |a: &str, b: &str| WittVector::parse(2, &r, &[a, b]).unwrap();
        let m = WittMatrix::from_rows(vec![
            vec![w("1", "1"), w("0", "1"), w("2", "0")],
            vec![w("0", "3"), w("3", "0"), w("1", "1")],
            vec![w("2", "2"), w("0", "0"), w("1", "2")],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&m).unwrap().is_identity());
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let r = Ring::parse("Z/9").unwrap();
        let m = ElemMatrix::parse(&r, &[&["1", "2"], &["3", "6"]]).unwrap();
        assert!(matches!(m.inverse(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn determinant_of_four_by_four() {
        let z = Ring::integers();
        let m = ElemMatrix::parse(&z, &[&["2", "0", "1", "3"], &["1", "1", "0", "0"], &["0", "4", "1", "1"], &["3", "0", "0", "2"]])
            .unwrap();
        // Independent cofactor expansion in Python.
        assert_eq!(m.det().unwrap(), z.from_int(6));
    }
}
