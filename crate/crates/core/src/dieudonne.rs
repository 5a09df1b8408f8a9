//! Dieudonné modules of displays over finite fields.
//!
//! With `B^-1 = [u1 | u2]` (column blocks) and `B = [w1; w2]` (row blocks,
//! `w1` the first `d` rows), `F x = [u1 | p u2] f(x)` and
//! `V x = [v w1; f^-1 w2] f^-1(x)`.

use crate::display::DisplayMatrix;
use crate::error::{Error, Result};
use crate::matrix::WittMatrix;
use crate::ring::Ring;
use crate::witt::{finite_field_degree, WittVector};

#[derive(Clone, Debug, PartialEq)]
pub struct DieudonneModule {
    p: u64,
    h: usize,
    f_matrix: WittMatrix,
    v_matrix: WittMatrix,
}

pub fn to_dieudonne(disp: &DisplayMatrix) -> Result<DieudonneModule> {
    let p = disp.p();
    if finite_field_degree(disp.ring(), p).is_none() {
        return Err(Error::Precondition(format!("{} is not a finite field of characteristic {p}", disp.ring())));
    }
    let (h, d) = (disp.height(), disp.dimension());
    let f_matrix = disp.frobenius_matrix(disp.witt_len())?;
    let b = disp.matrix_form();
    let w1 = b.submatrix(0..d, 0..h).verschiebung();
    let w2 = b.submatrix(d..h, 0..h).frobenius_inverse()?;
    let v_matrix = WittMatrix::from_fn(h, h, b.zero_entry(), |i, j| {
        if i < d {
            w1.get(i, j).clone()
        } else {
            w2.get(i - d, j).clone()
        }
    });
    Ok(DieudonneModule { p, h, f_matrix, v_matrix })
}

impl DieudonneModule {
    /// Builds a module from matrices, checking shapes and the base field.
    pub fn new(f_matrix: WittMatrix, v_matrix: WittMatrix) -> Result<Self> {
        let h = f_matrix.nrows();
        if !f_matrix.is_square() || v_matrix.nrows() != h || v_matrix.ncols() != h {
            return Err(Error::Shape("F and V must be square of the same size".into()));
        }
        let p = f_matrix.p();
        if finite_field_degree(f_matrix.ring(), p).is_none() {
            return Err(Error::Precondition(format!("{} is not a finite field", f_matrix.ring())));
        }
        Ok(DieudonneModule { p, h, f_matrix, v_matrix })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.h
    }

    pub fn witt_len(&self) -> usize {
        self.f_matrix.witt_len()
    }

    pub fn field(&self) -> &Ring {
        self.f_matrix.ring()
    }

    pub fn f_matrix(&self) -> &WittMatrix {
        &self.f_matrix
    }

    pub fn v_matrix(&self) -> &WittMatrix {
        &self.v_matrix
    }

    /// `F x = F_mat f(x)`.
    pub fn apply_f(&self, x: &[WittVector]) -> Result<Vec<WittVector>> {
        let fx = x.iter().map(WittVector::frobenius).collect::<Result<Vec<_>>>()?;
        self.f_matrix.apply(&fx)
    }

    /// `V x = V_mat f^-1(x)`.
    pub fn apply_v(&self, x: &[WittVector]) -> Result<Vec<WittVector>> {
        let fx = x.iter().map(WittVector::frobenius_inverse).collect::<Result<Vec<_>>>()?;
        self.v_matrix.apply(&fx)
    }

    fn basis(&self, j: usize) -> Vec<WittVector> {
        let zero = WittVector::zero(self.p, self.witt_len(), self.field());
        let one = WittVector::one(self.p, self.witt_len(), self.field());
        (0..self.h).map(|i| if i == j { one.clone() } else { zero.clone() }).collect()
    }

    /// `FV e_j = VF e_j = p e_j` for every basis vector.
    pub fn check_fv(&self) -> Result<bool> {
        let pw = WittVector::from_int(self.p, self.witt_len(), self.field(), self.p);
        for j in 0..self.h {
            let e = self.basis(j);
            let pe: Vec<WittVector> = e.iter().map(|x| x.mul(&pw)).collect();
            if self.apply_f(&self.apply_v(&e)?)? != pe || self.apply_v(&self.apply_f(&e)?)? != pe {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Reorders the basis: the new `i`-th basis vector is the old `perm[i]`-th.
    pub fn permute(&self, perm: &[usize]) -> Self {
        DieudonneModule {
            p: self.p,
            h: self.h,
            f_matrix: self.f_matrix.permute(perm),
            v_matrix: self.v_matrix.permute(perm),
        }
    }
}

/// Whether `g : M -> M'` intertwines the operators:
/// `F'_mat f(g) = g F_mat` and `V'_mat f^-1(g) = g V_mat`, with `g` invertible.
pub fn dieudonne_isomorphic_under_base_change(m: &DieudonneModule, m2: &DieudonneModule, g: &WittMatrix) -> Result<bool> {
    if m.h != m2.h || g.nrows() != m.h || g.ncols() != m.h {
        return Err(Error::Shape(format!("ranks {} and {} with a {}x{} matrix", m.h, m2.h, g.nrows(), g.ncols())));
    }
    if m.witt_len() != m2.witt_len() || m.field() != m2.field() {
        return Err(Error::WittMismatch("modules over different fields or lengths".into()));
    }
    if !g.w0().det()?.is_unit() {
        return Ok(false);
    }
    let f_ok = m2.f_matrix.mul(&g.frobenius()?)? == g.mul(&m.f_matrix)?;
    let v_ok = m2.v_matrix.mul(&g.frobenius_inverse()?)? == g.mul(&m.v_matrix)?;
    Ok(f_ok && v_ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::display::random::{random_column, random_display, random_witt, random_witt_matrix};
    use rand::SeedableRng;

    fn swap(p: u64) -> DisplayMatrix {
        let r = Ring::integers_mod(p).unwrap();
        let zero = WittVector::zero(p, 3, &r);
        let one = WittVector::one(p, 3, &r);
        DisplayMatrix::new(p, 2, 1, WittMatrix::from_rows(vec![vec![zero.clone(), one.clone()], vec![one, zero]]).unwrap())
            .unwrap()
    }

    #[test]
    fn swap_display_operators() {
        let m = to_dieudonne(&swap(3)).unwrap();
        let e1 = m.basis(0);
        let e2 = m.basis(1);
        assert_eq!(m.apply_f(&e1).unwrap(), e2);
        assert_eq!(m.apply_v(&e1).unwrap(), e2);
        let ff = m.apply_f(&m.apply_f(&e1).unwrap()).unwrap();
        let pw = WittVector::from_int(3, 3, m.field(), 3);
        assert_eq!(ff, e1.iter().map(|x| x.mul(&pw)).collect::<Vec<_>>());
        assert!(m.check_fv().unwrap());
    }

    #[test]
    fn fv_on_random_displays_over_extension_field() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let k = Ring::parse("GF(2^2)").unwrap();
        for h in [2, 3] {
            let d = random_display(&mut rng, 2, h, h - 1, 3, &k).unwrap();
            let m = to_dieudonne(&d).unwrap();
            assert!(m.check_fv().unwrap());
            let x = random_witt(&mut rng, 2, 3, &k);
            let col = random_column(&mut rng, 2, h, 3, &k);
            let lhs = m.apply_f(&col.iter().map(|c| c.mul(&x)).collect::<Vec<_>>()).unwrap();
            let fx = x.frobenius().unwrap();
            let rhs: Vec<WittVector> = m.apply_f(&col).unwrap().iter().map(|c| c.mul(&fx)).collect();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn base_change_checks() {
        let m = to_dieudonne(&swap(3)).unwrap();
        let zero = WittVector::zero(3, 3, m.field());
        let id = WittMatrix::identity(2, &zero);
        assert!(dieudonne_isomorphic_under_base_change(&m, &m, &id).unwrap());
        let swapped = m.permute(&[1, 0]);
        let one = WittVector::one(3, 3, m.field());
        let perm = WittMatrix::from_rows(vec![vec![zero.clone(), one.clone()], vec![one, zero.clone()]]).unwrap();
        assert!(dieudonne_isomorphic_under_base_change(&m, &swapped, &perm).unwrap());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let g = loop {
            let g = random_witt_matrix(&mut rng, 3, 3, m.field(), 2, 2);
            if g.w0().det().unwrap().is_unit() && g != id && g != perm {
                break g;
            }
        };
        assert!(!dieudonne_isomorphic_under_base_change(&m, &m, &g).unwrap());
    }

    #[test]
    fn dual_operators_are_swapped_transposes() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let k = Ring::integers_mod(3).unwrap();
        for h in [2, 3] {
            let d = random_display(&mut rng, 3, h, h - 1, 3, &k).unwrap();
            let m = to_dieudonne(&d).unwrap();
            let md = to_dieudonne(&d.dual().unwrap()).unwrap();
            // back to the natural order of the dual basis
            let inv: Vec<usize> = (1..h).chain(0..1).collect();
            let md = md.permute(&inv);
            assert_eq!(md.f_matrix(), &m.v_matrix().transpose());
            assert_eq!(md.v_matrix(), &m.f_matrix().transpose());
        }
    }
}
