//! Reduction of height-two matrix forms to `[[0, 1], [g, d]]`.

use super::{CoordinateChange, DisplayMatrix};
use crate::error::{Error, Result};
use crate::matrix::WittMatrix;
use crate::witt::WittVector;

/// For `B = [[al, be], [ga, de]]` picks `phi = [[1, v b], [c, e]]` with
/// `[1, b] B = [c, e]`, which makes the first row of `B'` equal to `[0, 1]`.
/// Uses `b = 0` when `be` is a unit mod `I_R` and `b = 1` when `be + de`
/// is; otherwise no such `phi` exists with `a = 1`, `b` in `{0, 1}`.
pub fn reduce_h2(disp: &DisplayMatrix) -> Result<(DisplayMatrix, CoordinateChange)> {
    if disp.h != 2 || disp.d != 1 {
        return Err(Error::Precondition("reduce_h2 needs h = 2 and d = 1".into()));
    }
    let m = &disp.form;
    let (al, be, ga, de) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    let (p, len, ring) = (disp.p, disp.witt_len(), disp.ring());
    let zero = WittVector::zero(p, len, ring);
    let one = WittVector::one(p, len, ring);
    let (b, c, e) = if be.is_unit() {
        (zero.clone(), al.clone(), be.clone())
    } else {
        let s = be.add(de);
        if !s.is_unit() {
            return Err(Error::ReductionImpossible(format!(
                "neither w0({be}) nor w0({be}) + w0({de}) is a unit"
            )));
        }
        (one.clone(), al.add(ga), s)
    };
    let block = |x: WittVector| WittMatrix::from_rows(vec![vec![x]]);
    let phi = CoordinateChange::new(block(one)?, block(b)?, block(c)?, block(e)?)?;
    let (out, _) = disp.change_of_coords(&phi)?;
    Ok((out, phi))
}
