//! Horizontal sections for the Frobenius of the dual Lubin-Tate display and
//! the algebraic approximation of the period map.
//!
//! Over `Q[u_1, ..., u_{h-1}]/J^M` with `J = (u_1, ..., u_{h-1})` and
//! `sigma(u_i) = u_i^p`, the matrix `A` of horizontal sections is the fixed
//! point of `A -> Psi sigma(A) Psi_bar^-1` with `A = I mod J`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::deformation::ProjectivePoint;
use crate::display::corpus::u_names;
use crate::error::{Error, Result};
use crate::matrix::ElemMatrix;
use crate::ring::{valuation, Elem, IdealGenerator, Ring, RingDescriptor};

/// `Q[u_1, ..., u_{h-1}]/J^order`.
pub fn period_ring(h: usize, order: u32) -> Result<Ring> {
    if h < 2 || order < 1 {
        return Err(Error::Precondition(format!("need h >= 2 and M >= 1, got h = {h}, M = {order}")));
    }
    let vars = u_names(h);
    Ring::new(RingDescriptor::QuotientByIdealPower {
        base: Box::new(RingDescriptor::Polynomial { base: Box::new(RingDescriptor::Rationals), variables: vars.clone() }),
        generators: vars.into_iter().map(IdealGenerator::Variable).collect(),
        exponent: order,
    })
}

/// The Frobenius matrix of the dual display in the natural dual basis: `p`
/// on the superdiagonal of rows `1..h-2`, a one at `(h-1, h)` and last row
/// `(p, p u_{h-1}, ..., p u_2, u_1)`. With `reduce_u_to_zero` every `u_i`
/// is replaced by zero.
pub fn psi_matrix(p: u64, h: usize, ring: &Ring, reduce_u_to_zero: bool) -> Result<ElemMatrix> {
    let zero = ring.zero();
    let pe = ring.from_int(p);
    let u = |i: usize| -> Result<Elem> {
        if reduce_u_to_zero {
            Ok(ring.zero())
        } else {
            ring.var(&format!("u{i}"))
        }
    };
    let mut m = ElemMatrix::zeros(h, h, &zero);
    for i in 0..h.saturating_sub(2) {
        m.set(i, i + 1, pe.clone());
    }
    m.set(h - 2, h - 1, ring.one());
    m.set(h - 1, 0, pe.clone());
    for j in 1..h - 1 {
        m.set(h - 1, j, pe.mul(&u(h - j)?));
    }
    m.set(h - 1, h - 1, u(1)?);
    Ok(m)
}

/// `u_i -> u_i^p`, trivial on coefficients.
pub fn sigma(x: &Elem, p: u64) -> Result<Elem> {
    let ring = x.ring();
    let assignment: BTreeMap<String, Elem> =
        ring.variables().iter().map(|v| Ok((v.clone(), ring.var(v)?.pow(p)))).collect::<Result<_>>()?;
    x.substitute(&assignment, ring)
}

fn sigma_matrix(m: &ElemMatrix, p: u64) -> Result<ElemMatrix> {
    m.map(m.zero_entry(), |x| sigma(x, p))
}

#[derive(Clone, Debug)]
pub struct PeriodApprox {
    p: u64,
    h: usize,
    order: u32,
    a: ElemMatrix,
    iterations: usize,
    residual: ElemMatrix,
}

/// `ceil(log_p order) + 2`.
pub fn iteration_bound(p: u64, order: u32) -> usize {
    let mut k = 0;
    let mut pk = 1u64;
    while pk < order as u64 {
        pk *= p;
        k += 1;
    }
    k + 2
}

/// Iterates `A_{k+1} = Psi sigma(A_k) Psi_bar^-1` from `A_0 = I` until it
/// stabilizes and certifies `Psi sigma(A) = A Psi_bar`.
pub fn horizontal_sections(p: u64, h: usize, order: u32) -> Result<PeriodApprox> {
    if !crate::ring::is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    let ring = period_ring(h, order)?;
    let psi = psi_matrix(p, h, &ring, false)?;
    let psi_bar = psi_matrix(p, h, &ring, true)?;
    let psi_bar_inv = psi_bar.inverse()?;
    let bound = iteration_bound(p, order);
    let mut a = ElemMatrix::identity(h, &ring.zero());
    let mut iterations = 0;
    loop {
        if iterations == bound {
            return Err(Error::GuardExceeded(bound));
        }
        iterations += 1;
        let next = psi.mul(&sigma_matrix(&a, p)?)?.mul(&psi_bar_inv)?;
        if next == a {
            break;
        }
        a = next;
    }
    let residual = psi.mul(&sigma_matrix(&a, p)?)?.sub(&a.mul(&psi_bar)?)?;
    let (det_const, _) = a.det()?.constant_term();
    if det_const.is_zero() {
        return Err(Error::NotInvertible("det A has zero constant term".into()));
    }
    Ok(PeriodApprox { p, h, order, a, iterations, residual })
}

impl PeriodApprox {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn height(&self) -> usize {
        self.h
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn a(&self) -> &ElemMatrix {
        &self.a
    }

    pub fn ring(&self) -> &Ring {
        self.a.ring()
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    /// `Psi sigma(A) - A Psi_bar`.
    pub fn residual(&self) -> &ElemMatrix {
        &self.residual
    }

    pub fn functional_equation_holds(&self) -> bool {
        self.residual.is_zero()
    }

    /// `A` reduced to `Q[u]/J^order` for a smaller order.
    pub fn truncate(&self, order: u32) -> Result<ElemMatrix> {
        let ring = period_ring(self.h, order.min(self.order))?;
        self.a.reduce_into(&ring)
    }

    pub fn is_identity_mod_j(&self) -> Result<bool> {
        Ok(self.truncate(1)?.is_identity())
    }

    /// Whether every coefficient of `A mod J^order` has no `p` in its
    /// denominator.
    pub fn is_p_integral_mod(&self, order: u32) -> Result<bool> {
        let p = BigInt::from(self.p);
        let m = self.truncate(order)?;
        Ok(m.entries().iter().all(|x| {
            let dv = valuation(x.denominator(), &p);
            x.terms().values().all(|c| {
                let g = c.gcd(x.denominator());
                dv == 0 || valuation(&g, &p) >= dv
            })
        }))
    }
}

/// The unipotent matrix with last row `(u_{h-1}, ..., u_1, 1)`.
pub fn displayed_matrix(h: usize, ring: &Ring) -> Result<ElemMatrix> {
    let mut m = ElemMatrix::identity(h, &ring.zero());
    for j in 0..h - 1 {
        m.set(h - 1, j, ring.var(&format!("u{}", h - 1 - j))?);
    }
    Ok(m)
}

/// The last row of `A`.
pub fn period_map(pa: &PeriodApprox) -> Result<ProjectivePoint> {
    ProjectivePoint::new(pa.a.row(pa.h - 1).to_vec())
}

/// Compares the period map with the projective point of a display over a
/// ring in the same variables `u_1, ..., u_{h-1}`, modulo `J^p`. The point
/// `[1 : u_{h-1} : ... : u_1]` is rotated to `[u_{h-1} : ... : u_1 : 1]`,
/// matching the order of the dual basis.
pub fn compare_with_display_point(pa: &PeriodApprox, point: &ProjectivePoint) -> Result<bool> {
    let order = (pa.p as u32).min(pa.order);
    let ring = period_ring(pa.h, order)?;
    let lifted: Vec<Elem> = point
        .rotate_left()
        .coords()
        .iter()
        .map(|c| ring.reduce_from(&c.in_lift()))
        .collect::<Result<_>>()?;
    let ours = period_map(pa)?.reduce_into(&ring)?;
    ours.projectively_equal(&ProjectivePoint::new(lifted)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::display::corpus::{lubin_tate, lubin_tate_ring};

    #[test]
    fn psi_examples() {
        let r = period_ring(2, 3).unwrap();
        assert_eq!(psi_matrix(3, 2, &r, false).unwrap(), ElemMatrix::parse(&r, &[&["0", "1"], &["3", "u1"]]).unwrap());
        assert_eq!(psi_matrix(3, 2, &r, true).unwrap(), ElemMatrix::parse(&r, &[&["0", "1"], &["3", "0"]]).unwrap());
        let r = period_ring(3, 3).unwrap();
        let psi = psi_matrix(2, 3, &r, false).unwrap();
        assert_eq!(psi.row(2), ElemMatrix::parse(&r, &[&["2", "2*u2", "u1"]]).unwrap().row(0));
        for (p, h) in [(2, 2), (3, 3), (5, 4)] {
            let r = period_ring(h, 2).unwrap();
            let det = psi_matrix(p, h, &r, true).unwrap().det().unwrap();
            let pk = r.from_int(BigInt::from(p).pow(h as u32 - 1));
            assert!(det == pk || det == pk.neg());
        }
    }

    #[test]
    fn low_order_is_psi_psi_bar_inverse() {
        for (p, h) in [(2, 2), (3, 2), (3, 3), (5, 4)] {
            for order in 1..=p as u32 {
                let pa = horizontal_sections(p, h, order).unwrap();
                assert_eq!(pa.a(), &displayed_matrix(h, pa.ring()).unwrap());
                assert!(pa.functional_equation_holds());
            }
        }
        let pa = horizontal_sections(3, 2, 3).unwrap();
        assert_eq!(period_map(&pa).unwrap().to_string(), "[u1 : 1]");
    }

    #[test]
    fn higher_order_properties() {
        for (p, h) in [(2, 2), (3, 2), (2, 3), (3, 3)] {
            let order = (p * p + 1) as u32;
            let pa = horizontal_sections(p, h, order).unwrap();
            assert!(pa.functional_equation_holds());
            assert!(pa.iterations() <= iteration_bound(p, order));
            assert!(pa.is_identity_mod_j().unwrap());
            assert!(pa.is_p_integral_mod(p as u32).unwrap());
            assert_eq!(pa.truncate(p as u32).unwrap(), displayed_matrix(h, &period_ring(h, p as u32).unwrap()).unwrap());
            let lower = horizontal_sections(p, h, order - 2).unwrap();
            assert_eq!(pa.truncate(order - 2).unwrap(), *lower.a());
        }
    }

    #[test]
    fn h2_p2_entries() {
        let pa = horizontal_sections(2, 2, 5).unwrap();
        let expected = ElemMatrix::parse(pa.ring(), &[&["1", "u1^2/2"], &["u1 + u1^4", "1 + u1^3/2"]]).unwrap();
        assert_eq!(pa.a(), &expected);
        assert!(!pa.is_p_integral_mod(3).unwrap());
        assert!(pa.is_p_integral_mod(2).unwrap());
    }

    #[test]
    fn psi_is_dual_frobenius_of_lubin_tate() {
        for (p, h) in [(2, 2), (3, 3), (2, 4)] {
            let r = period_ring(h, 4).unwrap();
            let d = lubin_tate(p, h, 2, &r).unwrap().dual().unwrap();
            let f = d.frobenius_matrix(1).unwrap().w0();
            // dual standard order is (e^h, e^1, ..., e^{h-1})
            let mut natural = ElemMatrix::zeros(h, h, &r.zero());
            let perm: Vec<usize> = std::iter::once(h - 1).chain(0..h - 1).collect();
            for i in 0..h {
                for j in 0..h {
                    natural.set(perm[i], perm[j], f.get(i, j).clone());
                }
            }
            assert_eq!(natural, psi_matrix(p, h, &r, false).unwrap());
        }
    }

    #[test]
    fn comparison_hook() {
        for (p, h) in [(2, 2), (3, 3), (3, 4)] {
            let pa = horizontal_sections(p, h, p as u32 + 1).unwrap();
            let r = lubin_tate_ring(p, h, 4).unwrap();
            let point = crate::deformation::projective_point(&lubin_tate(p, h, 2, &r).unwrap()).unwrap();
            assert!(compare_with_display_point(&pa, &point).unwrap());
        }
    }
}
