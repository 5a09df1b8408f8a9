//! Truncated p-typical Witt vectors `W_N(R)`.
//!
//! Arithmetic has two independent routes. The ghost route lifts the
//! components to a torsion-free ring surjecting onto `R`, operates on ghost
//! components there and solves back with exact divisions by powers of `p`.
//! The table route evaluates the universal polynomials of [`table`] directly
//! in `R`. [`Route::Auto`] picks the table when the polynomials are small.

mod ghost;
pub mod table;

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ring::{is_prime, CoeffDomain, Elem, Ring, RingDescriptor};
use table::{generate_universal_polynomials, WittOp};

pub(crate) use ghost::{ghost_components, solve_from_ghosts};

/// Largest `p^(N-1)` for which [`Route::Auto`] uses the universal polynomials.
pub const TABLE_ROUTE_LIMIT: u64 = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Route {
    #[default]
    Auto,
    Ghost,
    Table,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WittVector {
    p: u64,
    comps: Vec<Elem>,
}

impl WittVector {
    pub fn new(p: u64, comps: Vec<Elem>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        let first = comps.first().ok_or_else(|| Error::Precondition("Witt length must be at least 1".into()))?;
        for c in &comps[1..] {
            first.ring().check_same(c.ring())?;
        }
        Ok(WittVector { p, comps })
    }

    /// Parses components written as element expressions.
    pub fn parse(p: u64, ring: &Ring, comps: &[&str]) -> Result<Self> {
        let comps = comps.iter().map(|s| crate::ring::parse::parse_element(ring, s)).collect::<Result<_>>()?;
        Self::new(p, comps)
    }

    pub fn zero(p: u64, len: usize, ring: &Ring) -> Self {
        WittVector { p, comps: vec![ring.zero(); len.max(1)] }
    }

    pub fn one(p: u64, len: usize, ring: &Ring) -> Self {
        Self::teichmuller(p, &ring.one(), len)
    }

    pub fn teichmuller(p: u64, r: &Elem, len: usize) -> Self {
        let mut comps = vec![r.ring().zero(); len.max(1)];
        comps[0] = r.clone();
        WittVector { p, comps }
    }

    /// The image of the integer `n` under `Z -> W_N(R)`.
    pub fn from_int(p: u64, len: usize, ring: &Ring, n: impl Into<BigInt>) -> Self {
        let lift = ring.lift();
        let c = lift.from_int(n);
        let comps = solve_from_ghosts(p, &vec![c; len.max(1)]).expect("integers have integral Witt components");
        WittVector { p, comps: comps.iter().map(|x| ring.reduce_from(x).unwrap()).collect() }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ring(&self) -> &Ring {
        self.comps[0].ring()
    }

    pub fn components(&self) -> &[Elem] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &Elem {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Elem::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.comps[0].is_one() && self.comps[1..].iter().all(Elem::is_zero)
    }

    pub fn truncate(&self, len: usize) -> Result<Self> {
        if len == 0 || len > self.len() {
            return Err(Error::PrecisionExhausted { needed: len, available: self.len() });
        }
        Ok(WittVector { p: self.p, comps: self.comps[..len].to_vec() })
    }

    pub fn map_components(&self, f: impl Fn(&Elem) -> Result<Elem>) -> Result<Self> {
        Self::new(self.p, self.comps.iter().map(f).collect::<Result<_>>()?)
    }

    /// Componentwise image under a ring map with the same variables.
    pub fn reduce_into(&self, ring: &Ring) -> Result<Self> {
        self.map_components(|c| ring.reduce_from(c))
    }

    /// `w_k(x) = sum_{i<=k} p^i x_i^(p^(k-i))`.
    pub fn ghost(&self, k: usize) -> Result<Elem> {
        if k >= self.len() {
            return Err(Error::IndexOutOfRange { index: k, len: self.len() });
        }
        Ok(ghost_components(self.p, &self.comps, k + 1).pop().unwrap())
    }

    pub fn ghosts(&self) -> Vec<Elem> {
        ghost_components(self.p, &self.comps, self.len())
    }

    /// `x_0 = 0`, i.e. `x` lies in `I_R = v(W(R))`.
    pub fn in_ideal_ir(&self) -> bool {
        self.comps[0].is_zero()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::WittMismatch(format!("p = {} vs p = {}", self.p, other.p)));
        }
        if self.len() != other.len() {
            return Err(Error::WittMismatch(format!("length {} vs length {}", self.len(), other.len())));
        }
        self.ring().check_same(other.ring())
    }

    fn use_table(&self, route: Route, len: usize) -> bool {
        match route {
            Route::Ghost => false,
            Route::Table => true,
            Route::Auto => {
                self.p.checked_pow(len.saturating_sub(1) as u32).is_some_and(|q| q <= TABLE_ROUTE_LIMIT)
            }
        }
    }

    fn lifted(&self) -> Vec<Elem> {
        self.comps.iter().map(Elem::in_lift).collect()
    }

    fn from_lift(&self, comps: Vec<Elem>) -> Result<Self> {
        let ring = self.ring();
        let comps = comps.iter().map(|c| ring.reduce_from(c)).collect::<Result<_>>()?;
        Ok(WittVector { p: self.p, comps })
    }

    fn ghost_binary(&self, other: &Self, op: impl Fn(&Elem, &Elem) -> Elem) -> Result<Self> {
        let gx = ghost_components(self.p, &self.lifted(), self.len());
        let gy = ghost_components(self.p, &other.lifted(), other.len());
        let targets: Vec<Elem> = gx.iter().zip(&gy).map(|(a, b)| op(a, b)).collect();
        self.from_lift(solve_from_ghosts(self.p, &targets)?)
    }

    fn table_eval(&self, op: WittOp, other: Option<&Self>, len: usize) -> Result<Self> {
        let t = generate_universal_polynomials(self.p, len - 1)?;
        let ys = other.map_or(&[][..], |o| &o.comps[..]);
        let ring = self.ring();
        let comps = (0..len).map(|n| table::evaluate(t.get(op, n).unwrap(), &self.comps, ys, ring)).collect();
        Ok(WittVector { p: self.p, comps })
    }

    pub fn add_via(&self, other: &Self, route: Route) -> Result<Self> {
        self.check_compatible(other)?;
        if self.use_table(route, self.len()) {
            self.table_eval(WittOp::Sum, Some(other), self.len())
        } else {
            self.ghost_binary(other, |a, b| a.add(b))
        }
    }

    pub fn mul_via(&self, other: &Self, route: Route) -> Result<Self> {
        self.check_compatible(other)?;
        if self.use_table(route, self.len()) {
            self.table_eval(WittOp::Product, Some(other), self.len())
        } else {
            self.ghost_binary(other, |a, b| a.mul(b))
        }
    }

    pub fn neg_via(&self, route: Route) -> Result<Self> {
        if self.use_table(route, self.len()) {
            self.table_eval(WittOp::Negation, None, self.len())
        } else {
            let targets: Vec<Elem> = ghost_components(self.p, &self.lifted(), self.len()).iter().map(Elem::neg).collect();
            self.from_lift(solve_from_ghosts(self.p, &targets)?)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.add_via(other, Route::Auto)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.mul_via(other, Route::Auto)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.use_table(Route::Auto, self.len()) {
            self.try_add(&other.neg_via(Route::Auto)?)
        } else {
            self.ghost_binary(other, |a, b| a.sub(b))
        }
    }

    /// Panics on mismatched inputs; see [`WittVector::try_add`].
    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).unwrap_or_else(|e| panic!("witt add: {e}"))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).unwrap_or_else(|e| panic!("witt sub: {e}"))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).unwrap_or_else(|e| panic!("witt mul: {e}"))
    }

    pub fn neg(&self) -> Self {
        self.neg_via(Route::Auto).unwrap_or_else(|e| panic!("witt neg: {e}"))
    }

    pub fn scale_int(&self, n: impl Into<BigInt>) -> Self {
        self.mul(&Self::from_int(self.p, self.len(), self.ring(), n))
    }

    /// `v(x) = (0, x_0, ..., x_{N-2})` at the same length.
    pub fn verschiebung(&self) -> Self {
        let mut comps = Vec::with_capacity(self.len());
        comps.push(self.ring().zero());
        comps.extend(self.comps[..self.len() - 1].iter().cloned());
        WittVector { p: self.p, comps }
    }

    /// The `y` of length `N - 1` with `v(y) = x`; fails unless `x_0 = 0`.
    pub fn verschiebung_preimage(&self) -> Result<Self> {
        if !self.in_ideal_ir() {
            return Err(Error::Precondition(format!("{self} is not in v(W(R))")));
        }
        if self.len() < 2 {
            return Err(Error::PrecisionExhausted { needed: 2, available: self.len() });
        }
        Ok(WittVector { p: self.p, comps: self.comps[1..].to_vec() })
    }

    /// Extends with zero components up to `len`.
    pub fn pad(&self, len: usize) -> Self {
        let mut comps = self.comps.clone();
        comps.resize(len.max(self.len()), self.ring().zero());
        WittVector { p: self.p, comps }
    }

    /// Whether `f` keeps the length (characteristic `p`).
    pub fn frobenius_keeps_length(&self) -> bool {
        self.ring().prime_characteristic() == Some(self.p)
    }

    /// Length of `f(x)`.
    pub fn frobenius_len(&self) -> usize {
        if self.frobenius_keeps_length() {
            self.len()
        } else {
            self.len() - 1
        }
    }

    /// `f(x)`: componentwise `p`-th powers in characteristic `p`, otherwise
    /// the vector with ghost components `w_{k+1}(x)`, one component shorter.
    pub fn frobenius(&self) -> Result<Self> {
        if self.frobenius_keeps_length() {
            return Ok(WittVector { p: self.p, comps: self.comps.iter().map(|c| c.pow(self.p)).collect() });
        }
        self.frobenius_via(Route::Auto)
    }

    /// `f(x)` through the general formulas, dropping one component of
    /// precision even in characteristic `p`.
    pub fn frobenius_via(&self, route: Route) -> Result<Self> {
        if self.len() < 2 {
            return Err(Error::PrecisionExhausted { needed: 2, available: self.len() });
        }
        let out_len = self.len() - 1;
        if self.use_table(route, self.len()) {
            return self.table_eval(WittOp::Frobenius, None, out_len);
        }
        let ghosts = ghost_components(self.p, &self.lifted(), self.len());
        self.from_lift(solve_from_ghosts(self.p, &ghosts[1..])?)
    }

    /// `f^n(x)`.
    pub fn frobenius_iter(&self, n: usize) -> Result<Self> {
        let mut x = self.clone();
        for _ in 0..n {
            x = x.frobenius()?;
        }
        Ok(x)
    }

    /// `f^{-1}(x)` over a finite field `F_{p^m}`: componentwise `p^(m-1)`-th powers.
    pub fn frobenius_inverse(&self) -> Result<Self> {
        let m = finite_field_degree(self.ring(), self.p)
            .ok_or_else(|| Error::Precondition(format!("f^-1 needs a finite field of characteristic {}", self.p)))?;
        let e = self.p.pow(m - 1);
        Ok(WittVector { p: self.p, comps: self.comps.iter().map(|c| c.pow(e)).collect() })
    }

    /// Newton iteration `y <- y (2 - x y)` from `[x_0^{-1}]`.
    pub fn invert(&self) -> Result<Self> {
        let ring = self.ring();
        if *ring.coeff_domain() == CoeffDomain::Rationals {
            // over a Q-algebra the ghost map is an isomorphism
            let inv = self.ghosts().iter().map(Elem::invert).collect::<Result<Vec<_>>>()?;
            return Self::new(self.p, solve_from_ghosts(self.p, &inv)?);
        }
        let k = if ring.prime_characteristic() == Some(self.p) {
            1
        } else {
            ring.p_exponent(self.p).ok_or_else(|| {
                Error::Precondition(format!("p = {} is not nilpotent in {ring}", self.p))
            })? as usize
        };
        let x0_inv = self.comps[0].invert()?;
        let one = Self::one(self.p, self.len(), ring);
        let mut y = Self::teichmuller(self.p, &x0_inv, self.len());
        let guard = self.len() * k + self.len();
        for _ in 0..=guard {
            let err = one.try_sub(&self.try_mul(&y)?)?;
            if err.is_zero() {
                return Ok(y);
            }
            y = y.try_add(&y.try_mul(&err)?)?;
        }
        Err(Error::GuardExceeded(guard))
    }

    /// `x_0` a unit when `p` is nilpotent; every ghost component a unit
    /// over a Q-algebra.
    pub fn is_unit(&self) -> bool {
        if *self.ring().coeff_domain() == CoeffDomain::Rationals {
            self.ghosts().iter().all(Elem::is_unit)
        } else {
            self.comps[0].is_unit()
        }
    }
}

/// `m` when `ring` is `F_{p^m}` (including `Z/p`).
pub fn finite_field_degree(ring: &Ring, p: u64) -> Option<u32> {
    match ring.descriptor()? {
        RingDescriptor::FiniteField { p: q, degree, .. } if *q == p => Some(*degree),
        RingDescriptor::IntegersMod { modulus } if *modulus == BigInt::from(p) => Some(1),
        _ => None,
    }
}

impl fmt::Display for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.comps.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W_{}[p={}]{}", self.len(), self.p, self)
    }
}

#[cfg(test)]
mod tests;
