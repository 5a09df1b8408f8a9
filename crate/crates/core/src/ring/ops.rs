use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{self, add_term, Monomial, Terms};
use super::{CoeffDomain, Elem, Ring};
use crate::error::{Error, Result};

impl Ring {
    fn mul_terms(&self, a: &Terms, b: &Terms) -> Terms {
        let mut out = Terms::new();
        let trunc = self.data().trunc.as_ref();
        for (ma, ca) in a {
            let da = trunc.map_or(0, |t| t.degree(ma));
            for (mb, cb) in b {
                if let Some(t) = trunc {
                    if da + t.degree(mb) >= t.exponent {
                        continue;
                    }
                }
                add_term(&mut out, ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Elem {
    fn assert_same(&self, other: &Elem, op: &str) {
        if self.ring != other.ring {
            panic!("ring mismatch in {op}: {} vs {}", self.ring, other.ring);
        }
    }

    pub fn try_add(&self, other: &Elem) -> Result<Elem> {
        self.ring.check_same(&other.ring)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Elem) -> Result<Elem> {
        self.ring.check_same(&other.ring)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub fn try_mul(&self, other: &Elem) -> Result<Elem> {
        self.ring.check_same(&other.ring)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Elem) -> Elem {
        if other.num.is_empty() {
            return self.clone();
        }
        if self.num.is_empty() {
            return other.clone();
        }
        if self.den == other.den {
            return self.ring.from_terms(poly::add(&self.num, &other.num), self.den.clone());
        }
        let a = poly::scale(&self.num, &other.den);
        let b = poly::scale(&other.num, &self.den);
        self.ring.from_terms(poly::add(&a, &b), &self.den * &other.den)
    }

    fn mul_unchecked(&self, other: &Elem) -> Elem {
        if self.num.is_empty() || other.num.is_empty() {
            return self.ring.zero();
        }
        let t = self.ring.mul_terms(&self.num, &other.num);
        self.ring.from_terms(t, &self.den * &other.den)
    }

    pub fn add(&self, other: &Elem) -> Elem {
        self.assert_same(other, "add");
        self.add_unchecked(other)
    }

    pub fn sub(&self, other: &Elem) -> Elem {
        self.assert_same(other, "sub");
        self.add_unchecked(&other.neg())
    }

    pub fn mul(&self, other: &Elem) -> Elem {
        self.assert_same(other, "mul");
        self.mul_unchecked(other)
    }

    pub fn neg(&self) -> Elem {
        self.ring.from_terms(poly::neg(&self.num), self.den.clone())
    }

    pub fn scale_int(&self, n: &BigInt) -> Elem {
        self.ring.from_terms(poly::scale(&self.num, n), self.den.clone())
    }

    pub fn pow(&self, mut e: u64) -> Elem {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Exact division by an integer; fails if some coefficient is not
    /// divisible (in rational rings division always succeeds).
    pub fn div_exact_int(&self, n: &BigInt) -> Result<Elem> {
        if n.is_zero() {
            return Err(Error::NotAUnit("0".into()));
        }
        if *self.ring.coeff_domain() == CoeffDomain::Rationals {
            return Ok(self.ring.from_terms(self.num.clone(), &self.den * n));
        }
        let mut out = Terms::new();
        for (m, c) in &self.num {
            let (q, r) = c.div_rem(n);
            if !r.is_zero() {
                return Err(Error::NonExactDivision { divisor: n.to_string(), context: format!("dividing {self}") });
            }
            out.insert(m.clone(), q);
        }
        Ok(self.ring.from_terms(out, BigInt::one()))
    }

    /// Residue modulo the nilpotent ideal: terms of ideal degree zero, with
    /// coefficients reduced modulo a nilpotent prime when there is one.
    fn residue_terms(&self) -> Terms {
        let q = self.ring.nilpotent_prime();
        let mut out = Terms::new();
        for (m, c) in &self.num {
            if self.ring.ideal_degree(m) > 0 {
                continue;
            }
            let c = match &q {
                Some(q) => c.mod_floor(q),
                None => c.clone(),
            };
            add_term(&mut out, m.clone(), c);
        }
        out
    }

    /// An element `r` with `x r - 1` in the nilpotent ideal, if the residue
    /// of `x` is a unit.
    fn residue_inverse(&self) -> Option<Elem> {
        let ring = &self.ring;
        let data = ring.data();
        let res = self.residue_terms();
        if res.is_empty() {
            return None;
        }
        let rel_var = data.relation.as_ref().map(|r| r.var);
        // split every monomial into (outer part, relation-variable exponent)
        let mut outer: Option<Monomial> = None;
        let mut inner = Terms::new();
        for (m, c) in &res {
            let mut o = m.clone();
            let mut i = Monomial::one(ring.nvars());
            if let Some(v) = rel_var {
                i.0[v] = o.0[v];
                o.0[v] = 0;
            }
            match &outer {
                None => outer = Some(o),
                Some(prev) if *prev == o => {}
                Some(_) => return None,
            }
            add_term(&mut inner, i, c.clone());
        }
        let outer = outer?;
        for (i, &e) in outer.0.iter().enumerate() {
            if e != 0 && !data.laurent[i] {
                return None;
            }
        }
        let outer_inv = Monomial(outer.0.iter().map(|e| -e).collect());
        let outer_inv = ring.from_terms(std::iter::once((outer_inv, BigInt::one())).collect(), BigInt::one());

        let inner_inv = match (&data.coeff, rel_var) {
            (CoeffDomain::Rationals, None) => {
                let c = inner.values().next()?.clone();
                ring.from_terms(poly::constant(ring.nvars(), self.den.clone()), c)
            }
            (CoeffDomain::Integers, None) => {
                let c = inner.values().next()?.clone();
                match ring.nilpotent_prime() {
                    Some(q) => ring.from_int(mod_inverse(&c, &q)?),
                    None if c.abs().is_one() => ring.from_int(c),
                    None => return None,
                }
            }
            (CoeffDomain::Modulo(m), None) => {
                let c = inner.values().next()?.clone();
                ring.from_int(mod_inverse(&c, m)?)
            }
            (CoeffDomain::Modulo(m), Some(_)) => {
                // field F_q realized as F_p[z]/(f): c^(q-2)
                let q = num_traits::pow(m.clone(), data.relation.as_ref().unwrap().tail.len());
                let c = ring.from_terms(inner, BigInt::one());
                let e: u64 = (q - 2u32).try_into().ok()?;
                c.pow(e)
            }
            _ => return None,
        };
        Some(inner_inv.mul_unchecked(&outer_inv))
    }

    pub fn is_unit(&self) -> bool {
        self.invert().is_ok()
    }

    /// Multiplicative inverse via a residue inverse and a geometric series
    /// along the nilpotent ideal.
    pub fn invert(&self) -> Result<Elem> {
        let r = self.residue_inverse().ok_or_else(|| Error::NotAUnit(self.to_string()))?;
        let one = self.ring.one();
        let err = one.sub(&self.mul_unchecked(&r));
        if err.is_zero() {
            return Ok(r);
        }
        let mut sum = one.clone();
        let mut term = err.clone();
        const GUARD: usize = 1 << 14;
        for _ in 0..GUARD {
            if term.is_zero() {
                return Ok(r.mul_unchecked(&sum));
            }
            sum = sum.add_unchecked(&term);
            term = term.mul_unchecked(&err);
        }
        Err(Error::NotAUnit(format!("{self} (geometric series did not terminate)")))
    }

    /// `x^p` in a ring of prime characteristic `p`.
    pub fn frobenius_power(&self) -> Result<Elem> {
        let p = self
            .ring
            .prime_characteristic()
            .ok_or_else(|| Error::NotCharacteristicP(self.ring.to_string()))?;
        Ok(self.pow(p))
    }

    /// Ring homomorphism defined by sending each variable to an element of
    /// `target`; integer coefficients map through `Z -> target`.
    pub fn substitute(&self, assignment: &BTreeMap<String, Elem>, target: &Ring) -> Result<Elem> {
        let vars = self.ring.variables();
        let mut values = Vec::with_capacity(vars.len());
        for v in vars {
            let val = assignment.get(v).ok_or_else(|| Error::MissingVariable(v.clone()))?;
            target.check_same(val.ring())?;
            values.push(val);
        }
        let mut powers: HashMap<(usize, i32), Elem> = HashMap::new();
        let mut acc = target.zero();
        for (m, c) in &self.num {
            let mut term = target.from_int(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = match powers.get(&(i, e)) {
                    Some(x) => x.clone(),
                    None => {
                        let x = if e > 0 {
                            values[i].pow(e as u64)
                        } else {
                            values[i].invert()?.pow((-e) as u64)
                        };
                        powers.insert((i, e), x.clone());
                        x
                    }
                };
                term = term.mul_unchecked(&pw);
                if term.is_zero() {
                    break;
                }
            }
            acc = acc.add_unchecked(&term);
        }
        if !self.den.is_one() {
            acc = acc.mul_unchecked(&target.from_int(self.den.clone()).invert()?);
        }
        Ok(acc)
    }

    /// Formal partial derivative of the canonical representative.
    pub fn derivative(&self, var: usize) -> Elem {
        let mut out = Terms::new();
        for (m, c) in &self.num {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut mm = m.clone();
            mm.0[var] -= 1;
            add_term(&mut out, mm, c * BigInt::from(e));
        }
        self.ring.from_terms(out, self.den.clone())
    }
}

fn mod_inverse(c: &BigInt, m: &BigInt) -> Option<BigInt> {
    let c = c.mod_floor(m);
    let e = c.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inherent:ident) => {
        impl<'a> $trait<&'a Elem> for &'a Elem {
            type Output = Elem;
            fn $method(self, rhs: &'a Elem) -> Elem {
                Elem::$inherent(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        Elem::neg(self)
    }
}

impl Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        Elem::neg(&self)
    }
}
