//! Sparse multivariate polynomials with integer coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic. Exponents are signed so that Laurent variables share
//! the same representation.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use smallvec::SmallVec;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub SmallVec<[i32; 6]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, index: usize, exp: i32) -> Self {
        let mut m = Self::one(nvars);
        m.0[index] = exp;
        m
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Integer polynomial; zero coefficients are never stored.
pub type Terms = BTreeMap<Monomial, BigInt>;

pub fn add_term(terms: &mut Terms, mono: Monomial, coeff: BigInt) {
    if coeff.is_zero() {
        return;
    }
    match terms.entry(mono) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += coeff;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

pub fn constant(nvars: usize, c: BigInt) -> Terms {
    let mut t = Terms::new();
    add_term(&mut t, Monomial::one(nvars), c);
    t
}

pub fn scale(terms: &Terms, c: &BigInt) -> Terms {
    if c.is_zero() {
        return Terms::new();
    }
    if c.is_one() {
        return terms.clone();
    }
    terms.iter().map(|(m, v)| (m.clone(), v * c)).collect()
}

pub fn add(a: &Terms, b: &Terms) -> Terms {
    let (big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = big.clone();
    for (m, c) in small {
        add_term(&mut out, m.clone(), c.clone());
    }
    out
}

pub fn neg(a: &Terms) -> Terms {
    a.iter().map(|(m, c)| (m.clone(), -c)).collect()
}

/// Content: gcd of all coefficients (zero for the zero polynomial).
pub fn content(a: &Terms) -> BigInt {
    use num_integer::Integer;
    let mut g = BigInt::zero();
    for c in a.values() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}
