//! Random elements at desk scale, for property checks.

use num_bigint::BigInt;
use rand::Rng;

use super::poly::{add_term, Monomial, Terms};
use super::{CoeffDomain, Elem, Ring};

impl Ring {
    /// A random element with at most `max_terms` terms, exponents below
    /// `max_exp` and integer coefficients in `[-bound, bound]`.
    pub fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R, max_terms: usize, max_exp: i32, bound: i64) -> Elem {
        let data = self.data();
        let n = self.nvars();
        let mut num = Terms::new();
        let count = rng.gen_range(0..=max_terms);
        for _ in 0..count {
            let mut m = Monomial::one(n);
            for i in 0..n {
                let cap = match &data.relation {
                    Some(r) if r.var == i => r.tail.len() as i32,
                    _ => max_exp.max(1),
                };
                m.0[i] = if data.laurent[i] { rng.gen_range(-cap + 1..cap) } else { rng.gen_range(0..cap) };
            }
            add_term(&mut num, m, BigInt::from(rng.gen_range(-bound..=bound)));
        }
        let den = if data.coeff == CoeffDomain::Rationals {
            BigInt::from(rng.gen_range(1..=bound.max(1)))
        } else {
            BigInt::from(1)
        };
        self.from_terms(num, den)
    }

    /// A random unit: a random residue unit plus a random element of the
    /// nilpotent ideal (when the ring has one).
    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Elem {
        loop {
            let x = self.random_elem(rng, 4, 3, bound);
            if x.is_unit() {
                return x;
            }
        }
    }
}
