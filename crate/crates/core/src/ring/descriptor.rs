use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Describes one ring of the tower. Every variant renders to a textual
/// form accepted by [`RingDescriptor::parse`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingDescriptor {
    Integers,
    IntegersMod {
        #[serde(with = "crate::serial::bigint_string")]
        modulus: BigInt,
    },
    Rationals,
    /// `F_p[z]/(modulus)`; `modulus` is monic, coefficients listed from the
    /// constant term upwards. The generator is always named `z`.
    FiniteField { p: u64, degree: u32, modulus: Vec<u64> },
    Polynomial { base: Box<RingDescriptor>, variables: Vec<String> },
    /// Polynomial ring in which every listed variable is invertible.
    Laurent { base: Box<RingDescriptor>, variables: Vec<String> },
    QuotientByIdealPower {
        base: Box<RingDescriptor>,
        generators: Vec<IdealGenerator>,
        exponent: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdealGenerator {
    Prime(u64),
    Variable(String),
}

impl RingDescriptor {
    pub fn integers_mod(m: u64) -> Self {
        RingDescriptor::IntegersMod { modulus: BigInt::from(m) }
    }

    /// `GF(p^m)` with the lexicographically least monic irreducible modulus.
    pub fn finite_field(p: u64, degree: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        if degree == 0 {
            return Err(Error::InvalidRing("extension degree must be >= 1".into()));
        }
        let modulus = least_irreducible(p, degree)
            .ok_or_else(|| Error::InvalidRing(format!("no irreducible of degree {degree}")))?;
        Ok(RingDescriptor::FiniteField { p, degree, modulus })
    }

    pub fn polynomial(base: RingDescriptor, vars: &[&str]) -> Self {
        RingDescriptor::Polynomial {
            base: Box::new(base),
            variables: vars.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn laurent(base: RingDescriptor, vars: &[&str]) -> Self {
        RingDescriptor::Laurent {
            base: Box::new(base),
            variables: vars.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn quotient(base: RingDescriptor, generators: Vec<IdealGenerator>, exponent: u32) -> Self {
        RingDescriptor::QuotientByIdealPower { base: Box::new(base), generators, exponent }
    }

    /// `base[vars]/(vars)^exponent`.
    pub fn truncated(base: RingDescriptor, vars: &[&str], exponent: u32) -> Self {
        let gens = vars.iter().map(|v| IdealGenerator::Variable(v.to_string())).collect();
        Self::quotient(Self::polynomial(base, vars), gens, exponent)
    }

    pub fn parse(text: &str) -> Result<Self> {
        crate::ring::parse::parse_descriptor(text)
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Integers => write!(f, "Z"),
            RingDescriptor::IntegersMod { modulus } => write!(f, "Z/{modulus}"),
            RingDescriptor::Rationals => write!(f, "Q"),
            RingDescriptor::FiniteField { p, degree, modulus } => {
                write!(f, "GF({p}^{degree};{})", render_univariate(modulus, "z"))
            }
            RingDescriptor::Polynomial { base, variables } => {
                write!(f, "{base}[{}]", variables.join(","))
            }
            RingDescriptor::Laurent { base, variables } => {
                write!(f, "{base}<{}>", variables.join(","))
            }
            RingDescriptor::QuotientByIdealPower { base, generators, exponent } => {
                let gens: Vec<String> = generators
                    .iter()
                    .map(|g| match g {
                        IdealGenerator::Prime(p) => p.to_string(),
                        IdealGenerator::Variable(v) => v.clone(),
                    })
                    .collect();
                write!(f, "{base}/({})^{exponent}", gens.join(","))
            }
        }
    }
}

fn render_univariate(coeffs: &[u64], var: &str) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        parts.push(match (c, mono.is_empty()) {
            (_, true) => c.to_string(),
            (1, false) => mono,
            (_, false) => format!("{c}*{mono}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `Some(q)` if `m` is a power of the prime `q`.
pub fn prime_power_base(m: &BigInt) -> Option<BigInt> {
    if m <= &BigInt::one() {
        return None;
    }
    let mut q = BigInt::from(2u32);
    let mut rest = m.clone();
    loop {
        if &q * &q > rest {
            // rest is prime
            let base = rest.clone();
            return power_of(m, &base).then_some(base);
        }
        if (&rest % &q).is_zero() {
            return power_of(m, &q).then_some(q);
        }
        q += 1;
        // guard: moduli in this library are small prime powers
        if q > BigInt::from(1u64 << 20) {
            rest = m.clone();
            return power_of(m, &rest).then_some(rest);
        }
    }
}

fn power_of(m: &BigInt, q: &BigInt) -> bool {
    let mut x = m.clone();
    while (&x % q).is_zero() {
        x /= q;
    }
    x.is_one()
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let mut v = 0;
    let mut x = n.abs();
    while (&x % p).is_zero() {
        x /= p;
        v += 1;
    }
    v
}

// Univariate arithmetic over F_p, coefficients low-to-high, used only for the
// brute-force irreducibility search.

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn rem_fp(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lead = *b.last().expect("nonzero divisor");
    let lead_inv = mod_pow(lead, p - 2, p);
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let factor = r.last().unwrap() * lead_inv % p;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - factor * bi % p) % p;
        }
        r = trim(r);
    }
    r
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn monic_polys(p: u64, degree: u32) -> impl Iterator<Item = Vec<u64>> {
    let count = p.pow(degree);
    (0..count).map(move |mut idx| {
        let mut v = Vec::with_capacity(degree as usize + 1);
        for _ in 0..degree {
            v.push(idx % p);
            idx /= p;
        }
        v.push(1);
        v
    })
}

/// Brute-force irreducibility over `F_p`: no monic factor of degree
/// `1..=deg/2` divides `poly`.
pub fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let poly = trim(poly.iter().map(|c| c % p).collect());
    if poly.len() < 2 || poly.last() != Some(&1) {
        return false;
    }
    let deg = (poly.len() - 1) as u32;
    for k in 1..=deg / 2 {
        for cand in monic_polys(p, k) {
            if rem_fp(&poly, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn least_irreducible(p: u64, degree: u32) -> Option<Vec<u64>> {
    // lexicographic on (c_{m-1}, ..., c_0)
    let mut all: Vec<Vec<u64>> = monic_polys(p, degree).collect();
    all.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    all.into_iter().find(|f| is_irreducible(f, p))
}

pub(crate) fn to_u64(n: &BigInt) -> Option<u64> {
    n.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli() {
        let f4 = RingDescriptor::finite_field(2, 2).unwrap();
        assert_eq!(f4.to_string(), "GF(2^2;z^2+z+1)");
        let f8 = RingDescriptor::finite_field(2, 3).unwrap();
        assert_eq!(f8.to_string(), "GF(2^3;z^3+z+1)");
        let f9 = RingDescriptor::finite_field(3, 2).unwrap();
        assert_eq!(f9.to_string(), "GF(3^2;z^2+1)");
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2)); // (z+1)^2
        assert!(is_irreducible(&[2, 0, 1], 5)); // z^2 + 2, 2 non-square mod 5
        assert!(!is_irreducible(&[1, 0, 1], 5)); // -1 = 2^2
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power_base(&BigInt::from(27)), Some(BigInt::from(3)));
        assert_eq!(prime_power_base(&BigInt::from(7)), Some(BigInt::from(7)));
        assert_eq!(prime_power_base(&BigInt::from(12)), None);
    }
}
