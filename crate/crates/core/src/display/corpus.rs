//! Named example displays.
//!
//! - `lubin-tate-h{2,3,4}`: the display with ones on the subdiagonal, a one
//!   in the top-right corner and `[u_{h-1}], ..., [u_1]` down the rest of the
//!   last column, over `Z/p^2[u_1, ..., u_{h-1}]/(p, u_1)^M`.
//! - `zeta-action-h{2,3}`: the same display over `F_{p^h}[u_1, ...]/(u_1)^M`
//!   pulled back along `u_k -> zeta^(1 - p^k) u_k` for a primitive `zeta`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{CoordinateChange, DisplayMatrix};
use crate::error::{Error, Result};
use crate::matrix::WittMatrix;
use crate::ring::{Elem, IdealGenerator, Ring, RingDescriptor};
use crate::witt::WittVector;

pub const NAMES: [&str; 5] = ["lubin-tate-h2", "lubin-tate-h3", "lubin-tate-h4", "zeta-action-h2", "zeta-action-h3"];

/// Default truncation exponent of the corpus rings.
pub const DEFAULT_TRUNCATION: u32 = 4;

pub fn u_names(h: usize) -> Vec<String> {
    (1..h).map(|i| format!("u{i}")).collect()
}

/// `Z/p^2[u_1, ..., u_{h-1}]/(p, u_1)^m`.
pub fn lubin_tate_ring(p: u64, h: usize, m: u32) -> Result<Ring> {
    let vars = u_names(h);
    Ring::new(RingDescriptor::QuotientByIdealPower {
        base: Box::new(RingDescriptor::Polynomial {
            base: Box::new(RingDescriptor::integers_mod(p * p)),
            variables: vars,
        }),
        generators: vec![IdealGenerator::Prime(p), IdealGenerator::Variable("u1".into())],
        exponent: m,
    })
}

/// The matrix form with `B[0][h-1] = 1`, `B[i][i-1] = 1` and
/// `B[i][h-1] = [u_{h-i}]` for `i >= 1`, with `u_k` taken from `us`
/// (`us[k-1] = u_k`).
pub fn lubin_tate_matrix(p: u64, len: usize, us: &[Elem]) -> Result<WittMatrix> {
    let h = us.len() + 1;
    let ring = us.first().map(|u| u.ring().clone()).ok_or_else(|| Error::Shape("need h >= 2".into()))?;
    let zero = WittVector::zero(p, len, &ring);
    let one = WittVector::one(p, len, &ring);
    Ok(WittMatrix::from_fn(h, h, &zero, |i, j| {
        if j == h - 1 {
            if i == 0 {
                one.clone()
            } else {
                WittVector::teichmuller(p, &us[h - i - 1], len)
            }
        } else if i == j + 1 {
            one.clone()
        } else {
            zero.clone()
        }
    }))
}

/// The display of height `h`, dimension `h - 1` over `ring`, which must
/// contain variables `u1, ..., u_{h-1}`.
pub fn lubin_tate(p: u64, h: usize, len: usize, ring: &Ring) -> Result<DisplayMatrix> {
    let us = u_names(h).iter().map(|u| ring.var(u)).collect::<Result<Vec<_>>>()?;
    DisplayMatrix::new(p, h, h - 1, lubin_tate_matrix(p, len, &us)?)
}

/// A generator of `F_q^x` for a finite field ring, by search.
pub fn primitive_element(field: &Ring) -> Result<Elem> {
    let (p, m) = match field.descriptor() {
        Some(RingDescriptor::FiniteField { p, degree, .. }) => (*p, *degree),
        _ => return Err(Error::Precondition(format!("{field} is not a finite field"))),
    };
    let q = p.pow(m);
    let order = q - 1;
    let mut prime_factors = Vec::new();
    let mut n = order;
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            prime_factors.push(f);
            while n % f == 0 {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        prime_factors.push(n);
    }
    let z = if m > 1 { Some(field.var("z")?) } else { None };
    for code in 1..q {
        let mut g = field.zero();
        let mut c = code;
        let mut zpow = field.one();
        while c > 0 {
            g = g.add(&zpow.scale_int(&BigInt::from(c % p)));
            c /= p;
            if let Some(z) = &z {
                zpow = zpow.mul(z);
            }
        }
        if g.is_zero() {
            continue;
        }
        if prime_factors.iter().all(|r| !g.pow(order / r).is_one()) {
            return Ok(g);
        }
    }
    Err(Error::Precondition(format!("no primitive element found in {field}")))
}

/// `zeta^k` for a unit of a finite field, with `k` reduced mod `q - 1`.
fn zeta_power(zeta: &Elem, k: i64, q: u64) -> Elem {
    let e = k.rem_euclid((q - 1) as i64) as u64;
    zeta.pow(e)
}

/// The ζ-action fixture: a display, its pullback along the ζ-action on
/// the coordinates, and the diagonal change carrying the pullback back.
#[derive(Clone, Debug)]
pub struct ZetaFixture {
    pub ring: Ring,
    pub zeta: Elem,
    pub display: DisplayMatrix,
    pub pulled_back: DisplayMatrix,
    pub change: CoordinateChange,
}

/// `F_{p^h}[u_1, ..., u_{h-1}]/(u_1)^m`.
pub fn zeta_ring(p: u64, h: usize, m: u32) -> Result<Ring> {
    Ring::new(RingDescriptor::QuotientByIdealPower {
        base: Box::new(RingDescriptor::Polynomial {
            base: Box::new(RingDescriptor::finite_field(p, h as u32)?),
            variables: u_names(h),
        }),
        generators: vec![IdealGenerator::Variable("u1".into())],
        exponent: m,
    })
}

pub fn zeta_fixture(p: u64, h: usize, len: usize, m: u32) -> Result<ZetaFixture> {
    let ring = zeta_ring(p, h, m)?;
    let field = Ring::new(RingDescriptor::finite_field(p, h as u32)?)?;
    let zeta_f = primitive_element(&field)?;
    let zeta = ring.reduce_from(&embed_field_elem(&zeta_f, &ring)?)?;
    let q = p.pow(h as u32);
    let us = u_names(h).iter().map(|u| ring.var(u)).collect::<Result<Vec<_>>>()?;
    let display = DisplayMatrix::new(p, h, h - 1, lubin_tate_matrix(p, len, &us)?)?;
    let pulled: Vec<Elem> = us
        .iter()
        .enumerate()
        .map(|(i, u)| zeta_power(&zeta, 1 - (p as i64).pow(i as u32 + 1), q).mul(u))
        .collect();
    let pulled_back = DisplayMatrix::new(p, h, h - 1, lubin_tate_matrix(p, len, &pulled)?)?;
    let diag: Vec<WittVector> = (0..h)
        .map(|i| WittVector::teichmuller(p, &zeta_power(&zeta, (p as i64).pow((h - 1 - i) as u32), q), len))
        .collect();
    let change = CoordinateChange::diagonal(&diag, h - 1)?;
    Ok(ZetaFixture { ring, zeta, display, pulled_back, change })
}

/// Maps an element of `F_q = F_p[z]/(g)` into a ring whose variables
/// include `z`.
fn embed_field_elem(x: &Elem, target: &Ring) -> Result<Elem> {
    let z = target.var("z").ok();
    let mut acc = target.zero();
    for (mono, c) in x.terms() {
        let mut t = target.from_int(c.clone());
        if let Some(e) = mono.exps().first() {
            if *e != 0 {
                let z = z.as_ref().ok_or_else(|| Error::MissingVariable("z".into()))?;
                t = t.mul(&z.pow(e.to_u64().unwrap()));
            }
        }
        acc = acc.add(&t);
    }
    Ok(acc)
}

/// Looks up a corpus display by name.
pub fn by_name(name: &str, p: u64, len: usize) -> Result<DisplayMatrix> {
    let h: usize = name
        .rsplit_once("-h")
        .and_then(|(_, h)| h.parse().ok())
        .ok_or_else(|| Error::Parse(format!("unknown example `{name}`")))?;
    match name {
        "lubin-tate-h2" | "lubin-tate-h3" | "lubin-tate-h4" => {
            lubin_tate(p, h, len, &lubin_tate_ring(p, h, DEFAULT_TRUNCATION)?)
        }
        "zeta-action-h2" | "zeta-action-h3" => Ok(zeta_fixture(p, h, len, DEFAULT_TRUNCATION)?.pulled_back),
        _ => Err(Error::Parse(format!("unknown example `{name}`; known: {}", NAMES.join(", ")))),
    }
}
