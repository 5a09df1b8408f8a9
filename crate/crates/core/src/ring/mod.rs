//! Exact arithmetic over the tower of base rings.
//!
//! A [`Ring`] is built from a [`RingDescriptor`] and flattened into a single
//! polynomial presentation: a coefficient domain (`Z`, `Z/m` or `Q`), an
//! ordered variable list, at most one monic relation (the generator of a
//! finite field), an optional set of Laurent variables and an optional
//! truncation by a power of an ideal generated by variables and a prime.
//! Every [`Elem`] is kept in the unique normal form of its ring, so
//! structural equality is ring equality.

mod descriptor;
mod ops;
pub mod parse;
pub mod poly;
pub mod random;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use descriptor::{is_irreducible, is_prime, prime_power_base, valuation, IdealGenerator, RingDescriptor};
use poly::{add_term, Monomial, Terms};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoeffDomain {
    Integers,
    Modulo(BigInt),
    Rationals,
}

/// `var^degree = -(tail[0] + tail[1] var + ...)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Relation {
    pub var: usize,
    pub tail: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Truncation {
    pub mask: Vec<bool>,
    pub prime: Option<BigInt>,
    pub exponent: u32,
    /// Coefficient modulus for monomials of ideal-degree `k`, `k < exponent`.
    pub moduli: Vec<Option<BigInt>>,
}

impl Truncation {
    pub fn degree(&self, m: &Monomial) -> u32 {
        m.exps()
            .iter()
            .zip(&self.mask)
            .filter(|(_, &on)| on)
            .map(|(&e, _)| e as u32)
            .sum()
    }
}

pub(crate) struct RingData {
    pub desc: Option<RingDescriptor>,
    pub label: String,
    pub coeff: CoeffDomain,
    pub vars: Vec<String>,
    pub laurent: Vec<bool>,
    pub relation: Option<Relation>,
    pub trunc: Option<Truncation>,
    lift: OnceLock<Ring>,
}

impl RingData {
    fn same_structure(&self, other: &RingData) -> bool {
        self.coeff == other.coeff
            && self.vars == other.vars
            && self.laurent == other.laurent
            && self.relation == other.relation
            && self.trunc == other.trunc
    }
}

/// Shared handle to a ring; cheap to clone.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.same_structure(&other.0)
    }
}
impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.0.label)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.label)
    }
}

/// An element in canonical form. For rational rings the value is
/// `num / den` with `den > 0` and `gcd(content(num), den) = 1`; otherwise
/// `den == 1`.
#[derive(Clone)]
pub struct Elem {
    ring: Ring,
    num: Terms,
    den: BigInt,
}

impl PartialEq for Elem {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den && self.ring == other.ring
    }
}
impl Eq for Elem {}

impl std::hash::Hash for Elem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for (m, c) in &self.num {
            m.hash(state);
            c.hash(state);
        }
        self.den.hash(state);
    }
}

struct Flat {
    coeff: CoeffDomain,
    vars: Vec<String>,
    laurent: Vec<bool>,
    relation: Option<Relation>,
    trunc: Option<(Vec<bool>, Option<BigInt>, u32)>,
}

fn flatten(desc: &RingDescriptor) -> Result<Flat> {
    match desc {
        RingDescriptor::Integers => Ok(Flat::scalar(CoeffDomain::Integers)),
        RingDescriptor::Rationals => Ok(Flat::scalar(CoeffDomain::Rationals)),
        RingDescriptor::IntegersMod { modulus } => {
            if modulus < &BigInt::from(2) {
                return Err(Error::InvalidRing(format!("modulus {modulus} must be >= 2")));
            }
            Ok(Flat::scalar(CoeffDomain::Modulo(modulus.clone())))
        }
        RingDescriptor::FiniteField { p, degree, modulus } => {
            if !is_prime(*p) {
                return Err(Error::InvalidRing(format!("{p} is not prime")));
            }
            if *degree == 0 || modulus.len() != *degree as usize + 1 {
                return Err(Error::InvalidRing("modulus degree does not match extension degree".into()));
            }
            if !is_irreducible(modulus, *p) {
                return Err(Error::InvalidRing(format!("{desc} has a reducible modulus")));
            }
            let mut flat = Flat::scalar(CoeffDomain::Modulo(BigInt::from(*p)));
            if *degree > 1 {
                flat.vars.push("z".into());
                flat.laurent.push(false);
                flat.relation = Some(Relation {
                    var: 0,
                    tail: modulus[..*degree as usize].iter().map(|&c| BigInt::from(c % p)).collect(),
                });
            }
            Ok(flat)
        }
        RingDescriptor::Polynomial { base, variables } | RingDescriptor::Laurent { base, variables } => {
            let is_laurent = matches!(desc, RingDescriptor::Laurent { .. });
            let mut flat = flatten(base)?;
            if is_laurent && flat.trunc.is_some() {
                return Err(Error::InvalidRing("Laurent variables over a truncated ring".into()));
            }
            for v in variables {
                if !valid_identifier(v) {
                    return Err(Error::InvalidRing(format!("invalid variable name `{v}`")));
                }
                if flat.vars.contains(v) {
                    return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
                }
                flat.vars.push(v.clone());
                flat.laurent.push(is_laurent);
                if let Some((mask, _, _)) = flat.trunc.as_mut() {
                    mask.push(false);
                }
            }
            Ok(flat)
        }
        RingDescriptor::QuotientByIdealPower { base, generators, exponent } => {
            let flat = flatten(base)?;
            if flat.trunc.is_some() {
                return Err(Error::InvalidRing("nested ideal-power quotients are not supported".into()));
            }
            if *exponent == 0 {
                return Err(Error::InvalidRing("ideal exponent must be >= 1".into()));
            }
            if generators.is_empty() {
                return Err(Error::InvalidRing("empty generator list".into()));
            }
            let mut mask = vec![false; flat.vars.len()];
            let mut prime = None;
            for g in generators {
                match g {
                    IdealGenerator::Prime(p) => {
                        if !is_prime(*p) {
                            return Err(Error::InvalidRing(format!("ideal generator {p} is not prime")));
                        }
                        if flat.coeff == CoeffDomain::Rationals {
                            return Err(Error::InvalidRing("a prime is a unit in Q".into()));
                        }
                        if prime.is_some() {
                            return Err(Error::InvalidRing("at most one prime generator".into()));
                        }
                        prime = Some(BigInt::from(*p));
                    }
                    IdealGenerator::Variable(v) => {
                        let idx = flat
                            .vars
                            .iter()
                            .position(|x| x == v)
                            .ok_or_else(|| Error::InvalidRing(format!("unknown generator `{v}`")))?;
                        if flat.laurent[idx] {
                            return Err(Error::InvalidRing(format!("`{v}` is invertible")));
                        }
                        if flat.relation.as_ref().is_some_and(|r| r.var == idx) {
                            return Err(Error::InvalidRing(format!("`{v}` is a field generator")));
                        }
                        mask[idx] = true;
                    }
                }
            }
            Ok(Flat { trunc: Some((mask, prime, *exponent)), ..flat })
        }
    }
}

impl Flat {
    fn scalar(coeff: CoeffDomain) -> Self {
        Flat { coeff, vars: Vec::new(), laurent: Vec::new(), relation: None, trunc: None }
    }
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new(desc: RingDescriptor) -> Result<Ring> {
        let flat = flatten(&desc)?;
        Ok(Self::from_flat(flat, desc.to_string(), Some(desc)))
    }

    pub fn parse(text: &str) -> Result<Ring> {
        Ring::new(RingDescriptor::parse(text)?)
    }

    pub fn integers() -> Ring {
        Ring::new(RingDescriptor::Integers).unwrap()
    }

    pub fn rationals() -> Ring {
        Ring::new(RingDescriptor::Rationals).unwrap()
    }

    pub fn integers_mod(m: u64) -> Result<Ring> {
        Ring::new(RingDescriptor::integers_mod(m))
    }

    fn from_flat(flat: Flat, label: String, desc: Option<RingDescriptor>) -> Ring {
        let trunc = flat.trunc.map(|(mask, prime, exponent)| {
            let base_mod = match &flat.coeff {
                CoeffDomain::Modulo(m) => Some(m.clone()),
                _ => None,
            };
            let moduli = (0..exponent)
                .map(|k| match (&prime, &base_mod) {
                    (Some(p), Some(m)) => Some(m.gcd(&num_traits::pow(p.clone(), (exponent - k) as usize))),
                    (Some(p), None) => Some(num_traits::pow(p.clone(), (exponent - k) as usize)),
                    (None, m) => m.clone(),
                })
                .collect();
            Truncation { mask, prime, exponent, moduli }
        });
        Ring(Arc::new(RingData {
            desc,
            label,
            coeff: flat.coeff,
            vars: flat.vars,
            laurent: flat.laurent,
            relation: flat.relation,
            trunc,
            lift: OnceLock::new(),
        }))
    }

    pub fn descriptor(&self) -> Option<&RingDescriptor> {
        self.0.desc.as_ref()
    }

    pub fn coeff_domain(&self) -> &CoeffDomain {
        &self.0.coeff
    }

    pub fn variables(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub(crate) fn data(&self) -> &RingData {
        &self.0
    }

    /// Variables that are genuine coordinates: not a finite-field generator.
    pub fn geometric_variables(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.0.relation.as_ref().is_none_or(|r| r.var != i))
            .collect()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.0
            .vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::MissingVariable(name.to_string()))
    }

    pub fn truncation_exponent(&self) -> Option<u32> {
        self.0.trunc.as_ref().map(|t| t.exponent)
    }

    /// Ideal generators of the truncation, variables only.
    pub fn truncation_variables(&self) -> Vec<usize> {
        match &self.0.trunc {
            Some(t) => (0..self.nvars()).filter(|&i| t.mask[i]).collect(),
            None => Vec::new(),
        }
    }

    // ----- constructors of elements -----

    pub fn zero(&self) -> Elem {
        Elem { ring: self.clone(), num: Terms::new(), den: BigInt::one() }
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: impl Into<BigInt>) -> Elem {
        self.from_terms(poly::constant(self.nvars(), n.into()), BigInt::one())
    }

    pub fn from_rational(&self, num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Elem> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::NotAUnit("0".into()));
        }
        let n = self.from_int(num);
        if den.is_one() {
            return Ok(n);
        }
        Ok(n.mul(&self.from_int(den).invert()?))
    }

    pub fn var(&self, name: &str) -> Result<Elem> {
        Ok(self.gen(self.var_index(name)?))
    }

    pub fn gen(&self, index: usize) -> Elem {
        let mut t = Terms::new();
        t.insert(Monomial::var(self.nvars(), index, 1), BigInt::one());
        self.from_terms(t, BigInt::one())
    }

    pub fn monomial(&self, exps: &[i32], coeff: impl Into<BigInt>) -> Result<Elem> {
        if exps.len() != self.nvars() {
            return Err(Error::Shape(format!("expected {} exponents", self.nvars())));
        }
        for (i, &e) in exps.iter().enumerate() {
            if e < 0 && !self.0.laurent[i] {
                return Err(Error::Precondition(format!("negative exponent on `{}`", self.0.vars[i])));
            }
        }
        let mut t = Terms::new();
        add_term(&mut t, Monomial(exps.iter().copied().collect()), coeff.into());
        Ok(self.from_terms(t, BigInt::one()))
    }

    /// Normalizes raw terms into canonical form.
    pub(crate) fn from_terms(&self, num: Terms, den: BigInt) -> Elem {
        let d = &*self.0;
        let mut num = match &d.relation {
            Some(rel) => reduce_relation(num, rel),
            None => num,
        };
        let mut den = den;
        match &d.trunc {
            Some(t) => {
                num = num
                    .into_iter()
                    .filter_map(|(m, c)| {
                        let k = t.degree(&m);
                        if k >= t.exponent {
                            return None;
                        }
                        let c = match &t.moduli[k as usize] {
                            Some(md) => c.mod_floor(md),
                            None => c,
                        };
                        (!c.is_zero()).then_some((m, c))
                    })
                    .collect();
            }
            None => {
                if let CoeffDomain::Modulo(md) = &d.coeff {
                    num = num
                        .into_iter()
                        .filter_map(|(m, c)| {
                            let c = c.mod_floor(md);
                            (!c.is_zero()).then_some((m, c))
                        })
                        .collect();
                }
            }
        }
        if d.coeff == CoeffDomain::Rationals {
            if den.is_negative() {
                den = -den;
                num = poly::neg(&num);
            }
            if num.is_empty() {
                den = BigInt::one();
            } else if !den.is_one() {
                let g = poly::content(&num).gcd(&den);
                if !g.is_one() {
                    num = num.into_iter().map(|(m, c)| (m, c / &g)).collect();
                    den /= &g;
                }
            }
        } else {
            debug_assert!(den.is_one(), "denominator in a non-rational ring");
        }
        Elem { ring: self.clone(), num, den }
    }

    // ----- derived rings -----

    /// The ideal degree of a monomial inside the truncation ideal (0 if none).
    pub(crate) fn ideal_degree(&self, m: &Monomial) -> u32 {
        self.0.trunc.as_ref().map_or(0, |t| t.degree(m))
    }

    /// Characteristic of the ring (0 when it has none).
    pub fn characteristic(&self) -> BigInt {
        match &self.0.trunc {
            Some(t) => t.moduli[0].clone().unwrap_or_else(BigInt::zero),
            None => match &self.0.coeff {
                CoeffDomain::Modulo(m) => m.clone(),
                _ => BigInt::zero(),
            },
        }
    }

    /// The prime `p` if the ring has characteristic exactly `p`.
    pub fn prime_characteristic(&self) -> Option<u64> {
        let c = self.characteristic();
        descriptor::to_u64(&c).filter(|&c| is_prime(c))
    }

    /// A prime `q` that is nilpotent in the ring, if any.
    pub fn nilpotent_prime(&self) -> Option<BigInt> {
        if let Some(q) = self.0.trunc.as_ref().and_then(|t| t.prime.clone()) {
            return Some(q);
        }
        match &self.0.coeff {
            CoeffDomain::Modulo(m) => prime_power_base(m),
            _ => None,
        }
    }

    /// Smallest `k` with `p^k = 0`, if `p` is nilpotent.
    pub fn p_exponent(&self, p: u64) -> Option<u32> {
        let c = self.characteristic();
        if c.is_zero() {
            return None;
        }
        let p = BigInt::from(p);
        if prime_power_base(&c).as_ref() != Some(&p) {
            return None;
        }
        Some(valuation(&c, &p))
    }

    /// Torsion-free ring surjecting onto this one with the same variables:
    /// coefficients in `Z` (or `Q`), the prime dropped from the truncation
    /// ideal and the field relation lifted to a monic integer relation.
    pub fn lift(&self) -> Ring {
        self.0
            .lift
            .get_or_init(|| {
                let d = &*self.0;
                let coeff = match d.coeff {
                    CoeffDomain::Rationals => CoeffDomain::Rationals,
                    _ => CoeffDomain::Integers,
                };
                let trunc = d.trunc.as_ref().and_then(|t| {
                    t.mask.iter().any(|&b| b).then(|| (t.mask.clone(), None, t.exponent))
                });
                let flat = Flat {
                    coeff,
                    vars: d.vars.clone(),
                    laurent: d.laurent.clone(),
                    relation: d.relation.clone(),
                    trunc,
                };
                let is_self = flat.coeff == d.coeff
                    && d.trunc.as_ref().is_none_or(|t| t.prime.is_none());
                if is_self {
                    return self.clone();
                }
                Ring::from_flat(flat, format!("lift({})", d.label), None)
            })
            .clone()
    }

    /// `R/(p)`.
    pub fn mod_p(&self, p: u64) -> Result<Ring> {
        if self.prime_characteristic() == Some(p) {
            return Ok(self.clone());
        }
        let d = &*self.0;
        if d.coeff == CoeffDomain::Rationals {
            return Err(Error::Precondition("R/(p) of a Q-algebra is zero".into()));
        }
        if let CoeffDomain::Modulo(m) = &d.coeff {
            if !(m % p).is_zero() {
                return Err(Error::Precondition(format!("p = {p} is a unit in {}", d.label)));
            }
        }
        let trunc = d.trunc.as_ref().and_then(|t| {
            t.mask.iter().any(|&b| b).then(|| (t.mask.clone(), None, t.exponent))
        });
        let flat = Flat {
            coeff: CoeffDomain::Modulo(BigInt::from(p)),
            vars: d.vars.clone(),
            laurent: d.laurent.clone(),
            relation: d.relation.clone(),
            trunc,
        };
        let desc = d.desc.as_ref().map(|desc| reduce_descriptor_mod_p(desc, p));
        let label = desc.as_ref().map_or_else(|| format!("({})/({p})", d.label), |x| x.to_string());
        Ok(Ring::from_flat(flat, label, desc))
    }

    /// Reinterprets the terms of `x` (from a ring with the same variables)
    /// in this ring, reducing to normal form.
    pub fn reduce_from(&self, x: &Elem) -> Result<Elem> {
        if x.ring.0.vars != self.0.vars {
            return Err(Error::RingMismatch { left: x.ring.to_string(), right: self.to_string() });
        }
        if self.0.coeff != CoeffDomain::Rationals && !x.den.is_one() {
            let inv = self.from_int(x.den.clone()).invert()?;
            return Ok(self.from_terms(x.num.clone(), BigInt::one()).mul(&inv));
        }
        Ok(self.from_terms(x.num.clone(), x.den.clone()))
    }

    pub fn check_same(&self, other: &Ring) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch { left: self.to_string(), right: other.to_string() })
        }
    }

    /// Assignment sending each variable to the same-named variable of `target`.
    pub fn identity_assignment(&self, target: &Ring) -> Result<BTreeMap<String, Elem>> {
        self.0.vars.iter().map(|v| Ok((v.clone(), target.var(v)?))).collect()
    }
}

fn reduce_descriptor_mod_p(desc: &RingDescriptor, p: u64) -> RingDescriptor {
    match desc {
        RingDescriptor::Integers | RingDescriptor::IntegersMod { .. } => RingDescriptor::integers_mod(p),
        RingDescriptor::Rationals => RingDescriptor::Rationals,
        RingDescriptor::FiniteField { .. } => desc.clone(),
        RingDescriptor::Polynomial { base, variables } => RingDescriptor::Polynomial {
            base: Box::new(reduce_descriptor_mod_p(base, p)),
            variables: variables.clone(),
        },
        RingDescriptor::Laurent { base, variables } => RingDescriptor::Laurent {
            base: Box::new(reduce_descriptor_mod_p(base, p)),
            variables: variables.clone(),
        },
        RingDescriptor::QuotientByIdealPower { base, generators, exponent } => {
            let base = reduce_descriptor_mod_p(base, p);
            let gens: Vec<IdealGenerator> = generators
                .iter()
                .filter(|g| !matches!(g, IdealGenerator::Prime(_)))
                .cloned()
                .collect();
            if gens.is_empty() {
                base
            } else {
                RingDescriptor::QuotientByIdealPower { base: Box::new(base), generators: gens, exponent: *exponent }
            }
        }
    }
}

fn reduce_relation(num: Terms, rel: &Relation) -> Terms {
    let deg = rel.tail.len() as i32;
    let v = rel.var;
    if num.keys().all(|m| m.0[v] < deg) {
        return num;
    }
    let mut out = Terms::new();
    let mut pending: Vec<(Monomial, BigInt)> = Vec::new();
    for (m, c) in num {
        if m.0[v] >= deg {
            pending.push((m, c));
        } else {
            add_term(&mut out, m, c);
        }
    }
    while let Some((mut m, c)) = pending.pop() {
        m.0[v] -= deg;
        for (i, t) in rel.tail.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            let mut mm = m.clone();
            mm.0[v] += i as i32;
            let cc = -(&c * t);
            if mm.0[v] >= deg {
                pending.push((mm, cc));
            } else {
                add_term(&mut out, mm, cc);
            }
        }
    }
    out
}

impl Elem {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one()
            && self.num.len() == 1
            && self.num.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn terms(&self) -> &Terms {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Coefficient of a monomial as `(numerator, denominator)`.
    pub fn coefficient(&self, exps: &[i32]) -> (BigInt, BigInt) {
        let m = Monomial(exps.iter().copied().collect());
        let c = self.num.get(&m).cloned().unwrap_or_default();
        let g = c.gcd(&self.den);
        if g.is_zero() || g.is_one() {
            (c, self.den.clone())
        } else {
            (&c / &g, &self.den / &g)
        }
    }

    pub fn constant_term(&self) -> (BigInt, BigInt) {
        self.coefficient(&vec![0; self.ring.nvars()])
    }

    /// Largest total degree among terms (None for zero).
    pub fn degree(&self) -> Option<i64> {
        self.num.keys().map(|m| m.degree()).max()
    }

    /// Smallest ideal degree among terms with respect to the given
    /// variables (`u32::MAX` for zero). Used as a J-adic order.
    pub fn order_in(&self, vars: &[usize]) -> u32 {
        self.num
            .keys()
            .map(|m| vars.iter().map(|&i| m.0[i].max(0) as u32).sum())
            .min()
            .unwrap_or(u32::MAX)
    }

    /// Image in another ring with identical variable list.
    pub fn reduce_into(&self, target: &Ring) -> Result<Elem> {
        target.reduce_from(self)
    }

    pub fn in_lift(&self) -> Elem {
        let lift = self.ring.lift();
        Elem { ring: lift, num: self.num.clone(), den: self.den.clone() }
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.num.iter().rev() {
            let (mut n, d) = {
                let g = c.gcd(&self.den);
                (c / &g, &self.den / &g)
            };
            if first {
                if n.is_negative() {
                    f.write_str("-")?;
                    n = -n;
                }
            } else if n.is_negative() {
                f.write_str(" - ")?;
                n = -n;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            let mono = render_monomial(m, &self.ring.0.vars);
            let coeff = if d.is_one() { n.to_string() } else { format!("{n}/{d}") };
            match (mono.is_empty(), coeff.as_str()) {
                (true, c) => f.write_str(c)?,
                (false, "1") => f.write_str(&mono)?,
                (false, c) => write!(f, "{c}*{mono}")?,
            }
        }
        Ok(())
    }
}

fn render_monomial(m: &Monomial, vars: &[String]) -> String {
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, &e)| if e == 1 { vars[i].clone() } else { format!("{}^{}", vars[i], e) })
        .collect();
    parts.join("*")
}

#[cfg(test)]
mod tests;
