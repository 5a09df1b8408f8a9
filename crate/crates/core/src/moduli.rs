//! The Hopf algebroid `(A, Gamma)` corepresenting displays of height `h`
//! and dimension `h - 1` in matrix form and their changes of coordinates,
//! truncated in the Witt direction.
//!
//! Generators are named `beta{n}_{i}{j}` for the matrix form and
//! `phi{n}_{i}{j}` for the change (indices from 1). The matrix form has `N`
//! Witt components. The change has `N + 1`, since the transformed matrix
//! form spends one component on the Frobenius; `phi0_{i}{h}` is zero for
//! `i < h`. Coefficients are `Z/p^N`, where `p` is nilpotent, so the Witt
//! inverse of `det(phi)` is a finite expression.
//!
//! The right unit and the inverse need `det(phi_0)^-1`. For `h = 2` this is
//! `(phi0_11 phi0_22)^-1`, a monomial, and both maps are computed
//! symbolically with `phi0_11`, `phi0_22` as Laurent variables. For larger
//! `h` they are only available through numeric specialization.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::Rng;

use crate::display::random::{random_change, random_display};
use crate::display::{transform_matrix_form, CoordinateChange, DisplayMatrix};
use crate::error::{Error, Result};
use crate::matrix::WittMatrix;
use crate::ring::{Elem, Ring, RingDescriptor};
use crate::witt::WittVector;

pub type Assignment = BTreeMap<String, Elem>;

/// Upper bound on the total number of terms in the structure maps.
pub const MAX_TERMS: usize = 2_000_000;

pub fn beta_name(n: usize, i: usize, j: usize) -> String {
    format!("beta{n}_{}{}", i + 1, j + 1)
}

pub fn change_name(prefix: &str, n: usize, i: usize, j: usize) -> String {
    format!("{prefix}{n}_{}{}", i + 1, j + 1)
}

fn beta_generators(h: usize, len: usize) -> Vec<String> {
    let mut out = Vec::new();
    for n in 0..len {
        for i in 0..h {
            for j in 0..h {
                out.push(beta_name(n, i, j));
            }
        }
    }
    out
}

/// Change generators with `prefix`, split into polynomial and Laurent ones.
fn change_generators(prefix: &str, h: usize, len: usize) -> (Vec<String>, Vec<String>) {
    let mut poly = Vec::new();
    let mut laurent = Vec::new();
    for n in 0..len {
        for i in 0..h {
            for j in 0..h {
                if n == 0 && i < h - 1 && j == h - 1 {
                    continue;
                }
                let name = change_name(prefix, n, i, j);
                if h == 2 && n == 0 && i == j {
                    laurent.push(name);
                } else {
                    poly.push(name);
                }
            }
        }
    }
    (poly, laurent)
}

#[derive(Clone, Debug)]
pub struct HopfPresentation {
    p: u64,
    n: usize,
    h: usize,
    a_ring: Ring,
    gamma: Ring,
    gamma2: Ring,
    eta_l: Assignment,
    eta_r: Option<Assignment>,
    delta: Assignment,
    epsilon: Assignment,
    inverse: Option<Assignment>,
}

/// `A[beta][prefixes...]` over `Z/p^n`.
fn ring_with(p: u64, h: usize, n: usize, prefixes: &[&str]) -> Result<Ring> {
    let coeff = RingDescriptor::IntegersMod { modulus: BigInt::from(p).pow(n as u32) };
    let mut poly = beta_generators(h, n);
    let mut laurent = Vec::new();
    for prefix in prefixes {
        let (pv, lv) = change_generators(prefix, h, n + 1);
        poly.extend(pv);
        laurent.extend(lv);
    }
    let mut desc = RingDescriptor::Polynomial { base: Box::new(coeff), variables: poly };
    if !laurent.is_empty() {
        desc = RingDescriptor::Laurent { base: Box::new(desc), variables: laurent };
    }
    Ring::new(desc)
}

fn generic_beta(ring: &Ring, p: u64, h: usize, len: usize) -> Result<WittMatrix> {
    let zero = WittVector::zero(p, len, ring);
    let mut m = WittMatrix::zeros(h, h, &zero);
    for i in 0..h {
        for j in 0..h {
            let comps = (0..len).map(|n| ring.var(&beta_name(n, i, j))).collect::<Result<Vec<_>>>()?;
            m.set(i, j, WittVector::new(p, comps)?);
        }
    }
    Ok(m)
}

/// The generic change named by `prefix`, at Witt length `len`. The top
/// component of `b` is not a generator and is set to zero.
fn generic_change(ring: &Ring, p: u64, h: usize, len: usize, prefix: &str) -> Result<CoordinateChange> {
    let d = h - 1;
    let zero = WittVector::zero(p, len, ring);
    let comp = |n: usize, i: usize, j: usize| ring.var(&change_name(prefix, n, i, j));
    let block = |rows: std::ops::Range<usize>, cols: std::ops::Range<usize>| -> Result<WittMatrix> {
        let mut m = WittMatrix::zeros(rows.len(), cols.len(), &zero);
        for i in rows.clone() {
            for j in cols.clone() {
                let comps = (0..len).map(|n| comp(n, i, j)).collect::<Result<Vec<_>>>()?;
                m.set(i - rows.start, j - cols.start, WittVector::new(p, comps)?);
            }
        }
        Ok(m)
    };
    let mut b = WittMatrix::zeros(d, 1, &zero);
    for i in 0..d {
        let mut comps = (1..len).map(|n| comp(n, i, h - 1)).collect::<Result<Vec<_>>>()?;
        comps.push(ring.zero());
        b.set(i, 0, WittVector::new(p, comps)?);
    }
    Ok(CoordinateChange::from_blocks_unchecked(block(0..d, 0..d)?, b, block(d..h, 0..d)?, block(d..h, d..h)?))
}

/// Reads the generator values of a change matrix: entry `(i, j)`,
/// component `n` goes to `phi{n}_{i}{j}`.
fn read_change(m: &WittMatrix, prefix: &str, h: usize, len: usize, out: &mut Assignment) {
    let (poly, laurent) = change_generators(prefix, h, len);
    let names: std::collections::BTreeSet<String> = poly.into_iter().chain(laurent).collect();
    for i in 0..h {
        for j in 0..h {
            for n in 0..len {
                let name = change_name(prefix, n, i, j);
                if names.contains(&name) {
                    out.insert(name, m.get(i, j).component(n).clone());
                }
            }
        }
    }
}

fn count_terms(a: &Assignment) -> usize {
    a.values().map(|x| x.terms().len()).sum()
}

fn guard(a: &Assignment, what: &str) -> Result<()> {
    let n = count_terms(a);
    if n > MAX_TERMS {
        return Err(Error::ResourceLimit(format!("{what} has {n} terms")));
    }
    Ok(())
}

/// Builds the presentation at Witt length `n` for the matrix form.
pub fn build_presentation(p: u64, n: usize, h: usize) -> Result<HopfPresentation> {
    if h < 2 || n < 1 {
        return Err(Error::Precondition(format!("need h >= 2 and N >= 1, got h = {h}, N = {n}")));
    }
    if !crate::ring::is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    let len = n + 1;
    let a_ring = ring_with(p, h, n, &[])?;
    let gamma = ring_with(p, h, n, &["phi"])?;
    let gamma2 = ring_with(p, h, n, &["phi", "psi"])?;

    let mut eta_l = Assignment::new();
    for name in beta_generators(h, n) {
        eta_l.insert(name.clone(), gamma.var(&name)?);
    }

    let mut epsilon = Assignment::new();
    let (poly, laurent) = change_generators("phi", h, len);
    for name in poly.iter().chain(&laurent) {
        let is_one = name.starts_with("phi0_") && name.as_bytes()[5] == name.as_bytes()[6];
        epsilon.insert(name.clone(), if is_one { a_ring.one() } else { a_ring.zero() });
    }

    let first = generic_change(&gamma2, p, h, len, "phi")?;
    let second = generic_change(&gamma2, p, h, len, "psi")?;
    let mut delta = Assignment::new();
    read_change(&second.compose(&first)?.to_matrix()?, "phi", h, len, &mut delta);
    guard(&delta, "the coproduct")?;

    let (eta_r, inverse) = if h == 2 {
        let phi = generic_change(&gamma, p, h, len, "phi")?;
        let form = transform_matrix_form(&generic_beta(&gamma, p, h, n)?, &phi)?;
        let mut eta_r = Assignment::new();
        for i in 0..h {
            for j in 0..h {
                for k in 0..n {
                    eta_r.insert(beta_name(k, i, j), form.get(i, j).component(k).clone());
                }
            }
        }
        guard(&eta_r, "the right unit")?;
        let mut inverse = Assignment::new();
        read_change(&phi.to_matrix()?.inverse()?, "phi", h, len, &mut inverse);
        guard(&inverse, "the inverse")?;
        (Some(eta_r), Some(inverse))
    } else {
        (None, None)
    };

    Ok(HopfPresentation { p, n, h, a_ring, gamma, gamma2, eta_l, eta_r, delta, epsilon, inverse })
}

/// Outcome of one family of identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl AxiomReport {
    fn new(name: &str) -> Self {
        AxiomReport { name: name.to_string(), checked: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.checked > 0 && self.failures.is_empty()
    }
}

/// `eta_R((beta_0)_hh) = unit * (beta_0)_hh + p * quotient` in `Gamma`,
/// with `unit = (phi_0)_hh^(p-1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantIdealCertificate {
    pub image: Elem,
    pub unit: Elem,
    pub quotient: Elem,
}

impl HopfPresentation {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn witt_len(&self) -> usize {
        self.n
    }

    pub fn height(&self) -> usize {
        self.h
    }

    /// `A`, without `det(beta)^-1`, which no structure map needs.
    pub fn a_ring(&self) -> &Ring {
        &self.a_ring
    }

    pub fn gamma(&self) -> &Ring {
        &self.gamma
    }

    /// `Gamma (x)_A Gamma`, with the second factor's generators named `psi`.
    pub fn gamma2(&self) -> &Ring {
        &self.gamma2
    }

    pub fn beta_generators(&self) -> Vec<String> {
        beta_generators(self.h, self.n)
    }

    pub fn phi_generators(&self) -> Vec<String> {
        let (poly, laurent) = change_generators("phi", self.h, self.n + 1);
        let mut all: Vec<String> = poly.into_iter().chain(laurent).collect();
        all.sort_by_key(|s| generator_key(s));
        all
    }

    /// Elements inverted in `Gamma`.
    pub fn inverted(&self) -> Vec<String> {
        vec!["det(beta_0)".into(), "det(phi_0)".into()]
    }

    pub fn eta_l(&self) -> &Assignment {
        &self.eta_l
    }

    pub fn eta_r(&self) -> Option<&Assignment> {
        self.eta_r.as_ref()
    }

    pub fn delta(&self) -> &Assignment {
        &self.delta
    }

    pub fn epsilon(&self) -> &Assignment {
        &self.epsilon
    }

    pub fn inverse(&self) -> Option<&Assignment> {
        self.inverse.as_ref()
    }

    fn require_eta_r(&self) -> Result<&Assignment> {
        self.eta_r.as_ref().ok_or_else(|| Error::Unsupported(format!("symbolic right unit for h = {}", self.h)))
    }

    fn require_inverse(&self) -> Result<&Assignment> {
        self.inverse.as_ref().ok_or_else(|| Error::Unsupported(format!("symbolic inverse for h = {}", self.h)))
    }

    /// Assignment sending every `beta` to itself in `target`.
    fn betas_to(&self, target: &Ring) -> Result<Assignment> {
        beta_generators(self.h, self.n).into_iter().map(|b| Ok((b.clone(), target.var(&b)?))).collect()
    }

    /// Assignment renaming the change generators `from` to `to` in `target`.
    fn rename(&self, from: &str, to: &str, target: &Ring) -> Result<Assignment> {
        let (poly, laurent) = change_generators(from, self.h, self.n + 1);
        poly.into_iter()
            .chain(laurent)
            .map(|name| {
                let new = format!("{to}{}", &name[from.len()..]);
                Ok((name, target.var(&new)?))
            })
            .collect()
    }

    fn lift_constants(&self, a: &Assignment, target: &Ring) -> Result<Assignment> {
        a.iter().map(|(k, v)| Ok((k.clone(), v.substitute(&self.betas_to(target)?, target)?))).collect()
    }

    /// `eps . eta_L = eps . eta_R = id` on the `beta`, and
    /// `(eps (x) 1) Delta = (1 (x) eps) Delta = id` on the `phi`.
    pub fn check_counit(&self) -> Result<AxiomReport> {
        let mut rep = AxiomReport::new("counit");
        let mut eps = self.betas_to(&self.a_ring)?;
        eps.extend(self.epsilon.clone());
        for (name, image) in &self.eta_l {
            let v = image.substitute(&eps, &self.a_ring)?;
            rep.record(v == self.a_ring.var(name)?, || format!("eps eta_L({name}) = {v}"));
        }
        if let Some(eta_r) = &self.eta_r {
            for (name, image) in eta_r {
                let v = image.substitute(&eps, &self.a_ring)?;
                rep.record(v == self.a_ring.var(name)?, || format!("eps eta_R({name}) = {v}"));
            }
        }
        let g = &self.gamma;
        let eps_g = self.lift_constants(&self.epsilon, g)?;
        let mut left = self.betas_to(g)?;
        left.extend(eps_g.clone());
        left.extend(self.rename("psi", "phi", g)?);
        let mut right = self.betas_to(g)?;
        right.extend(self.rename("phi", "phi", g)?);
        right.extend(eps_g.into_iter().map(|(k, v)| (format!("psi{}", &k[3..]), v)));
        for (name, image) in &self.delta {
            let target = g.var(name)?;
            let l = image.substitute(&left, g)?;
            rep.record(l == target, || format!("(eps x 1) Delta({name}) = {l}"));
            let r = image.substitute(&right, g)?;
            rep.record(r == target, || format!("(1 x eps) Delta({name}) = {r}"));
        }
        Ok(rep)
    }

    /// `(Delta (x) 1) Delta = (1 (x) Delta) Delta` on the `phi`.
    pub fn check_coassociativity(&self) -> Result<AxiomReport> {
        let mut rep = AxiomReport::new("coassociativity");
        let g3 = ring_with(self.p, self.h, self.n, &["phi", "psi", "chi"])?;
        let mut base = self.betas_to(&g3)?;
        base.extend(self.rename("phi", "phi", &g3)?);
        base.extend(self.rename("psi", "psi", &g3)?);
        let mut shifted = self.betas_to(&g3)?;
        shifted.extend(self.rename("phi", "psi", &g3)?);
        shifted.extend(self.rename("psi", "chi", &g3)?);
        let mut delta_12 = Assignment::new();
        let mut delta_23 = Assignment::new();
        for (name, image) in &self.delta {
            delta_12.insert(name.clone(), image.substitute(&base, &g3)?);
            delta_23.insert(format!("psi{}", &name[3..]), image.substitute(&shifted, &g3)?);
        }
        let mut left = self.betas_to(&g3)?;
        left.extend(delta_12);
        left.extend(self.rename("psi", "chi", &g3)?);
        let mut right = self.betas_to(&g3)?;
        right.extend(self.rename("phi", "phi", &g3)?);
        right.extend(delta_23);
        for (name, image) in &self.delta {
            let l = image.substitute(&left, &g3)?;
            let r = image.substitute(&right, &g3)?;
            rep.record(l == r, || format!("coassociativity fails on {name}"));
        }
        Ok(rep)
    }

    /// Composing a change with its inverse on either side gives `eps`.
    pub fn check_antipode(&self) -> Result<AxiomReport> {
        let inverse = self.require_inverse()?;
        let mut rep = AxiomReport::new("antipode");
        let g = &self.gamma;
        let eps_g = self.lift_constants(&self.epsilon, g)?;
        let inv_as_psi: Assignment = inverse.iter().map(|(k, v)| (format!("psi{}", &k[3..]), v.clone())).collect();
        let mut after = self.betas_to(g)?;
        after.extend(self.rename("phi", "phi", g)?);
        after.extend(inv_as_psi);
        let mut before = self.betas_to(g)?;
        before.extend(inverse.clone());
        before.extend(self.rename("psi", "phi", g)?);
        for (name, image) in &self.delta {
            let expected = &eps_g[name];
            let l = image.substitute(&after, g)?;
            rep.record(&l == expected, || format!("c(phi) phi at {name} = {l}"));
            let r = image.substitute(&before, g)?;
            rep.record(&r == expected, || format!("phi c(phi) at {name} = {r}"));
        }
        Ok(rep)
    }

    /// `Delta eta_R = 1 (x) eta_R` and `Delta eta_L = eta_L (x) 1`: changing
    /// by `phi` and then `psi` agrees with changing by `psi phi`.
    pub fn check_unit_compatibility(&self) -> Result<AxiomReport> {
        let eta_r = self.require_eta_r()?;
        let mut rep = AxiomReport::new("unit compatibility");
        let g2 = &self.gamma2;
        let mut via_delta = self.betas_to(g2)?;
        via_delta.extend(self.delta.clone());
        let mut stepwise = Assignment::new();
        let mut first = self.betas_to(g2)?;
        first.extend(self.rename("phi", "phi", g2)?);
        for (name, image) in eta_r {
            stepwise.insert(name.clone(), image.substitute(&first, g2)?);
        }
        stepwise.extend(self.rename("phi", "psi", g2)?);
        for (name, image) in eta_r {
            let l = image.substitute(&via_delta, g2)?;
            let r = image.substitute(&stepwise, g2)?;
            rep.record(l == r, || format!("Delta eta_R({name}) differs from 1 x eta_R"));
        }
        for (name, image) in &self.eta_l {
            let l = image.substitute(&via_delta, g2)?;
            rep.record(l == g2.var(name)?, || format!("Delta eta_L({name}) = {l}"));
        }
        Ok(rep)
    }

    /// All symbolic checks available at this height.
    pub fn check_axioms(&self) -> Result<Vec<AxiomReport>> {
        let mut out = vec![self.check_counit()?, self.check_coassociativity()?];
        if self.eta_r.is_some() {
            out.push(self.check_antipode()?);
            out.push(self.check_unit_compatibility()?);
        }
        Ok(out)
    }

    /// Values of the generators for a matrix form and a change over `R`.
    /// The change must be one component longer than the matrix form.
    pub fn specialization(&self, form: &WittMatrix, phi: &CoordinateChange) -> Result<Assignment> {
        if form.witt_len() != self.n || phi.witt_len() != self.n + 1 || form.nrows() != self.h {
            return Err(Error::Shape("specialization has the wrong size".into()));
        }
        let mut out = Assignment::new();
        for i in 0..self.h {
            for j in 0..self.h {
                for k in 0..self.n {
                    out.insert(beta_name(k, i, j), form.get(i, j).component(k).clone());
                }
            }
        }
        read_change(&phi.to_matrix()?, "phi", self.h, self.n + 1, &mut out);
        Ok(out)
    }

    /// The invariant-ideal certificate for `J = (p, (beta_0)_hh)`.
    pub fn invariant_ideal_certificate(&self) -> Result<InvariantIdealCertificate> {
        let eta_r = self.require_eta_r()?;
        let h = self.h;
        let g = &self.gamma;
        let image = eta_r[&beta_name(0, h - 1, h - 1)].clone();
        let unit = g.var(&change_name("phi", 0, h - 1, h - 1))?.pow(self.p - 1);
        let rest = image.sub(&unit.mul(&g.var(&beta_name(0, h - 1, h - 1))?));
        let quotient = g.reduce_from(&rest.in_lift().div_exact_int(&BigInt::from(self.p)).map_err(|_| {
            Error::Precondition(format!("certificate search failed: {rest} is not divisible by {}", self.p))
        })?)?;
        let check = unit.mul(&g.var(&beta_name(0, h - 1, h - 1))?).add(&quotient.scale_int(&BigInt::from(self.p)));
        if check != image || !unit.is_unit() {
            return Err(Error::Precondition("certificate does not reproduce the image".into()));
        }
        Ok(InvariantIdealCertificate { image, unit, quotient })
    }
}

fn generator_key(name: &str) -> (usize, String) {
    let digits: String = name.chars().skip_while(|c| c.is_ascii_alphabetic()).take_while(|c| c.is_ascii_digit()).collect();
    (digits.parse().unwrap_or(0), name.to_string())
}

/// Groupoid identities on random numeric specializations over `F_p`:
/// identity change, composition (`Delta`), associativity, inverses and
/// the product rule for the 1-form factor.
pub fn numeric_axioms(rng: &mut impl Rng, p: u64, h: usize, n: usize, samples: usize) -> Result<Vec<AxiomReport>> {
    let k = Ring::integers_mod(p)?;
    let d = h - 1;
    let mut counit = AxiomReport::new("counit");
    let mut comp = AxiomReport::new("composition");
    let mut assoc = AxiomReport::new("coassociativity");
    let mut inv = AxiomReport::new("antipode");
    let mut factor = AxiomReport::new("1-form factor");
    let id = CoordinateChange::identity(p, n, &k, h, d);
    for s in 0..samples {
        let disp = random_display(rng, p, h, d, n, &k)?;
        let phis = (0..3).map(|_| random_change(rng, p, h, d, n, &k)).collect::<Result<Vec<_>>>()?;
        let (same, f0) = disp.change_of_coords(&id)?;
        counit.record(same == disp && f0.is_identity(), || format!("sample {s}: identity change"));
        let (d1, f1) = disp.change_of_coords(&phis[0])?;
        let (d2, f2) = d1.change_of_coords(&phis[1])?;
        let both = phis[1].compose(&phis[0])?;
        let (d12, f12) = disp.change_of_coords(&both)?;
        comp.record(d2 == d12, || format!("sample {s}: composite change"));
        factor.record(f12 == f2.mul(&f1)?, || format!("sample {s}: factor of composite"));
        let l = phis[2].compose(&phis[1])?.compose(&phis[0])?;
        let r = phis[2].compose(&both)?;
        assoc.record(l == r, || format!("sample {s}: associativity"));
        let pinv = phis[0].inverse()?;
        let ok = pinv.compose(&phis[0])? == id && phis[0].compose(&pinv)? == id && d1.change_of_coords(&pinv)?.0 == disp;
        inv.record(ok, || format!("sample {s}: inverse"));
    }
    Ok(vec![counit, comp, assoc, inv, factor])
}

/// Compares the symbolic structure maps with numeric changes of
/// coordinates over `F_p` on random specializations.
pub fn specialization_agreement(rng: &mut impl Rng, pres: &HopfPresentation, samples: usize) -> Result<AxiomReport> {
    let (p, h, n) = (pres.p, pres.h, pres.n);
    let k = Ring::integers_mod(p)?;
    let mut rep = AxiomReport::new("specialization");
    for s in 0..samples {
        let disp = random_display(rng, p, h, h - 1, n, &k)?;
        let phi = top_b_zero(random_change(rng, p, h, h - 1, n + 1, &k)?)?;
        let psi = top_b_zero(random_change(rng, p, h, h - 1, n + 1, &k)?)?;
        let mut values = pres.specialization(disp.matrix_form(), &phi)?;
        if let Some(eta_r) = &pres.eta_r {
            let (out, _) = disp.change_of_coords(&phi.truncate(n)?)?;
            for i in 0..h {
                for j in 0..h {
                    for c in 0..n {
                        let name = beta_name(c, i, j);
                        let v = eta_r[&name].substitute(&values, &k)?;
                        rep.record(&v == out.matrix_form().get(i, j).component(c), || format!("sample {s}: eta_R({name})"));
                    }
                }
            }
        }
        let mut psi_values = Assignment::new();
        read_change(&psi.to_matrix()?, "psi", h, n + 1, &mut psi_values);
        values.extend(psi_values);
        let composite = psi.compose(&phi)?.to_matrix()?;
        let mut expected = Assignment::new();
        read_change(&composite, "phi", h, n + 1, &mut expected);
        for (name, image) in &pres.delta {
            let v = image.substitute(&values, &k)?;
            rep.record(v == expected[name], || format!("sample {s}: Delta({name})"));
        }
    }
    Ok(rep)
}

fn top_b_zero(phi: CoordinateChange) -> Result<CoordinateChange> {
    let len = phi.witt_len();
    let zero = WittVector::zero(phi.b().p(), len, phi.b().ring());
    let b = phi.b().map(&zero, |x| Ok(x.truncate(len - 1)?.pad(len)))?;
    CoordinateChange::new(phi.a().clone(), b, phi.c().clone(), phi.e().clone())
}

/// Checks the change-of-coordinates formula on a display: the matrix form
/// obtained by specializing `eta_R` at `(B, phi)` is a display again.
pub fn specialize_display(pres: &HopfPresentation, values: &Assignment, target: &Ring) -> Result<DisplayMatrix> {
    let eta_r = pres.require_eta_r()?;
    let zero = WittVector::zero(pres.p, pres.n, target);
    let mut m = WittMatrix::zeros(pres.h, pres.h, &zero);
    for i in 0..pres.h {
        for j in 0..pres.h {
            let comps = (0..pres.n).map(|c| eta_r[&beta_name(c, i, j)].substitute(values, target)).collect::<Result<Vec<_>>>()?;
            m.set(i, j, WittVector::new(pres.p, comps)?);
        }
    }
    DisplayMatrix::new(pres.p, pres.h, pres.h - 1, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn generator_counts() {
        let pres = build_presentation(3, 2, 2).unwrap();
        assert_eq!(pres.beta_generators().len(), 2 * 2 * 2);
        assert_eq!(pres.phi_generators().len(), 2 * 2 * 3 - 1);
        let pres = build_presentation(2, 2, 3).unwrap();
        assert_eq!(pres.beta_generators().len(), 9 * 2);
        assert!(pres.eta_r().is_none());
    }

    #[test]
    fn symbolic_axioms_h2() {
        for p in [2, 3] {
            let pres = build_presentation(p, 2, 2).unwrap();
            for rep in pres.check_axioms().unwrap() {
                assert!(rep.passed(), "p = {p}: {rep:?}");
            }
        }
    }

    #[test]
    fn symbolic_counit_and_coassociativity_h3() {
        let pres = build_presentation(2, 1, 3).unwrap();
        assert!(pres.check_counit().unwrap().passed());
        assert!(pres.check_coassociativity().unwrap().passed());
    }

    #[test]
    fn certificate_h2() {
        for p in [2, 3] {
            let pres = build_presentation(p, 2, 2).unwrap();
            let cert = pres.invariant_ideal_certificate().unwrap();
            let g = pres.gamma();
            assert_eq!(cert.unit, g.var("phi0_22").unwrap().pow(p - 1));
            let mut values = pres.betas_to(g).unwrap();
            values.extend(pres.lift_constants(pres.epsilon(), g).unwrap());
            assert!(cert.unit.substitute(&values, g).unwrap().is_one());
        }
    }

    #[test]
    fn numeric_specializations() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for h in [2, 3] {
            for rep in numeric_axioms(&mut rng, 3, h, 3, 5).unwrap() {
                assert!(rep.passed(), "{rep:?}");
            }
        }
        let pres = build_presentation(3, 2, 2).unwrap();
        assert!(specialization_agreement(&mut rng, &pres, 5).unwrap().passed());
    }
}
