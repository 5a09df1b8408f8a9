//! The map to projective space, the Jacobian étale test and a brute-force
//! count of first-order lifts.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};

use crate::display::{CoordinateChange, DisplayMatrix, Nilpotence};
use crate::error::{Error, Result};
use crate::matrix::{ElemMatrix, WittMatrix};
use crate::ring::{Elem, IdealGenerator, Ring, RingDescriptor};
use crate::witt::table::{generate_universal_polynomials, table_feasible, WittOp};
use crate::witt::{finite_field_degree, WittVector};

/// Homogeneous coordinates, compared up to a common unit.
#[derive(Clone, Debug)]
pub struct ProjectivePoint {
    coords: Vec<Elem>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<Elem>) -> Result<Self> {
        let first = coords.first().ok_or_else(|| Error::Shape("a point needs coordinates".into()))?;
        for c in &coords {
            first.ring().check_same(c.ring())?;
        }
        Ok(ProjectivePoint { coords })
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    pub fn ring(&self) -> &Ring {
        self.coords[0].ring()
    }

    /// Indices of the coordinates that are units.
    pub fn unit_indices(&self) -> Vec<usize> {
        (0..self.coords.len()).filter(|&i| self.coords[i].is_unit()).collect()
    }

    /// Whether `other = lambda * self` for a unit `lambda`. Needs a unit
    /// coordinate in `self`.
    pub fn projectively_equal(&self, other: &ProjectivePoint) -> Result<bool> {
        if self.coords.len() != other.coords.len() {
            return Ok(false);
        }
        let i = *self
            .unit_indices()
            .first()
            .ok_or_else(|| Error::Precondition(format!("{self} has no unit coordinate")))?;
        let lambda = other.coords[i].mul(&self.coords[i].invert()?);
        if !lambda.is_unit() {
            return Ok(false);
        }
        Ok(self.coords.iter().zip(&other.coords).all(|(x, y)| &lambda.mul(x) == y))
    }

    /// The affine chart where coordinate `i` is normalized to one.
    pub fn chart(&self, i: usize) -> Result<ChartMap> {
        let c = self.coords.get(i).ok_or(Error::IndexOutOfRange { index: i, len: self.coords.len() })?;
        let inv = c.invert()?;
        let coords = (0..self.coords.len()).filter(|&j| j != i).map(|j| self.coords[j].mul(&inv)).collect();
        Ok(ChartMap { chart: i, coords })
    }

    /// Moves the first coordinate to the end.
    pub fn rotate_left(&self) -> Self {
        let mut coords = self.coords.clone();
        coords.rotate_left(1);
        ProjectivePoint { coords }
    }

    pub fn reduce_into(&self, ring: &Ring) -> Result<Self> {
        Self::new(self.coords.iter().map(|c| c.reduce_into(ring)).collect::<Result<_>>()?)
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(" : "))
    }
}

/// `[w0(B_1h) : ... : w0(B_hh)]`.
pub fn projective_point(disp: &DisplayMatrix) -> Result<ProjectivePoint> {
    if disp.dimension() + 1 != disp.height() {
        return Err(Error::Precondition(format!("need d = h - 1, got d = {}", disp.dimension())));
    }
    let point = ProjectivePoint::new(disp.last_column_w0())?;
    debug_assert!(point.coords.iter().any(|c| !c.is_zero()));
    Ok(point)
}

/// An affine chart of `P^{h-1}`: the coordinate functions after dividing by
/// the normalized coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartMap {
    chart: usize,
    coords: Vec<Elem>,
}

impl ChartMap {
    pub fn new(chart: usize, coords: Vec<Elem>) -> Result<Self> {
        let first = coords.first().ok_or_else(|| Error::Shape("a chart needs coordinates".into()))?;
        for c in &coords {
            first.ring().check_same(c.ring())?;
        }
        Ok(ChartMap { chart, coords })
    }

    pub fn chart(&self) -> usize {
        self.chart
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    pub fn ring(&self) -> &Ring {
        self.coords[0].ring()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EtaleReport {
    pub etale: bool,
    pub jacobian_det: Option<Elem>,
    pub reason: Option<String>,
}

/// Étale iff the Jacobian determinant of the coordinate functions with
/// respect to the ring's variables is a unit. Finite-field generators are
/// not variables.
pub fn jacobian_etale_check(map: &ChartMap) -> Result<EtaleReport> {
    let ring = map.ring();
    let vars = ring.geometric_variables();
    if vars.len() != map.coords.len() {
        return Ok(EtaleReport {
            etale: false,
            jacobian_det: None,
            reason: Some(format!("{} coordinate functions in {} variables", map.coords.len(), vars.len())),
        });
    }
    let zero = ring.zero();
    let jac = ElemMatrix::from_fn(vars.len(), vars.len(), &zero, |i, k| map.coords[i].derivative(vars[k]));
    let det = jac.det()?;
    let etale = det.is_unit();
    let reason = (!etale).then(|| format!("Jacobian determinant {det} is not a unit"));
    Ok(EtaleReport { etale, jacobian_det: Some(det), reason })
}

#[derive(Clone, Debug, PartialEq)]
pub struct AllChartsReport {
    pub charts: Vec<(usize, EtaleReport)>,
    pub etale: bool,
}

/// Runs the étale test on every chart whose normalizing coordinate is a
/// unit; étale when there is at least one such chart and all pass.
pub fn etale_all_charts(point: &ProjectivePoint) -> Result<AllChartsReport> {
    let mut charts = Vec::new();
    for i in point.unit_indices() {
        charts.push((i, jacobian_etale_check(&point.chart(i)?)?));
    }
    let etale = !charts.is_empty() && charts.iter().all(|(_, r)| r.etale);
    Ok(AllChartsReport { charts, etale })
}

pub const DEFAULT_BUDGET: u64 = 1 << 22;

#[derive(Clone, Debug)]
pub struct TangentOracleReport {
    /// Number of isomorphism classes of lifts to `k[eps]/(eps^2)`.
    pub class_count: u64,
    /// `|k|^(h-1)`, the size of the tangent space of `P^{h-1}_k`.
    pub expected: u64,
    pub lift_count: u64,
    /// Size of the orbit of the trivial lift.
    pub orbit_size: u64,
    /// Lexicographically least `s` of each class, in increasing order.
    pub representatives: Vec<WittMatrix>,
    /// Whether the orbit of zero is exactly the set of `s` whose last column
    /// is congruent mod `I_R` to a multiple of the last column of `B`.
    pub closed_form_agrees: bool,
    /// Checks of the square-zero ideal arithmetic and of the action being
    /// translation by the orbit of zero.
    pub checks: usize,
    pub nilpotence: Nilpotence,
    pub warning: Option<String>,
}

/// Linear coordinates on `M_h(W_N(eps k))` over `F_p`.
struct Layout {
    p: u64,
    h: usize,
    len: usize,
    m: usize,
    eps: Elem,
    basis: Vec<Elem>,
}

impl Layout {
    fn dim(&self) -> usize {
        self.h * self.h * self.len * self.m
    }

    fn witt(&self, coords: &[u64]) -> Result<WittVector> {
        let ring = self.eps.ring();
        let comps = (0..self.len)
            .map(|n| {
                let mut t = ring.zero();
                for l in 0..self.m {
                    let c = coords[n * self.m + l];
                    if c != 0 {
                        t = t.add(&self.basis[l].scale_int(&BigInt::from(c)));
                    }
                }
                t.mul(&self.eps)
            })
            .collect();
        WittVector::new(self.p, comps)
    }

    fn matrix(&self, coords: &[u64], rows: usize, cols: usize) -> Result<WittMatrix> {
        let block = self.len * self.m;
        let zero = WittVector::zero(self.p, self.len, self.eps.ring());
        let mut out = WittMatrix::zeros(rows, cols, &zero);
        for i in 0..rows {
            for j in 0..cols {
                let off = (i * cols + j) * block;
                out.set(i, j, self.witt(&coords[off..off + block])?);
            }
        }
        Ok(out)
    }

    fn coords_of(&self, w: &WittVector, out: &mut [u64]) -> Result<()> {
        let ring = self.eps.ring();
        let eps_var = ring.var_index("eps")?;
        let z_var = ring.var_index("z").ok();
        for (n, c) in w.components().iter().enumerate() {
            for (mono, coeff) in c.terms() {
                let e = mono.exps();
                if e[eps_var] != 1 {
                    return Err(Error::Precondition(format!("{c} is not in eps k")));
                }
                let l = z_var.map_or(0, |z| e[z] as usize);
                out[n * self.m + l] = (coeff % BigInt::from(self.p)).to_u64().unwrap_or(0);
            }
        }
        Ok(())
    }

    fn coords_of_matrix(&self, m: &WittMatrix) -> Result<Vec<u64>> {
        let block = self.len * self.m;
        let mut out = vec![0; m.nrows() * m.ncols() * block];
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                let off = (i * m.ncols() + j) * block;
                self.coords_of(m.get(i, j), &mut out[off..off + block])?;
            }
        }
        Ok(out)
    }

    fn index(&self, coords: &[u64]) -> u64 {
        coords.iter().fold(0, |acc, &c| acc * self.p + c)
    }

    fn decode(&self, idx: u64, out: &mut [u64]) {
        decode(self.p, idx, out)
    }

    fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).map(|(a, b)| (a + b) % self.p).collect()
    }
}

/// `k[eps]/(eps^2)` for a finite field `k`.
fn dual_numbers(field: &Ring) -> Result<Ring> {
    let base = field.descriptor().cloned().ok_or_else(|| Error::Precondition("field without descriptor".into()))?;
    Ring::new(RingDescriptor::QuotientByIdealPower {
        base: Box::new(RingDescriptor::Polynomial { base: Box::new(base), variables: vec!["eps".into()] }),
        generators: vec![IdealGenerator::Variable("eps".into())],
        exponent: 2,
    })
}

fn embed(x: &Elem, target: &Ring) -> Result<Elem> {
    x.substitute(&x.ring().identity_assignment(target)?, target)
}

/// Enumerates the lifts `B + s`, `s` in `M_h(W_N(eps k))`, of a display
/// over a finite field and counts them up to isomorphism.
///
/// The orbit of the trivial lift is generated by the changes
/// `I + [[a, v b], [c, e]]` with one coordinate of `a, b, c, e` equal to a
/// basis element of `eps k`, each applied through the full
/// change-of-coordinates formula. Random pairs `(s, phi)` confirm that the
/// action is translation by that orbit, so its cosets are the classes.
pub fn tangent_lift_oracle(disp: &DisplayMatrix, budget: u64, require_nilpotent: bool) -> Result<TangentOracleReport> {
    let p = disp.p();
    let (h, d, len) = (disp.height(), disp.dimension(), disp.witt_len());
    let m = finite_field_degree(disp.ring(), p)
        .ok_or_else(|| Error::Precondition(format!("{} is not a finite field", disp.ring())))? as usize;
    let dim = h * h * len * m;
    let lift_count = (p as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if lift_count > budget as u128 {
        return Err(Error::BudgetExceeded { needed: lift_count, budget: budget as u128 });
    }
    let lift_count = lift_count as u64;
    let nilpotence = disp.is_nilpotent(None)?;
    let warning = match &nilpotence {
        Nilpotence::Nilpotent(_) => None,
        other if require_nilpotent => return Err(Error::Precondition(format!("display is not nilpotent: {other:?}"))),
        other => Some(format!("display is not known to be nilpotent ({other:?})")),
    };

    let ring = dual_numbers(disp.ring())?;
    let z = if m > 1 { Some(ring.var("z")?) } else { None };
    let basis: Vec<Elem> = (0..m).map(|l| z.as_ref().map_or_else(|| ring.one(), |z| z.pow(l as u64))).collect();
    let lay = Layout { p, h, len, m, eps: ring.var("eps")?, basis };
    let form = disp.matrix_form().map(&WittVector::zero(p, len, &ring), |w| w.map_components(|c| embed(c, &ring)))?;
    let base = DisplayMatrix::new(p, h, d, form.clone())?;

    let mut checks = check_square_zero(&lay)?;

    // generators of the group of changes congruent to the identity
    let block = len * m;
    let mut images: Vec<Vec<u64>> = Vec::new();
    for g in 0..dim {
        let mut params = vec![0; dim];
        params[g] = 1;
        images.push(act(&lay, &base, &form, &params, d)?);
    }

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    for _ in 0..8 {
        let s: Vec<u64> = (0..dim).map(|_| rng.gen_range(0..p)).collect();
        let params: Vec<u64> = (0..dim).map(|_| rng.gen_range(0..p)).collect();
        let lifted = DisplayMatrix::new(p, h, d, form.add(&lay.matrix(&s, h, h)?)?)?;
        let got = act(&lay, &lifted, &form, &params, d)?;
        let mut expected = s.clone();
        for (g, &c) in params.iter().enumerate() {
            for _ in 0..c {
                expected = lay.add(&expected, &images[g]);
            }
        }
        if got != expected {
            return Err(Error::Precondition("the change action is not a translation on lifts".into()));
        }
        checks += 1;
    }

    let orbit = closure(&lay, &images);
    let orbit_size = orbit.len() as u64;

    // closed form: last column, component 0, a k-multiple of w0(B) there
    let col = disp.last_column_w0();
    let mut multiples = HashSet::new();
    let k = disp.ring();
    for t in 0..p.pow(m as u32) {
        let mut lc = vec![0; m];
        decode(p, t, &mut lc);
        let lambda = field_elem(k, &lc, m)?;
        let mut key = Vec::with_capacity(h * m);
        for c in &col {
            key.extend(field_coords(&lambda.mul(c), p, m)?);
        }
        multiples.insert(key);
    }
    let in_orbit: HashSet<u64> = orbit.iter().copied().collect();
    let mut coords = vec![0; dim];
    let mut closed_form_agrees = true;
    for idx in 0..lift_count {
        lay.decode(idx, &mut coords);
        let key: Vec<u64> = (0..h).flat_map(|i| {
            let off = (i * h + h - 1) * block;
            coords[off..off + m].to_vec()
        }).collect();
        if multiples.contains(&key) != in_orbit.contains(&idx) {
            closed_form_agrees = false;
            break;
        }
    }

    let mut seen = vec![false; lift_count as usize];
    let orbit_coords: Vec<Vec<u64>> = orbit
        .iter()
        .map(|&u| {
            let mut c = vec![0; dim];
            lay.decode(u, &mut c);
            c
        })
        .collect();
    let mut representatives = Vec::new();
    for idx in 0..lift_count {
        if seen[idx as usize] {
            continue;
        }
        lay.decode(idx, &mut coords);
        representatives.push(lay.matrix(&coords, h, h)?);
        for u in &orbit_coords {
            seen[lay.index(&lay.add(&coords, u)) as usize] = true;
        }
    }
    Ok(TangentOracleReport {
        class_count: representatives.len() as u64,
        expected: p.pow((m * (h - 1)) as u32),
        lift_count,
        orbit_size,
        representatives,
        closed_form_agrees,
        checks,
        nilpotence,
        warning,
    })
}

fn decode(p: u64, mut idx: u64, out: &mut [u64]) {
    for c in out.iter_mut().rev() {
        *c = idx % p;
        idx /= p;
    }
}

fn field_elem(k: &Ring, coords: &[u64], m: usize) -> Result<Elem> {
    let z = if m > 1 { Some(k.var("z")?) } else { None };
    let mut out = k.zero();
    for (l, &c) in coords.iter().enumerate() {
        let b = z.as_ref().map_or_else(|| k.one(), |z| z.pow(l as u64));
        out = out.add(&b.scale_int(&BigInt::from(c)));
    }
    Ok(out)
}

fn field_coords(x: &Elem, p: u64, m: usize) -> Result<Vec<u64>> {
    let mut out = vec![0; m];
    for (mono, c) in x.terms() {
        let l = mono.exps().first().copied().unwrap_or(0) as usize;
        out[l] = (c % BigInt::from(p)).to_u64().unwrap_or(0);
    }
    Ok(out)
}

/// Applies `I + params` to `lifted` and returns the coordinates of the new
/// matrix form minus `form`.
fn act(lay: &Layout, lifted: &DisplayMatrix, form: &WittMatrix, params: &[u64], d: usize) -> Result<Vec<u64>> {
    let h = lay.h;
    let r = h - d;
    let block = lay.len * lay.m;
    let sizes = [(d, d), (d, r), (r, d), (r, r)];
    let mut blocks = Vec::new();
    let mut off = 0;
    for (rows, cols) in sizes {
        let n = rows * cols * block;
        blocks.push(lay.matrix(&params[off..off + n], rows, cols)?);
        off += n;
    }
    let zero = WittVector::zero(lay.p, lay.len, lay.eps.ring());
    let id = |n: usize| WittMatrix::identity(n, &zero);
    let phi = CoordinateChange::new(
        id(d).add(&blocks[0])?,
        blocks[1].clone(),
        blocks[2].clone(),
        id(r).add(&blocks[3])?,
    )?;
    let (out, _) = lifted.change_of_coords(&phi)?;
    lay.coords_of_matrix(&out.matrix_form().sub(form)?)
}

/// All sums of the generators, found by breadth-first search.
fn closure(lay: &Layout, gens: &[Vec<u64>]) -> Vec<u64> {
    let dim = lay.dim();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(0u64);
    queue.push_back(vec![0; dim]);
    let mut order = vec![0u64];
    while let Some(v) = queue.pop_front() {
        for g in gens {
            let w = lay.add(&v, g);
            let idx = lay.index(&w);
            if seen.insert(idx) {
                order.push(idx);
                queue.push_back(w);
            }
        }
    }
    order.sort_unstable();
    order
}

/// On `W_N(eps k)`: the universal sum polynomials are `x_n + y_n` plus
/// terms of degree at least two, so addition is componentwise; products
/// and Frobenius images vanish.
fn check_square_zero(lay: &Layout) -> Result<usize> {
    let mut checks = 0;
    if table_feasible(lay.p, lay.len) {
        let table = generate_universal_polynomials(lay.p, lay.len)?;
        for n in 0..lay.len {
            let s = table.get(WittOp::Sum, n).ok_or(Error::IndexOutOfRange { index: n, len: table.len() })?;
            let linear = table.x(n).add(&table.y(n));
            let rest = s.sub(&linear);
            let low = rest.terms().keys().any(|mono| mono.exps().iter().sum::<i32>() < 2);
            if low {
                return Err(Error::Precondition(format!("S_{n} has low-degree terms beyond x_{n} + y_{n}")));
            }
            checks += 1;
        }
    }
    let gens: Vec<Vec<u64>> = (0..lay.len * lay.m)
        .map(|g| {
            let mut v = vec![0; lay.len * lay.m];
            v[g] = 1;
            v
        })
        .collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let mut samples: Vec<Vec<u64>> = gens.clone();
    for _ in 0..4 {
        samples.push((0..lay.len * lay.m).map(|_| rng.gen_range(0..lay.p)).collect());
    }
    for x in &samples {
        for y in &samples {
            let (wx, wy) = (lay.witt(x)?, lay.witt(y)?);
            let mut sum = vec![0; x.len()];
            lay.coords_of(&wx.add(&wy), &mut sum)?;
            let ok = sum == lay.add(x, y) && wx.mul(&wy).is_zero() && wx.frobenius()?.is_zero();
            if !ok {
                return Err(Error::Precondition("W(eps k) is not a square-zero ideal killed by f".into()));
            }
            checks += 1;
        }
    }
    Ok(checks)
}

/// Variable-to-polynomial table of a chart, for serialization.
pub fn chart_table(map: &ChartMap) -> BTreeMap<String, String> {
    map.coords.iter().enumerate().map(|(i, c)| (format!("x{}", i + 1), c.to_string())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::display::corpus::{lubin_tate, lubin_tate_ring};

    fn swap(p: u64, len: usize) -> DisplayMatrix {
        let r = Ring::integers_mod(p).unwrap();
        let zero = WittVector::zero(p, len, &r);
        let one = WittVector::one(p, len, &r);
        DisplayMatrix::new(p, 2, 1, WittMatrix::from_rows(vec![vec![zero.clone(), one.clone()], vec![one, zero]]).unwrap())
            .unwrap()
    }

    #[test]
    fn points_of_examples() {
        let r = lubin_tate_ring(3, 3, 4).unwrap();
        let pt = projective_point(&lubin_tate(3, 3, 2, &r).unwrap()).unwrap();
        assert_eq!(pt.to_string(), "[1 : u2 : u1]");
        let pt = projective_point(&swap(5, 2)).unwrap();
        assert_eq!(pt.to_string(), "[1 : 0]");
    }

    #[test]
    fn etale_examples() {
        for h in [2, 3, 4] {
            let r = lubin_tate_ring(3, h, 4).unwrap();
            let pt = projective_point(&lubin_tate(3, h, 2, &r).unwrap()).unwrap();
            let single = jacobian_etale_check(&pt.chart(0).unwrap()).unwrap();
            assert!(single.etale);
            let all = etale_all_charts(&pt).unwrap();
            assert_eq!(all.charts.len(), 1);
            assert_eq!(all.etale, single.etale);
        }
        let r = lubin_tate_ring(3, 2, 4).unwrap();
        let u = r.var("u1").unwrap();
        assert!(!jacobian_etale_check(&ChartMap::new(0, vec![u.mul(&u)]).unwrap()).unwrap().etale);
        assert!(!jacobian_etale_check(&ChartMap::new(0, vec![r.from_int(2)]).unwrap()).unwrap().etale);
        let r3 = lubin_tate_ring(3, 3, 4).unwrap();
        let rep = jacobian_etale_check(&ChartMap::new(0, vec![r3.var("u1").unwrap()]).unwrap()).unwrap();
        assert!(!rep.etale && rep.reason.is_some());
    }

    #[test]
    fn oracle_swap_p2() {
        let rep = tangent_lift_oracle(&swap(2, 2), DEFAULT_BUDGET, true).unwrap();
        assert_eq!(rep.class_count, 2);
        assert_eq!(rep.expected, 2);
        assert!(rep.closed_form_agrees);
        assert!(rep.representatives[0].is_zero());
        assert_eq!(rep.orbit_size * rep.class_count, rep.lift_count);
    }

    #[test]
    fn oracle_budget_and_field_checks() {
        assert!(matches!(tangent_lift_oracle(&swap(2, 2), 10, true), Err(Error::BudgetExceeded { .. })));
        let r = Ring::parse("Z/9").unwrap();
        let zero = WittVector::zero(3, 1, &r);
        let one = WittVector::one(3, 1, &r);
        let d = DisplayMatrix::new(3, 2, 1, WittMatrix::from_rows(vec![vec![zero.clone(), one.clone()], vec![one, zero]]).unwrap()).unwrap();
        assert!(matches!(tangent_lift_oracle(&d, DEFAULT_BUDGET, false), Err(Error::Precondition(_))));
    }

    #[test]
    fn oracle_larger_cases() {
        for (p, h, len, field) in [(3, 2, 2, "Z/3"), (2, 3, 2, "Z/2"), (2, 2, 1, "GF(2^2)")] {
            let k = Ring::parse(field).unwrap();
            let us: Vec<Elem> = (1..h).map(|_| k.zero()).collect();
            let d = DisplayMatrix::new(p, h, h - 1, crate::display::corpus::lubin_tate_matrix(p, len, &us).unwrap()).unwrap();
            let rep = tangent_lift_oracle(&d, DEFAULT_BUDGET, true).unwrap();
            assert_eq!(rep.class_count, rep.expected);
            assert!(rep.closed_form_agrees);
        }
    }
}
