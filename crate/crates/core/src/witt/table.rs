//! Universal Witt polynomials `S_n`, `P_n`, `Neg_n`, `F_n` with integer
//! coefficients, generated from the ghost recursion and cached per prime.

use std::collections::HashMap;
use std::path::Path;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{Elem, Ring, RingDescriptor};
use crate::serial::ElemJson;

/// Largest index `n` for which `S_n`, `P_n`, `Neg_n`, `F_n` may be generated.
pub const MAX_TABLE_INDEX: usize = 4;
/// Generation is refused when `p^n` exceeds this; the polynomials grow
/// roughly like the ghost degree `p^n` to the power of the variable count.
pub const MAX_GHOST_DEGREE: u64 = 27;
const TABLE_VARS: usize = MAX_TABLE_INDEX + 2;
const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WittOp {
    Sum,
    Product,
    Negation,
    Frobenius,
}

impl WittOp {
    pub const ALL: [WittOp; 4] = [WittOp::Sum, WittOp::Product, WittOp::Negation, WittOp::Frobenius];
}

#[derive(Clone, Debug)]
pub struct UniversalPolynomialTable {
    p: u64,
    ring: Ring,
    polys: HashMap<WittOp, Vec<Elem>>,
}

fn table_ring() -> Ring {
    static RING: OnceLock<Ring> = OnceLock::new();
    RING.get_or_init(|| {
        let mut vars: Vec<String> = (0..TABLE_VARS).map(|i| format!("x{i}")).collect();
        vars.extend((0..TABLE_VARS).map(|i| format!("y{i}")));
        Ring::new(RingDescriptor::Polynomial { base: Box::new(RingDescriptor::Integers), variables: vars }).unwrap()
    })
    .clone()
}

/// `c_k = (g_k - sum_{i<k} p^i c_i^(p^(k-i))) / p^k`.
fn next_component(p: u64, prev: &[Elem], target: &Elem) -> Result<Elem> {
    let k = prev.len();
    let mut acc = target.clone();
    let mut pi = BigInt::from(1);
    for (i, c) in prev.iter().enumerate() {
        acc = acc.sub(&c.pow(p.pow((k - i) as u32)).scale_int(&pi));
        pi *= p;
    }
    acc.div_exact_int(&pi)
}

impl UniversalPolynomialTable {
    fn empty(p: u64) -> Self {
        let polys = WittOp::ALL.iter().map(|&op| (op, Vec::new())).collect();
        UniversalPolynomialTable { p, ring: table_ring(), polys }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Number of indices available for every operation.
    pub fn len(&self) -> usize {
        self.polys.values().map(Vec::len).min().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn x(&self, i: usize) -> Elem {
        self.ring.gen(i)
    }

    pub fn y(&self, i: usize) -> Elem {
        self.ring.gen(TABLE_VARS + i)
    }

    pub fn get(&self, op: WittOp, n: usize) -> Option<&Elem> {
        self.polys.get(&op).and_then(|v| v.get(n))
    }

    pub fn polys(&self, op: WittOp) -> &[Elem] {
        &self.polys[&op]
    }

    fn ghost(&self, var: impl Fn(usize) -> Elem, k: usize) -> Elem {
        let mut acc = self.ring.zero();
        let mut pi = BigInt::from(1);
        for i in 0..=k {
            acc = acc.add(&var(i).pow(self.p.pow((k - i) as u32)).scale_int(&pi));
            pi *= self.p;
        }
        acc
    }

    fn extend_to(&mut self, n_max: usize) -> Result<()> {
        let p = self.p;
        while self.len() <= n_max {
            let k = self.len();
            let wx = self.ghost(|i| self.x(i), k);
            let wy = self.ghost(|i| self.y(i), k);
            let wx_next = self.ghost(|i| self.x(i), k + 1);
            let targets = [
                (WittOp::Sum, wx.add(&wy)),
                (WittOp::Product, wx.mul(&wy)),
                (WittOp::Negation, wx.neg()),
                (WittOp::Frobenius, wx_next),
            ];
            for (op, target) in targets {
                let prev = &self.polys[&op];
                if prev.len() > k {
                    continue;
                }
                let c = next_component(p, prev, &target)?;
                self.polys.get_mut(&op).unwrap().push(c);
            }
        }
        Ok(())
    }

    /// Writes the table as versioned JSON.
    pub fn save_json(&self, path: &Path) -> Result<()> {
        let doc = TableJson {
            version: FORMAT_VERSION,
            p: self.p,
            ring: self.ring.to_string(),
            polys: WittOp::ALL
                .iter()
                .map(|op| (*op, self.polys[op].iter().map(ElemJson::from_elem).collect()))
                .collect(),
        };
        let text = serde_json::to_string(&doc).map_err(|e| Error::Parse(e.to_string()))?;
        std::fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    pub fn load_json(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let doc: TableJson = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.version != FORMAT_VERSION {
            return Err(Error::Parse(format!("unsupported table version {}", doc.version)));
        }
        let ring = table_ring();
        if doc.ring != ring.to_string() {
            return Err(Error::Parse("table ring does not match".into()));
        }
        let mut table = Self::empty(doc.p);
        for (op, list) in doc.polys {
            let elems = list.iter().map(|e| e.to_elem(&ring)).collect::<Result<Vec<_>>>()?;
            table.polys.insert(op, elems);
        }
        Ok(table)
    }
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    version: u32,
    p: u64,
    ring: String,
    polys: Vec<(WittOp, Vec<ElemJson>)>,
}

/// Whether polynomials up to index `n` are within the generation limits.
pub fn table_feasible(p: u64, n: usize) -> bool {
    n <= MAX_TABLE_INDEX && p.checked_pow(n as u32).is_some_and(|d| d <= MAX_GHOST_DEGREE)
}

fn cache() -> &'static RwLock<HashMap<u64, Arc<UniversalPolynomialTable>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<UniversalPolynomialTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Returns the cached table for `p` covering indices `0..=n_max`, extending
/// it if needed. Extension happens under the write lock, so each polynomial
/// is computed once; readers keep their `Arc` snapshots.
pub fn generate_universal_polynomials(p: u64, n_max: usize) -> Result<Arc<UniversalPolynomialTable>> {
    if !crate::ring::is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    if !table_feasible(p, n_max) {
        return Err(Error::ResourceLimit(format!("universal polynomials of index {n_max} at p = {p}")));
    }
    if let Some(t) = cache().read().unwrap().get(&p) {
        if t.len() > n_max {
            return Ok(t.clone());
        }
    }
    let mut guard = cache().write().unwrap();
    let mut table = match guard.get(&p) {
        Some(t) if t.len() > n_max => return Ok(t.clone()),
        Some(t) => (**t).clone(),
        None => UniversalPolynomialTable::empty(p),
    };
    table.extend_to(n_max)?;
    let table = Arc::new(table);
    guard.insert(p, table.clone());
    Ok(table)
}

/// Installs a table loaded from disk if it extends the cached one.
pub fn install_table(table: UniversalPolynomialTable) {
    let mut guard = cache().write().unwrap();
    let better = guard.get(&table.p).is_none_or(|t| t.len() < table.len());
    if better {
        guard.insert(table.p, Arc::new(table));
    }
}

/// Snapshots of every cached table, by prime.
pub fn cached_tables() -> Vec<Arc<UniversalPolynomialTable>> {
    let guard = cache().read().unwrap();
    let mut tables: Vec<_> = guard.values().cloned().collect();
    tables.sort_by_key(|t| t.p);
    tables
}

/// Evaluates a table polynomial at `x_i = xs[i]`, `y_i = ys[i]`.
pub(crate) fn evaluate(poly: &Elem, xs: &[Elem], ys: &[Elem], target: &Ring) -> Elem {
    let mut cache: HashMap<(usize, i32), Elem> = HashMap::new();
    let mut acc = target.zero();
    for (m, c) in poly.terms() {
        let mut term = target.from_int(c.clone());
        for (v, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let base = if v < TABLE_VARS { &xs[v] } else { &ys[v - TABLE_VARS] };
            let pw = cache.entry((v, e)).or_insert_with(|| base.pow(e as u64)).clone();
            term = term.mul(&pw);
            if term.is_zero() {
                break;
            }
        }
        acc = acc.add(&term);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse::parse_element;

    fn poly(s: &str) -> Elem {
        parse_element(&table_ring(), s).unwrap()
    }

    #[test]
    fn first_sum_and_product() {
        for p in [2, 3, 5] {
            let t = generate_universal_polynomials(p, 1).unwrap();
            assert_eq!(t.get(WittOp::Sum, 0).unwrap(), &poly("x0 + y0"));
            assert_eq!(t.get(WittOp::Product, 0).unwrap(), &poly("x0*y0"));
        }
        let t = generate_universal_polynomials(2, 1).unwrap();
        assert_eq!(t.get(WittOp::Sum, 1).unwrap(), &poly("x1 + y1 - x0*y0"));
        let t = generate_universal_polynomials(3, 1).unwrap();
        assert_eq!(t.get(WittOp::Sum, 1).unwrap(), &poly("x1 + y1 - x0^2*y0 - x0*y0^2"));
    }

    #[test]
    fn negation_at_two_is_not_sign_flip() {
        let t = generate_universal_polynomials(2, 1).unwrap();
        assert_eq!(t.get(WittOp::Negation, 0).unwrap(), &poly("-x0"));
        // -(x0, x1) at p = 2: second component -x1 - x0^2
        assert_eq!(t.get(WittOp::Negation, 1).unwrap(), &poly("-x1 - x0^2"));
    }

    #[test]
    fn frobenius_first_component() {
        let t = generate_universal_polynomials(3, 0).unwrap();
        assert_eq!(t.get(WittOp::Frobenius, 0).unwrap(), &poly("x0^3 + 3*x1"));
    }

    #[test]
    fn json_round_trip() {
        let t = generate_universal_polynomials(2, 2).unwrap();
        let dir = std::env::temp_dir().join(format!("witt-table-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("p2.json");
        t.save_json(&path).unwrap();
        let back = UniversalPolynomialTable::load_json(&path).unwrap();
        for op in WittOp::ALL {
            assert_eq!(back.polys(op), &t.polys(op)[..back.polys(op).len()]);
            assert_eq!(back.polys(op).len(), t.polys(op).len());
        }
        std::fs::remove_dir_all(&dir).ok();
    }
}
