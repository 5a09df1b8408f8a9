//! JSON interchange. Integers are written as decimal strings.

pub mod bigint_string {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::dieudonne::DieudonneModule;
use crate::display::{CoordinateChange, DisplayMatrix};
use crate::error::{Error, Result};
use crate::matrix::{ElemMatrix, WittMatrix};
use crate::ring::poly::{Monomial, Terms};
use crate::ring::{Elem, Ring};
use crate::witt::WittVector;

/// Term-list form of an element: exponent vectors with decimal coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElemJson {
    pub terms: Vec<(Vec<i32>, String)>,
    #[serde(default = "one_string", skip_serializing_if = "is_one_string")]
    pub den: String,
}

fn one_string() -> String {
    "1".into()
}

fn is_one_string(s: &String) -> bool {
    s == "1"
}

impl ElemJson {
    pub fn from_elem(x: &Elem) -> Self {
        ElemJson {
            terms: x.terms().iter().map(|(m, c)| (m.exps().to_vec(), c.to_string())).collect(),
            den: x.denominator().to_string(),
        }
    }

    pub fn to_elem(&self, ring: &Ring) -> Result<Elem> {
        let mut num = Terms::new();
        for (exps, c) in &self.terms {
            if exps.len() != ring.nvars() {
                return Err(Error::Parse(format!("exponent vector {exps:?} does not fit {ring}")));
            }
            let c: BigInt = c.parse().map_err(|_| Error::Parse(format!("bad integer `{c}`")))?;
            crate::ring::poly::add_term(&mut num, Monomial(exps.iter().copied().collect()), c);
        }
        let den: BigInt = self.den.parse().map_err(|_| Error::Parse(format!("bad integer `{}`", self.den)))?;
        Ok(ring.from_terms(num, den))
    }
}

/// An element as read from a document: an expression, an integer or a term
/// list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemInput {
    Int(i64),
    Expr(String),
    Terms(ElemJson),
}

impl ElemInput {
    pub fn to_elem(&self, ring: &Ring) -> Result<Elem> {
        match self {
            ElemInput::Int(n) => Ok(ring.from_int(*n)),
            ElemInput::Expr(s) => crate::ring::parse::parse_element(ring, s),
            ElemInput::Terms(t) => t.to_elem(ring),
        }
    }
}

impl From<&Elem> for ElemInput {
    fn from(x: &Elem) -> Self {
        ElemInput::Terms(ElemJson::from_elem(x))
    }
}

/// A Witt vector as its list of components.
pub type WittComponents = Vec<ElemInput>;

/// A matrix of Witt vectors, row by row.
pub type WittMatrixJson = Vec<Vec<WittComponents>>;

/// A matrix of ring elements, row by row.
pub type ElemMatrixJson = Vec<Vec<ElemInput>>;

pub fn witt_components(x: &WittVector) -> WittComponents {
    x.components().iter().map(ElemInput::from).collect()
}

pub fn parse_witt(p: u64, ring: &Ring, comps: &[ElemInput]) -> Result<WittVector> {
    WittVector::new(p, comps.iter().map(|c| c.to_elem(ring)).collect::<Result<_>>()?)
}

pub fn witt_matrix_json(m: &WittMatrix) -> WittMatrixJson {
    m.to_rows().iter().map(|row| row.iter().map(witt_components).collect()).collect()
}

pub fn parse_witt_matrix(p: u64, ring: &Ring, rows: &WittMatrixJson) -> Result<WittMatrix> {
    let rows = rows
        .iter()
        .map(|row| row.iter().map(|c| parse_witt(p, ring, c)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    WittMatrix::from_rows(rows)
}

pub fn elem_matrix_json(m: &ElemMatrix) -> ElemMatrixJson {
    m.to_rows().iter().map(|row| row.iter().map(ElemInput::from).collect()).collect()
}

pub fn parse_elem_matrix(ring: &Ring, rows: &ElemMatrixJson) -> Result<ElemMatrix> {
    let rows = rows
        .iter()
        .map(|row| row.iter().map(|c| c.to_elem(ring)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    ElemMatrix::from_rows(rows)
}

/// Coefficient table of an element over `Q`: exponent vector to reduced
/// rational.
pub fn rational_table(x: &Elem) -> Vec<(Vec<i32>, String)> {
    x.terms()
        .iter()
        .map(|(m, c)| {
            let g = c.gcd(x.denominator());
            let (num, den) = (c / &g, x.denominator() / &g);
            let q = if den.is_one() { num.to_string() } else { format!("{num}/{den}") };
            (m.exps().to_vec(), q)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WittDoc {
    pub p: u64,
    pub ring: String,
    pub components: WittComponents,
}

impl WittDoc {
    pub fn from_witt(x: &WittVector) -> Self {
        WittDoc { p: x.p(), ring: x.ring().to_string(), components: witt_components(x) }
    }

    pub fn to_witt(&self) -> Result<WittVector> {
        parse_witt(self.p, &Ring::parse(&self.ring)?, &self.components)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DisplayDoc {
    pub p: u64,
    pub h: usize,
    pub d: usize,
    pub ring: String,
    pub matrix: WittMatrixJson,
}

impl DisplayDoc {
    pub fn from_display(disp: &DisplayMatrix) -> Self {
        DisplayDoc {
            p: disp.p(),
            h: disp.height(),
            d: disp.dimension(),
            ring: disp.ring().to_string(),
            matrix: witt_matrix_json(disp.matrix_form()),
        }
    }

    pub fn to_display(&self) -> Result<DisplayMatrix> {
        let ring = Ring::parse(&self.ring)?;
        DisplayMatrix::new(self.p, self.h, self.d, parse_witt_matrix(self.p, &ring, &self.matrix)?)
    }
}

/// The blocks of a coordinate change. The ring and prime come from the
/// display it acts on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChangeDoc {
    pub a: WittMatrixJson,
    pub b: WittMatrixJson,
    pub c: WittMatrixJson,
    pub e: WittMatrixJson,
}

impl ChangeDoc {
    pub fn from_change(phi: &CoordinateChange) -> Self {
        ChangeDoc {
            a: witt_matrix_json(phi.a()),
            b: witt_matrix_json(phi.b()),
            c: witt_matrix_json(phi.c()),
            e: witt_matrix_json(phi.e()),
        }
    }

    pub fn to_change(&self, p: u64, ring: &Ring) -> Result<CoordinateChange> {
        CoordinateChange::new(
            parse_witt_matrix(p, ring, &self.a)?,
            parse_witt_matrix(p, ring, &self.b)?,
            parse_witt_matrix(p, ring, &self.c)?,
            parse_witt_matrix(p, ring, &self.e)?,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DieudonneDoc {
    pub p: u64,
    pub k: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub h: usize,
    #[serde(rename = "F_matrix")]
    pub f_matrix: WittMatrixJson,
    #[serde(rename = "V_matrix")]
    pub v_matrix: WittMatrixJson,
}

impl DieudonneDoc {
    pub fn from_module(m: &DieudonneModule) -> Self {
        DieudonneDoc {
            p: m.p(),
            k: m.field().to_string(),
            n: m.witt_len(),
            h: m.rank(),
            f_matrix: witt_matrix_json(m.f_matrix()),
            v_matrix: witt_matrix_json(m.v_matrix()),
        }
    }

    pub fn to_module(&self) -> Result<DieudonneModule> {
        let k = Ring::parse(&self.k)?;
        let m = DieudonneModule::new(
            parse_witt_matrix(self.p, &k, &self.f_matrix)?,
            parse_witt_matrix(self.p, &k, &self.v_matrix)?,
        )?;
        if m.rank() != self.h || m.witt_len() != self.n {
            return Err(Error::Shape(format!("expected rank {} and length {}", self.h, self.n)));
        }
        Ok(m)
    }
}
