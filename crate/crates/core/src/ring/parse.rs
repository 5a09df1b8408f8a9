//! Text syntax for rings and elements.
//!
//! Rings: `Z`, `Q`, `Z/9`, `GF(2^2)`, `GF(2^2;z^2+z+1)`, followed by any
//! number of suffixes `[u1,u2]` (polynomial variables), `<a,b>` (Laurent
//! variables) and `/(3,u1)^4` (quotient by a power of an ideal generated by
//! a prime and variables).
//!
//! Elements: integer and rational literals, variables, `+ - * ^ /` and
//! parentheses. Division is only allowed by an expression that is a unit.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::descriptor::{IdealGenerator, RingDescriptor};
use super::{Elem, Ring};
use crate::error::{Error, Result};

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { s: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in `{}`", self.pos, String::from_utf8_lossy(self.s)))
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn small(&mut self) -> Result<u64> {
        self.integer()?.to_u64().ok_or_else(|| self.error("integer too large"))
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
            self.pos += 1;
        }
        if start == self.pos || self.s[start].is_ascii_digit() {
            self.pos = start;
            return Err(self.error("expected identifier"));
        }
        Ok(String::from_utf8(self.s[start..self.pos].to_vec()).unwrap())
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

pub fn parse_descriptor(text: &str) -> Result<RingDescriptor> {
    let mut c = Cursor::new(text);
    let mut desc = match c.peek() {
        Some(b'Q') => {
            c.pos += 1;
            RingDescriptor::Rationals
        }
        Some(b'Z') => {
            c.pos += 1;
            if c.peek() == Some(b'/') && c.s.get(c.pos + 1).is_some_and(|b| b.is_ascii_digit()) {
                c.pos += 1;
                RingDescriptor::IntegersMod { modulus: c.integer()? }
            } else {
                RingDescriptor::Integers
            }
        }
        Some(b'G') => {
            let kw = c.ident()?;
            if kw != "GF" {
                return Err(c.error("unknown ring"));
            }
            c.expect(b'(')?;
            let p = c.small()?;
            c.expect(b'^')?;
            let m = c.small()? as u32;
            let d = if c.eat(b';') {
                let start = c.pos;
                while c.pos < c.s.len() && c.s[c.pos] != b')' {
                    c.pos += 1;
                }
                let poly_text = std::str::from_utf8(&c.s[start..c.pos]).unwrap();
                let modulus = parse_univariate(poly_text, p)?;
                if modulus.len() != m as usize + 1 {
                    return Err(Error::Parse(format!("modulus `{poly_text}` does not have degree {m}")));
                }
                RingDescriptor::FiniteField { p, degree: m, modulus }
            } else {
                RingDescriptor::finite_field(p, m)?
            };
            c.expect(b')')?;
            d
        }
        _ => return Err(c.error("expected Z, Q, Z/m or GF(p^m)")),
    };
    loop {
        match c.peek() {
            None => break,
            Some(b'[') | Some(b'<') => {
                let laurent = c.eat(b'<');
                if !laurent {
                    c.expect(b'[')?;
                }
                let mut vars = vec![c.ident()?];
                while c.eat(b',') {
                    vars.push(c.ident()?);
                }
                c.expect(if laurent { b'>' } else { b']' })?;
                desc = if laurent {
                    RingDescriptor::Laurent { base: Box::new(desc), variables: vars }
                } else {
                    RingDescriptor::Polynomial { base: Box::new(desc), variables: vars }
                };
            }
            Some(b'/') => {
                c.pos += 1;
                c.expect(b'(')?;
                let mut gens = Vec::new();
                loop {
                    if c.peek().is_some_and(|b| b.is_ascii_digit()) {
                        gens.push(IdealGenerator::Prime(c.small()?));
                    } else {
                        gens.push(IdealGenerator::Variable(c.ident()?));
                    }
                    if !c.eat(b',') {
                        break;
                    }
                }
                c.expect(b')')?;
                c.expect(b'^')?;
                let exponent = c.small()? as u32;
                desc = RingDescriptor::QuotientByIdealPower { base: Box::new(desc), generators: gens, exponent };
            }
            Some(_) => return Err(c.error("unexpected character")),
        }
    }
    Ok(desc)
}

fn parse_univariate(text: &str, p: u64) -> Result<Vec<u64>> {
    let ring = Ring::new(RingDescriptor::Polynomial {
        base: Box::new(RingDescriptor::integers_mod(p)),
        variables: vec!["z".into()],
    })?;
    let e = parse_element(&ring, text)?;
    let deg = e.degree().unwrap_or(0).max(0) as usize;
    let mut out = vec![0u64; deg + 1];
    for (m, c) in e.terms() {
        out[m.0[0] as usize] = c.to_u64().unwrap();
    }
    Ok(out)
}

pub fn parse_element(ring: &Ring, text: &str) -> Result<Elem> {
    let mut c = Cursor::new(text);
    let e = expr(&mut c, ring)?;
    if !c.at_end() {
        return Err(c.error("trailing input"));
    }
    Ok(e)
}

fn expr(c: &mut Cursor, ring: &Ring) -> Result<Elem> {
    let mut acc = if c.eat(b'-') { term(c, ring)?.neg() } else { term(c, ring)? };
    loop {
        if c.eat(b'+') {
            acc = acc.add(&term(c, ring)?);
        } else if c.eat(b'-') {
            acc = acc.sub(&term(c, ring)?);
        } else {
            return Ok(acc);
        }
    }
}

fn term(c: &mut Cursor, ring: &Ring) -> Result<Elem> {
    let mut acc = power(c, ring)?;
    loop {
        if c.eat(b'*') {
            acc = acc.mul(&power(c, ring)?);
        } else if c.eat(b'/') {
            let d = power(c, ring)?;
            acc = acc.mul(&d.invert()?);
        } else {
            return Ok(acc);
        }
    }
}

fn power(c: &mut Cursor, ring: &Ring) -> Result<Elem> {
    let base = atom(c, ring)?;
    if c.eat(b'^') {
        let neg = c.eat(b'-');
        let e = c.small()?;
        let x = base.pow(e);
        return if neg { x.invert() } else { Ok(x) };
    }
    Ok(base)
}

fn atom(c: &mut Cursor, ring: &Ring) -> Result<Elem> {
    match c.peek() {
        Some(b'(') => {
            c.pos += 1;
            let e = expr(c, ring)?;
            c.expect(b')')?;
            Ok(e)
        }
        Some(b'-') => {
            c.pos += 1;
            Ok(atom(c, ring)?.neg())
        }
        Some(b) if b.is_ascii_digit() => Ok(ring.from_int(c.integer()?)),
        Some(_) => {
            let name = c.ident()?;
            ring.var(&name).map_err(|_| c.error(&format!("unknown variable `{name}`")))
        }
        None => Err(c.error("unexpected end of input")),
    }
}

/// Splits `[a, b, c]` (brackets optional) at top-level commas.
pub fn split_list(text: &str) -> Vec<String> {
    let t = text.trim();
    let t = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')).unwrap_or(t);
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in t.chars() {
        match ch {
            '(' | '[' => {
                depth += 1;
                cur.push(ch);
            }
            ')' | ']' => {
                depth -= 1;
                cur.push(ch);
            }
            ',' if depth == 0 => out.push(std::mem::take(&mut cur).trim().to_string()),
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}
