use super::*;

fn ring(s: &str) -> Ring {
    Ring::parse(s).unwrap()
}

fn el(r: &Ring, s: &str) -> Elem {
    parse::parse_element(r, s).unwrap()
}

#[test]
fn modular_addition() {
    let r = ring("Z/7");
    assert_eq!(&r.from_int(3) + &r.from_int(5), r.from_int(1));
}

#[test]
fn quotient_relation_kills_square() {
    let r = ring("Z[u1]/(u1)^2");
    let u = r.var("u1").unwrap();
    assert!((&u * &u).is_zero());
}

#[test]
fn polynomial_identity() {
    let r = ring("Z[x]");
    let x = r.var("x").unwrap();
    let one = r.one();
    assert_eq!(&(&x + &one) * &(&x - &one), el(&r, "x^2 - 1"));
}

#[test]
fn inverses() {
    let r = ring("Z/9");
    assert_eq!(r.from_int(2).invert().unwrap(), r.from_int(5));
    let r = ring("Z/9[u1]/(u1)^3");
    assert!(!r.var("u1").unwrap().is_unit());
    let r = ring("Q[u1]/(u1)^3");
    let x = el(&r, "1 + u1");
    assert_eq!(x.invert().unwrap(), el(&r, "1 - u1 + u1^2"));
    assert!(r.zero().invert().is_err());
}

#[test]
fn mixed_prime_truncation() {
    // (p, u)^2 over Z/9 with p = 3: 3u = 0, u^2 = 0, 3 survives
    let r = ring("Z/9[u]/(3,u)^2");
    let u = r.var("u").unwrap();
    assert!((&r.from_int(3) * &u).is_zero());
    assert!(!r.from_int(3).is_zero());
    assert!(r.from_int(9).is_zero());
    let x = el(&r, "2 + u + 3");
    let y = x.invert().unwrap();
    assert!((&x * &y).is_one());
}

#[test]
fn frobenius_power_examples() {
    let r = ring("Z/2[u1,u2]");
    let x = el(&r, "u1 + u2");
    assert_eq!(x.frobenius_power().unwrap(), el(&r, "u1^2 + u2^2"));
    let f4 = ring("GF(2^2;z^2+z+1)");
    let z = f4.var("z").unwrap();
    assert_eq!(z.frobenius_power().unwrap(), el(&f4, "z + 1"));
    let f5 = ring("Z/5");
    for c in 0..5 {
        assert_eq!(f5.from_int(c).frobenius_power().unwrap(), f5.from_int(c));
    }
    assert!(ring("Z/4").from_int(1).frobenius_power().is_err());
}

#[test]
fn finite_field_inverse() {
    let f9 = ring("GF(3^2)");
    let z = f9.var("z").unwrap();
    let x = &z + &f9.one();
    let y = x.invert().unwrap();
    assert!((&x * &y).is_one());
}

#[test]
fn substitution() {
    let r = ring("Z[u1]");
    let x = el(&r, "u1^2 + 1");
    let mut a = BTreeMap::new();
    a.insert("u1".to_string(), r.zero());
    assert_eq!(x.substitute(&a, &r).unwrap(), r.one());

    let r2 = ring("Z[u1,u2]");
    let z = Ring::integers();
    let mut a = BTreeMap::new();
    a.insert("u1".into(), z.from_int(1));
    a.insert("u2".into(), z.from_int(2));
    assert_eq!(el(&r2, "u1*u2").substitute(&a, &z).unwrap(), z.from_int(2));
    a.remove("u2");
    assert!(matches!(el(&r2, "u1").substitute(&a, &z), Err(Error::MissingVariable(_))));

    let p = 3;
    let mut sigma = BTreeMap::new();
    sigma.insert("u1".into(), r.var("u1").unwrap().pow(p));
    let u = r.var("u1").unwrap();
    let twice = u.substitute(&sigma, &r).unwrap().substitute(&sigma, &r).unwrap();
    assert_eq!(twice, u.pow(p * p));
}

#[test]
fn laurent_units() {
    let r = ring("Z/9<a,b>[x]");
    let a = r.var("a").unwrap();
    let ai = a.invert().unwrap();
    assert!((&a * &ai).is_one());
    assert!(!r.var("x").unwrap().is_unit());
    assert_eq!(el(&r, "a^-2 * a^3"), a);
}

#[test]
fn ring_mismatch_is_an_error() {
    let a = ring("Z/7").one();
    let b = ring("Z/5").one();
    assert!(matches!(a.try_add(&b), Err(Error::RingMismatch { .. })));
}

#[test]
fn descriptor_round_trip() {
    for s in ["Z", "Q", "Z/9", "GF(2^2;z^2+z+1)", "Z/9[u1,u2]/(3,u1)^4", "GF(3^2;z^2+1)[u]/(u)^2", "Z/4<a>[x]"] {
        assert_eq!(RingDescriptor::parse(s).unwrap().to_string(), s);
    }
    assert!(Ring::parse("GF(2^2;z^2+1)").is_err());
    assert!(Ring::parse("Z/1").is_err());
    assert!(Ring::parse("Q[u]/(3,u)^2").is_err());
}

#[test]
fn mod_p_reduction() {
    let r = ring("Z/9[u1,u2]/(3,u1)^4");
    let rp = r.mod_p(3).unwrap();
    assert_eq!(rp.to_string(), "Z/3[u1,u2]/(u1)^4");
    assert_eq!(rp.prime_characteristic(), Some(3));
    assert_eq!(r.p_exponent(3), Some(2));
}

#[test]
fn rational_canonical_form() {
    let q = Ring::rationals();
    let a = q.from_rational(2, 4).unwrap();
    let b = q.from_rational(-1, -2).unwrap();
    assert_eq!(a, b);
    assert!((&a - &b).is_zero());
}
