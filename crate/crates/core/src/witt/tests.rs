use super::*;

fn wv(p: u64, ring: &Ring, comps: &[&str]) -> WittVector {
    WittVector::parse(p, ring, comps).unwrap()
}

#[test]
fn sum_and_product_over_integers() {
    let z = Ring::integers();
    for route in [Route::Ghost, Route::Table] {
        let x = wv(2, &z, &["1", "0"]);
        assert_eq!(x.add_via(&x, route).unwrap(), wv(2, &z, &["2", "-1"]));
        let y = wv(2, &z, &["0", "1"]);
        assert_eq!(y.mul_via(&y, route).unwrap(), wv(2, &z, &["0", "2"]));
    }
}

#[test]
fn ghost_of_third_component() {
    let z = Ring::integers();
    assert_eq!(wv(3, &z, &["0", "0", "1"]).ghost(2).unwrap(), z.from_int(9));
    assert!(wv(3, &z, &["0", "0", "1"]).ghost(3).is_err());
}

#[test]
fn frobenius_of_verschiebung_of_one() {
    let z = Ring::integers();
    for route in [Route::Ghost, Route::Table] {
        let x = WittVector::one(3, 3, &z).verschiebung().frobenius_via(route).unwrap();
        assert_eq!(x, wv(3, &z, &["3", "-8"]));
    }
}

#[test]
fn characteristic_p_frobenius_matches_general_formula() {
    let r = Ring::parse("Z/2[u]").unwrap();
    let x = wv(2, &r, &["u", "u"]);
    let fast = x.frobenius().unwrap();
    assert_eq!(fast, wv(2, &r, &["u^2", "u^2"]));
    assert_eq!(fast.truncate(1).unwrap(), x.frobenius_via(Route::Ghost).unwrap());
}

#[test]
fn integers_embed() {
    let z = Ring::integers();
    assert_eq!(WittVector::from_int(2, 2, &z, 2), wv(2, &z, &["2", "-1"]));
    let z9 = Ring::parse("Z/9").unwrap();
    let three = WittVector::from_int(3, 2, &z9, 3);
    assert_eq!(three.ghost(0).unwrap(), z9.from_int(3));
}

#[test]
fn negation_at_two() {
    let z = Ring::integers();
    let x = wv(2, &z, &["1", "0"]);
    let n = x.neg();
    assert!(x.add(&n).is_zero());
    assert_ne!(n, wv(2, &z, &["-1", "0"]));
}

#[test]
fn teichmuller_multiplicative() {
    let r = Ring::parse("Z/125").unwrap();
    let a = WittVector::teichmuller(5, &r.from_int(2), 3);
    let b = WittVector::teichmuller(5, &r.from_int(3), 3);
    assert_eq!(a.mul(&b), WittVector::teichmuller(5, &r.from_int(6), 3));
}

#[test]
fn invert_examples() {
    let r = Ring::parse("Z/4").unwrap();
    let x = WittVector::one(2, 2, &r).add(&wv(2, &r, &["3", "0"]).verschiebung());
    let y = x.invert().unwrap();
    assert!(x.mul(&y).is_one());

    let f = Ring::parse("GF(2^2)").unwrap();
    let z = f.var("z").unwrap();
    let t = WittVector::teichmuller(2, &z, 3);
    assert_eq!(t.invert().unwrap(), WittVector::teichmuller(2, &z.invert().unwrap(), 3));

    assert!(wv(2, &r, &["0", "1"]).invert().is_err());
    assert!(wv(2, &Ring::integers(), &["1", "1"]).invert().is_err());
}

#[test]
fn invert_in_truncated_polynomial_ring() {
    let r = Ring::parse("Z/9[u1]/(3,u1)^3").unwrap();
    let x = wv(3, &r, &["1 + u1", "u1^2", "2"]);
    let y = x.invert().unwrap();
    assert!(x.mul(&y).is_one());
}

#[test]
fn ideal_membership() {
    let r = Ring::parse("Z/9").unwrap();
    let a = wv(3, &r, &["2", "1"]).verschiebung();
    assert!(a.in_ideal_ir());
    assert!(!WittVector::one(3, 2, &r).in_ideal_ir());
    assert!(a.add(&a).in_ideal_ir());
}

#[test]
fn mismatch_errors() {
    let z = Ring::integers();
    let a = wv(2, &z, &["1", "0"]);
    assert!(a.try_add(&wv(3, &z, &["1", "0"])).is_err());
    assert!(a.try_add(&wv(2, &z, &["1"])).is_err());
    assert!(a.try_add(&wv(2, &Ring::parse("Z/4").unwrap(), &["1", "0"])).is_err());
}

#[test]
fn frobenius_inverse_on_finite_field() {
    let f = Ring::parse("GF(3^2)").unwrap();
    let x = wv(3, &f, &["z", "z + 1"]);
    assert_eq!(x.frobenius().unwrap().frobenius_inverse().unwrap(), x);
}
