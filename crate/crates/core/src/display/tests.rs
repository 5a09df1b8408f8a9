use super::corpus::{lubin_tate, lubin_tate_ring, zeta_fixture};
use super::*;
use crate::matrix::WittMatrix;

fn swap_display(p: u64, len: usize) -> DisplayMatrix {
    let r = Ring::integers_mod(p).unwrap();
    let zero = WittVector::zero(p, len, &r);
    let one = WittVector::one(p, len, &r);
    let b = WittMatrix::from_rows(vec![vec![zero.clone(), one.clone()], vec![one, zero]]).unwrap();
    DisplayMatrix::new(p, 2, 1, b).unwrap()
}

fn scaled(v: &[WittVector], s: &WittVector) -> Vec<WittVector> {
    v.iter().map(|x| x.mul(s)).collect()
}

#[test]
fn block_formulas_on_swap_display() {
    for p in [2, 3, 5] {
        let d = swap_display(p, 3);
        let e1 = basis_vector(&d, 0);
        let e2 = basis_vector(&d, 1);
        let pw = WittVector::from_int(p, 3, d.ring(), p);
        assert_eq!(d.apply_f(&e1).unwrap(), e2);
        assert_eq!(d.apply_f(&e2).unwrap(), scaled(&e1, &pw));
        let zero = vec![WittVector::zero(p, 3, d.ring()); 2];
        assert_eq!(d.apply_f(&zero).unwrap(), zero);
        let vinv = d.apply_vinv(&e2).unwrap();
        assert_eq!(vinv, e1.iter().map(|x| x.truncate(2).unwrap()).collect::<Vec<_>>());
    }
}

#[test]
fn vinv_of_shifted_vector_is_f() {
    let d2 = swap_display(3, 3);
    let r3 = d2.ring().clone();
    let xs = WittVector::new(3, vec![r3.from_int(2), r3.from_int(1), r3.zero()]).unwrap();
    let e1 = basis_vector(&d2, 0);
    let lhs = d2.apply_vinv(&scaled(&e1, &xs.verschiebung())).unwrap();
    let rhs: Vec<WittVector> = scaled(&d2.apply_f(&e1).unwrap(), &xs).iter().map(|v| v.truncate(2).unwrap()).collect();
    assert_eq!(lhs, rhs);
}

#[test]
fn construction_checks() {
    let r = lubin_tate_ring(3, 3, 4).unwrap();
    assert!(lubin_tate(3, 3, 2, &r).is_ok());
    let zero = WittVector::zero(3, 2, &r);
    let one = WittVector::one(3, 2, &r);
    let b = WittMatrix::from_rows(vec![vec![zero.clone(), zero.clone()], vec![one.clone(), one]]).unwrap();
    assert!(matches!(DisplayMatrix::new(3, 2, 1, b), Err(Error::NotInvertible(_))));
}

#[test]
fn identity_change_keeps_matrix() {
    let d = swap_display(3, 3);
    let phi = CoordinateChange::identity(3, 3, d.ring(), 2, 1);
    let (d2, factor) = d.change_of_coords(&phi).unwrap();
    assert_eq!(d2, d);
    assert!(factor.is_identity());
}

#[test]
fn zeta_action_returns_original_display() {
    for (p, h) in [(3, 2), (3, 3), (5, 2)] {
        let fx = zeta_fixture(p, h, 2, 3).unwrap();
        let (out, factor) = fx.pulled_back.change_of_coords(&fx.change).unwrap();
        assert_eq!(out.matrix_form(), fx.display.matrix_form());
        assert_eq!(factor.get(0, 0), &fx.zeta);
    }
}

#[test]
fn nilpotence_examples() {
    let r = lubin_tate_ring(3, 2, 4).unwrap();
    let d = lubin_tate(3, 2, 2, &r).unwrap();
    // corner u1: u1 * u1^3 = u1^4 = 0
    assert_eq!(d.is_nilpotent(None).unwrap(), Nilpotence::Nilpotent(1));
    let d0 = lubin_tate(3, 2, 2, &Ring::integers_mod(9).unwrap().clone());
    assert!(d0.is_err());
    let rz = Ring::parse("Z/9[u1]").unwrap();
    let zero = WittVector::zero(3, 2, &rz);
    let one = WittVector::one(3, 2, &rz);
    let b = WittMatrix::from_rows(vec![vec![zero.clone(), one.clone()], vec![one.clone(), zero.clone()]]).unwrap();
    assert_eq!(DisplayMatrix::new(3, 2, 1, b).unwrap().is_nilpotent(None).unwrap(), Nilpotence::Nilpotent(0));
    let b = WittMatrix::from_rows(vec![vec![one.clone(), zero.clone()], vec![zero.clone(), one.clone()]]).unwrap();
    assert_eq!(DisplayMatrix::new(3, 2, 1, b).unwrap().is_nilpotent(None).unwrap(), Nilpotence::NotNilpotent);
    let u = WittVector::teichmuller(3, &rz.var("u1").unwrap(), 2);
    let b = WittMatrix::from_rows(vec![vec![zero.clone(), one.clone()], vec![one, u]]).unwrap();
    assert_eq!(
        DisplayMatrix::new(3, 2, 1, b).unwrap().is_nilpotent(Some(5)).unwrap(),
        Nilpotence::Unknown { iterations: 5 }
    );
}

#[test]
fn dual_shapes_and_biduality() {
    let r = lubin_tate_ring(2, 3, 3).unwrap();
    let d = lubin_tate(2, 3, 2, &r).unwrap();
    let dd = d.dual().unwrap();
    assert_eq!((dd.height(), dd.dimension()), (3, 1));
    assert_eq!(dd.dual().unwrap(), d);
}

#[test]
fn pairing_certificate_on_fixtures() {
    let d = swap_display(3, 3);
    assert!(pairing_certificate(&d, &[]).unwrap().passed());
    let r = Ring::parse("GF(2^2)[u1,u2]/(u1)^3").unwrap();
    let d = lubin_tate(2, 3, 3, &r).unwrap();
    let z = WittVector::teichmuller(2, &r.var("z").unwrap(), 3);
    let report = pairing_certificate(&d, &[z.clone(), z.add(&WittVector::one(2, 3, &r).verschiebung())]).unwrap();
    assert!(report.passed(), "{report:?}");
}

#[test]
fn reduce_h2_examples() {
    let r = Ring::parse("Z/9[u1]/(3,u1)^3").unwrap();
    let d = lubin_tate(3, 2, 2, &r).unwrap();
    let (out, phi) = reduce_h2(&d).unwrap();
    assert_eq!(out.matrix_form(), &d.matrix_form().truncate(1).unwrap());
    assert!(phi.to_matrix().unwrap().is_identity());

    let f = Ring::integers_mod(3).unwrap();
    let w = |a: i64, b: i64| WittVector::new(3, vec![f.from_int(a), f.from_int(b)]).unwrap();
    let b = WittMatrix::from_rows(vec![vec![w(1, 1), w(2, 0)], vec![w(1, 2), w(0, 1)]]).unwrap();
    let d = DisplayMatrix::new(3, 2, 1, b).unwrap();
    let (out, _) = reduce_h2(&d).unwrap();
    assert!(out.matrix_form().get(0, 0).is_zero());
    assert!(out.matrix_form().get(0, 1).is_one());

    let b = WittMatrix::from_rows(vec![vec![w(1, 0), w(0, 1)], vec![w(0, 0), w(1, 0)]]).unwrap();
    let d = DisplayMatrix::new(3, 2, 1, b).unwrap();
    let (out, _) = reduce_h2(&d).unwrap();
    assert!(out.matrix_form().get(0, 0).is_zero());
    // over Z/3<t>: 1 + t and 1 + 2t are not units, t is
    let l = Ring::parse("Z/3<t>").unwrap();
    let wl = |s: &str| WittVector::parse(3, &l, &[s, "0"]).unwrap();
    let b = WittMatrix::from_rows(vec![vec![wl("1"), wl("1 + t")], vec![wl("0"), wl("t")]]).unwrap();
    let d = DisplayMatrix::new(3, 2, 1, b).unwrap();
    assert!(matches!(reduce_h2(&d), Err(Error::ReductionImpossible(_))));
}

#[test]
fn conjugation_matches_changed_matrix_form() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let f3 = Ring::integers_mod(3).unwrap();
    for h in [2, 3] {
        for _ in 0..5 {
            let d = random::random_display(&mut rng, 3, h, h - 1, 3, &f3).unwrap();
            let phi = random::random_change(&mut rng, 3, h, h - 1, 3, &f3).unwrap();
            let (d2, _) = d.change_of_coords(&phi).unwrap();
            let m = phi.to_matrix().unwrap();
            let x = random::random_column(&mut rng, 3, h, 3, &f3);
            let lhs = d2.apply_f(&m.apply(&x).unwrap()).unwrap();
            let rhs = m.apply(&d.apply_f(&x).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
