use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use witt_display::display::random::{random_change, random_display, random_witt};
use witt_display::display::CoordinateChange;
use witt_display::serial::{DisplayDoc, ElemJson, WittDoc};
use witt_display::{Ring, WittVector};

const RINGS: [&str; 5] = ["Z", "Z/27", "Z/3[u]/(u)^4", "Z/9[u1,u2]/(3,u1)^3", "GF(2^2)[t]/(t)^3"];

fn ring(i: usize) -> Ring {
    Ring::parse(RINGS[i]).unwrap()
}

fn prime(i: usize) -> u64 {
    if i == 4 {
        2
    } else {
        3
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(seed in any::<u64>(), r in 0..RINGS.len()) {
        let ring = ring(r);
        let mut g = rng(seed);
        let (a, b, c) = (ring.random_elem(&mut g, 4, 3, 9), ring.random_elem(&mut g, 4, 3, 9), ring.random_elem(&mut g, 4, 3, 9));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&ring.one()), a.clone());
    }

    #[test]
    fn units_invert(seed in any::<u64>(), r in 1..RINGS.len()) {
        let ring = ring(r);
        let u = ring.random_unit(&mut rng(seed), 9);
        prop_assert!(u.mul(&u.invert().unwrap()).is_one());
    }

    #[test]
    fn element_json_round_trip(seed in any::<u64>(), r in 0..RINGS.len()) {
        let ring = ring(r);
        let x = ring.random_elem(&mut rng(seed), 5, 4, 1000);
        let text = serde_json::to_string(&ElemJson::from_elem(&x)).unwrap();
        let back: ElemJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_elem(&ring).unwrap(), x.clone());
        prop_assert_eq!(Ring::parse(&ring.to_string()).unwrap().to_string(), ring.to_string());
    }

    #[test]
    fn witt_laws(seed in any::<u64>(), r in 0..RINGS.len(), len in 1usize..4) {
        let ring = ring(r);
        let p = prime(r);
        let mut g = rng(seed);
        let (x, y, z) = (random_witt(&mut g, p, len, &ring), random_witt(&mut g, p, len, &ring), random_witt(&mut g, p, len, &ring));
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert!(x.add(&x.neg()).is_zero());
        for k in 0..len {
            prop_assert_eq!(x.mul(&y).ghost(k).unwrap(), x.ghost(k).unwrap().mul(&y.ghost(k).unwrap()));
        }
        let a = x.component(0);
        let b = y.component(0);
        prop_assert_eq!(WittVector::teichmuller(p, a, len).mul(&WittVector::teichmuller(p, b, len)), WittVector::teichmuller(p, &a.mul(b), len));
    }

    #[test]
    fn frobenius_and_verschiebung(seed in any::<u64>(), r in 0..RINGS.len(), len in 2usize..4) {
        let ring = ring(r);
        let p = prime(r);
        let x = random_witt(&mut rng(seed), p, len, &ring);
        let fv = x.verschiebung().frobenius().unwrap();
        prop_assert_eq!(fv.clone(), x.scale_int(p).truncate(fv.len()).unwrap());
        let fx = x.frobenius().unwrap();
        for k in 0..fx.len().min(len - 1) {
            prop_assert_eq!(fx.ghost(k).unwrap(), x.ghost(k + 1).unwrap());
        }
    }

    #[test]
    fn witt_units_invert(seed in any::<u64>(), r in 1..RINGS.len(), len in 1usize..4) {
        let ring = ring(r);
        let p = prime(r);
        let mut g = rng(seed);
        let mut x = random_witt(&mut g, p, len, &ring);
        let comps: Vec<_> = std::iter::once(ring.random_unit(&mut g, 9)).chain(x.components()[1..].iter().cloned()).collect();
        x = WittVector::new(p, comps).unwrap();
        prop_assert!(x.mul(&x.invert().unwrap()).is_one());
    }

    #[test]
    fn witt_json_round_trip(seed in any::<u64>(), r in 0..RINGS.len(), len in 1usize..4) {
        let ring = ring(r);
        let x = random_witt(&mut rng(seed), prime(r), len, &ring);
        let text = serde_json::to_string(&WittDoc::from_witt(&x)).unwrap();
        let back: WittDoc = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_witt().unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coordinate_changes_form_a_groupoid(seed in any::<u64>(), h in 2usize..4, r in 0usize..3) {
        let k = Ring::parse(["Z/2", "Z/3", "GF(2^2)"][r]).unwrap();
        let p = k.prime_characteristic().unwrap();
        let mut g = rng(seed);
        let d = random_display(&mut g, p, h, h - 1, 2, &k).unwrap();
        let phi = random_change(&mut g, p, h, h - 1, 2, &k).unwrap();
        let inv = phi.inverse().unwrap();
        prop_assert_eq!(inv.compose(&phi).unwrap(), CoordinateChange::identity(p, 2, &k, h, h - 1));
        let (moved, f) = d.change_of_coords(&phi).unwrap();
        let (back, f_inv) = moved.change_of_coords(&inv).unwrap();
        prop_assert_eq!(back, d);
        prop_assert!(f_inv.mul(&f).unwrap().is_identity());
    }

    #[test]
    fn display_json_round_trip(seed in any::<u64>(), h in 2usize..4, len in 1usize..4) {
        let k = Ring::parse("Z/9[u1]/(3,u1)^3").unwrap();
        let d = random_display(&mut rng(seed), 3, h, h - 1, len, &k).unwrap();
        let text = serde_json::to_string(&DisplayDoc::from_display(&d)).unwrap();
        let back: DisplayDoc = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_display().unwrap(), d.clone());
        prop_assert_eq!(d.dual().unwrap().dual().unwrap(), d);
    }
}
