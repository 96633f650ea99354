use galela::gf::{divisors_u32, make_field, Elem, FieldReduction, FieldTower};
use proptest::prelude::*;
use std::sync::Arc;

const SMALL_FIELDS: [(u64, u32); 14] = [
    (2, 1),
    (2, 2),
    (2, 3),
    (2, 4),
    (2, 5),
    (2, 6),
    (3, 1),
    (3, 2),
    (3, 3),
    (5, 1),
    (5, 2),
    (7, 2),
    (13, 2),
    (2, 8),
];

/// Schoolbook product of coefficient vectors reduced by the monic modulus.
fn oracle_mul(f: &FieldTower, a: Elem, b: Elem) -> Elem {
    let p = f.characteristic();
    let h = f.degree() as usize;
    let (ca, cb) = (f.coeffs(a), f.coeffs(b));
    let mut prod = vec![0u32; 2 * h];
    for i in 0..h {
        for j in 0..h {
            prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
        }
    }
    let modulus = f.modulus();
    for k in (h..2 * h).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        for (i, &mi) in modulus.iter().enumerate() {
            prod[k - h + i] = (prod[k - h + i] + (p - c) * mi % p) % p;
        }
    }
    f.from_coeffs(&prod[..h]).unwrap()
}

fn elems(f: &FieldTower) -> Vec<Elem> {
    f.elements().collect()
}

#[test]
fn multiplication_matches_polynomial_oracle() {
    for (p, h) in SMALL_FIELDS {
        let f = make_field(p, h).unwrap();
        for a in elems(&f) {
            for b in elems(&f) {
                assert_eq!(f.mul(a, b), oracle_mul(&f, a, b), "GF({p}^{h}) {a} * {b}");
            }
        }
    }
}

#[test]
fn two_operand_axioms() {
    for (p, h) in SMALL_FIELDS {
        let f = make_field(p, h).unwrap();
        for a in elems(&f) {
            assert_eq!(f.add(a, f.neg(a)), f.zero());
            assert_eq!(f.mul(a, f.one()), a);
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
            for b in elems(&f) {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(f.sub(f.add(a, b), b), a);
            }
        }
        assert!(f.inv(f.zero()).is_err());
    }
}

#[test]
fn three_operand_axioms() {
    for (p, h) in SMALL_FIELDS {
        let f = make_field(p, h).unwrap();
        let all = elems(&f);
        for &a in &all {
            for &b in &all {
                let ab = f.mul(a, b);
                let a_b = f.add(a, b);
                for &c in &all {
                    assert_eq!(f.mul(ab, c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.add(a_b, c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(ab, f.mul(a, c)));
                }
            }
        }
    }
}

#[test]
fn frobenius_fixes_exactly_the_subfield() {
    for (p, h) in SMALL_FIELDS {
        let f = make_field(p, h).unwrap();
        for n in divisors_u32(h) {
            let fixed: Vec<Elem> = elems(&f)
                .into_iter()
                .filter(|&a| f.frobenius(a, n) == a)
                .collect();
            let mut sub = f.subfield_elements(n).unwrap();
            sub.sort();
            assert_eq!(fixed, sub, "GF({p}^{h}) n = {n}");
            assert_eq!(sub.len() as u64, p.pow(n));
        }
    }
}

#[test]
fn coords_are_subfield_linear() {
    for (p, h) in SMALL_FIELDS {
        let big = Arc::new(make_field(p, h).unwrap());
        for n in divisors_u32(h) {
            let red = FieldReduction::new(big.clone(), n).unwrap();
            let small = red.small().clone();
            let sub = big.subfield_elements(n).unwrap();
            for a in elems(&big) {
                let ca = red.coords(a);
                assert_eq!(red.from_coords(&ca).unwrap(), a);
                for b in elems(&big) {
                    let cb = red.coords(b);
                    for &c in &sub {
                        let lhs = red.coords(big.add(a, big.mul(c, b)));
                        let cs = red.to_small(c).unwrap();
                        let rhs: Vec<Elem> = ca
                            .iter()
                            .zip(&cb)
                            .map(|(&x, &y)| small.add(x, small.mul(cs, y)))
                            .collect();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}

#[test]
fn make_field_is_deterministic() {
    for (p, h) in SMALL_FIELDS {
        let a = make_field(p, h).unwrap();
        let b = make_field(p, h).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a.mu(), b.mu());
        assert_eq!(a.element_order(a.mu()).unwrap(), a.order() as u64 - 1);
    }
}

#[test]
fn invalid_fields_are_rejected() {
    assert!(make_field(4, 2).is_err());
    assert!(make_field(2, 0).is_err());
    assert!(make_field(1, 3).is_err());
}

proptest! {
    #[test]
    fn big_field_arithmetic(a in 0u32..4096, b in 0u32..4096, c in 0u32..4096) {
        let f = make_field(2, 12).unwrap();
        let (a, b, c) = (f.from_index(a).unwrap(), f.from_index(b).unwrap(), f.from_index(c).unwrap());
        prop_assert_eq!(f.mul(a, b), oracle_mul(&f, a, b));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        if !b.is_zero() {
            prop_assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
        }
    }

    #[test]
    fn odd_field_powers(a in 1u32..2187, e in 0u64..10_000) {
        let f = make_field(3, 7).unwrap();
        let a = f.from_index(a).unwrap();
        let mut slow = f.one();
        for _ in 0..(e % 50) {
            slow = f.mul(slow, a);
        }
        prop_assert_eq!(f.pow(a, e % 50), slow);
        prop_assert_eq!(f.pow(a, f.order() as u64 - 1), f.one());
        prop_assert_eq!(f.mu_pow(f.log(a).unwrap()), a);
    }
}
