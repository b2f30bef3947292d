mod common;

use common::Oracle;
use proptest::prelude::*;
use shlin::{Elem, Error, Field};

fn check_against_oracle(f: &Field) {
    let o = Oracle::of(f);
    for a in 0..f.q() {
        let ea = f.elem(a).unwrap();
        assert_eq!(f.neg(ea).code() as usize, o.neg(a), "neg {a} in F_{}", f.q());
        match f.inv(ea) {
            Ok(i) => assert_eq!(Some(i.code() as usize), o.inv(a)),
            Err(e) => {
                assert_eq!(a, 0);
                assert_eq!(e, Error::DivisionByZero);
            }
        }
        for b in 0..f.q() {
            let eb = f.elem(b).unwrap();
            assert_eq!(f.add(ea, eb).code() as usize, o.add(a, b), "{a}+{b} in F_{}", f.q());
            assert_eq!(f.mul(ea, eb).code() as usize, o.mul(a, b), "{a}*{b} in F_{}", f.q());
        }
    }
}

#[test]
fn small_fields_match_schoolbook_arithmetic() {
    for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49] {
        check_against_oracle(&Field::from_order(q).unwrap());
    }
}

#[test]
fn large_fields_match_schoolbook_arithmetic() {
    for q in [64, 81, 125, 128, 243, 256] {
        check_against_oracle(&Field::from_order(q).unwrap());
    }
}

#[test]
fn default_moduli() {
    assert_eq!(Field::from_order(4).unwrap().modulus(), &[1, 1, 1]);
    assert_eq!(Field::from_order(8).unwrap().modulus(), &[1, 1, 0, 1]);
    assert_eq!(Field::from_order(9).unwrap().modulus(), &[1, 0, 1]);
}

#[test]
fn override_modulus() {
    let f = Field::with_modulus(8, Some(&[1, 0, 1, 1])).unwrap();
    assert!(!f.has_default_modulus());
    check_against_oracle(&f);
    assert_eq!(
        Field::with_modulus(8, Some(&[1, 1, 1, 1])).unwrap_err(),
        Error::ReduciblePolynomial { p: 2 }
    );
    assert!(matches!(Field::with_modulus(9, Some(&[2, 0, 1])), Err(Error::ReduciblePolynomial { .. })));
    assert!(matches!(Field::with_modulus(9, Some(&[1, 0, 2])), Err(Error::InvalidModulus(_))));
}

#[test]
fn unsupported_orders() {
    assert_eq!(Field::from_order(6).unwrap_err(), Error::UnsupportedOrder(6));
    assert!(matches!(Field::from_order(512), Err(Error::UnsupportedOrder(_))));
    assert_eq!(Field::new(4, 1, None).unwrap_err(), Error::NotPrime(4));
}

#[test]
fn multiplicative_group_is_cyclic() {
    for q in [4, 8, 9, 16, 25, 27] {
        let f = Field::from_order(q).unwrap();
        let has_generator = f.nonzero_elems().into_iter().any(|g| {
            (1..q as u64 - 1).all(|e| f.pow(g, e) != Elem::ONE)
        });
        assert!(has_generator, "F_{q}");
    }
}

proptest! {
    #[test]
    fn field_axioms(qi in 0usize..8, a in 0usize..256, b in 0usize..256, c in 0usize..256) {
        let q = [2, 3, 4, 8, 9, 16, 27, 256][qi];
        let f = Field::from_order(q).unwrap();
        let (a, b, c) = (f.elem(a % q).unwrap(), f.elem(b % q).unwrap(), f.elem(c % q).unwrap());
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !b.is_zero() {
            prop_assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
        }
        prop_assert_eq!(f.pow(a, q as u64), a);
        prop_assert_eq!(f.add_direct(a, b), f.add(a, b));
        prop_assert_eq!(f.mul_direct(a, b), f.mul(a, b));
    }
}
