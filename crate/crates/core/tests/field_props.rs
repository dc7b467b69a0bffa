use albert_core::field::{Field, FieldElement};
use albert_core::fixtures;
use albert_core::linalg::ExactMatrix;
use proptest::prelude::*;

fn rat(q: &Field, (n, d): (i64, i64)) -> FieldElement {
    q.from_i64(n).checked_div(&q.from_i64(d)).unwrap()
}

fn small_rational() -> impl Strategy<Value = (i64, i64)> {
    (-40i64..=40, 1i64..=12)
}

/// Elements of `ℚ`, `𝔽₇`, `ℚ[x]/(x³+x²−2x−1)` and `ℚ(s)`, selected by `kind`.
fn element(kind: usize) -> impl Strategy<Value = FieldElement> {
    proptest::collection::vec(small_rational(), 6).prop_map(move |cs| {
        let q = Field::rationals();
        match kind {
            0 => rat(&q, cs[0]),
            1 => Field::prime(7).unwrap().from_i64(cs[0].0),
            2 => {
                let l = fixtures::cyclic7_field(&q).unwrap();
                l.from_poly(cs[..3].iter().map(|&c| rat(&q, c)).collect())
            }
            _ => {
                let qs = fixtures::rational_function_field();
                let num = cs[..3].iter().map(|&c| rat(&q, c)).collect();
                // denominators s^2 + c s + d with d != 0 stay nonzero
                let mut den: Vec<_> = cs[3..5].iter().map(|&c| rat(&q, c)).collect();
                if den[0].is_zero() {
                    den[0] = q.one();
                }
                den.push(q.one());
                qs.from_fraction(num, den)
            }
        }
    })
}

fn triple() -> impl Strategy<Value = (FieldElement, FieldElement, FieldElement)> {
    (0usize..4).prop_flat_map(|k| (element(k), element(k), element(k)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms((a, b, c) in triple()) {
        let f = a.field().clone();
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &f.zero(), a.clone());
        prop_assert_eq!(&a * &f.one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert!((&a + &(-&a)).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        } else {
            prop_assert!(a.inv().is_err());
        }
    }

    #[test]
    fn canonical_forms_are_stable((a, b, _c) in triple()) {
        let f = a.field().clone();
        let x = &a * &b;
        prop_assert_eq!(x.canonicalize().canonicalize(), x.canonicalize());
        prop_assert_eq!(x.canonicalize(), x.clone());
        let text = x.to_string();
        prop_assert_eq!(f.parse(&text).unwrap(), x);
    }
}

fn matrix(q: &Field, entries: &[(i64, i64)]) -> ExactMatrix {
    let rows = entries.chunks(3).map(|r| r.iter().map(|&c| rat(q, c)).collect()).collect();
    ExactMatrix::from_rows(q, rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn determinant_is_multiplicative(
        a in proptest::collection::vec(small_rational(), 9),
        b in proptest::collection::vec(small_rational(), 9),
    ) {
        let q = Field::rationals();
        let (ma, mb) = (matrix(&q, &a), matrix(&q, &b));
        let lhs = ma.mul(&mb).unwrap().det().unwrap();
        prop_assert_eq!(lhs, &ma.det().unwrap() * &mb.det().unwrap());
    }

    #[test]
    fn inverse_matches_determinant(a in proptest::collection::vec(small_rational(), 9)) {
        let q = Field::rationals();
        let m = matrix(&q, &a);
        match m.inverse().unwrap() {
            Some(inv) => prop_assert_eq!(m.mul(&inv).unwrap(), ExactMatrix::identity(&q, 3)),
            None => prop_assert!(m.det().unwrap().is_zero()),
        }
    }
}

#[test]
fn known_inverses() {
    let f7 = Field::prime(7).unwrap();
    assert_eq!(f7.from_i64(2).inv().unwrap(), f7.from_i64(4));
    let q = Field::rationals();
    assert_eq!(q.parse("-3/5").unwrap().inv().unwrap(), q.parse("-5/3").unwrap());
    let l = fixtures::cyclic7_field(&q).unwrap();
    let x = l.generator().unwrap();
    let y = l.parse("x^2+x-2").unwrap();
    assert_eq!(x.inv().unwrap(), y);
    assert!((&x * &y).is_one());
}
