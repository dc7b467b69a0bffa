use albert_core::albert::{division_probe, NormedJordan, TitsFirstAlbert};
use albert_core::csa3::DegreeThreeAlgebra;
use albert_core::field::{Field, FieldElement};
use albert_core::fixtures;
use albert_core::jordan::JordanAlgebra;
use albert_core::linalg::{self, ExactMatrix};
use albert_core::sample::Sampler;
use albert_core::table::AlgebraTable;

fn split_f7() -> TitsFirstAlbert {
    fixtures::split(&Field::prime(7).unwrap()).unwrap()
}

fn tits_algebras() -> Vec<(&'static str, TitsFirstAlbert)> {
    let q = Field::rationals();
    vec![
        ("split-f7", split_f7()),
        ("split-q", fixtures::split(&q).unwrap()),
        ("split-q-mu3", TitsFirstAlbert::new(DegreeThreeAlgebra::matrix3(&q), &q.from_i64(3)).unwrap()),
        ("cyclic7-q", fixtures::cyclic_tits(&q, "2").unwrap()),
    ]
}

#[test]
fn jordan_identity_on_reference_algebras() {
    let q = Field::rationals();
    for (name, a) in tits_algebras() {
        let r = a.jordan().jordan_identity_suite(200, 42);
        assert!(r.passed(), "{name}: {:?}", r.violations.first());
        assert_eq!(r.samples, 200);
    }
    let h = fixtures::h3_zorn(&q).unwrap();
    assert!(h.jordan().jordan_identity_suite(200, 42).passed());
    let m3 = JordanAlgebra::plus_construction(DegreeThreeAlgebra::matrix3(&q).table()).unwrap();
    assert!(m3.jordan_identity_suite(1000, 42).passed());
}

#[test]
fn jordan_identity_over_rational_functions() {
    let a = fixtures::division_qs().unwrap();
    assert!(a.jordan().jordan_identity_suite(10, 42).passed());
}

#[test]
fn corrupted_table_is_detected() {
    let a = split_f7();
    let mut table: AlgebraTable = a.jordan().table().clone();
    // E11 in the second slot squared gets an extra unit coefficient
    let i = 9;
    table.perturb(i, i, 0, &table.field().one());
    let bad = JordanAlgebra::new(table).unwrap();
    let r = bad.jordan_identity_suite(200, 42);
    assert!(!r.passed());
    let v = &r.violations[0];
    assert_eq!(v.x.len(), 27);
    assert!(v.residual.iter().any(|c| c != "0"));
    // same seed, same report
    assert_eq!(bad.jordan_identity_suite(200, 42), r);
}

#[test]
fn closed_norm_matches_generic_coefficients() {
    for (name, a) in tits_algebras() {
        let f = a.field().clone();
        let mut s = Sampler::new(0x6e6f);
        for _ in 0..100 {
            let x = s.vector(&f, 27);
            let closed = a.albert_norm(&x).unwrap();
            assert_eq!(a.jordan().norm(&x).unwrap(), closed, "{name}");
            let l = s.nonzero_scalar(&f);
            let lx = linalg::scale(&l, &x);
            assert_eq!(a.albert_norm(&lx).unwrap(), &l.pow(3) * &closed, "{name}");
        }
        assert!(a.albert_norm(a.jordan().unit()).unwrap().is_one());
    }
    let a = fixtures::division_qs().unwrap();
    let mut s = Sampler::new(0x6e6f);
    for _ in 0..10 {
        let x = s.vector(a.field(), 27);
        assert_eq!(a.jordan().norm(&x).unwrap(), a.albert_norm(&x).unwrap());
    }
}

#[test]
fn tits_product_is_symmetric_on_basis_pairs() {
    for (name, a) in tits_algebras() {
        let t = a.jordan().table();
        for i in 0..27 {
            for j in i..27 {
                let (ei, ej) = (t.basis(i), t.basis(j));
                let xy = a.product_direct(&ei, &ej).unwrap();
                assert_eq!(xy, a.product_direct(&ej, &ei).unwrap(), "{name}");
                assert_eq!(xy, a.jordan().mul(&ei, &ej), "{name}");
            }
        }
    }
}

#[test]
fn generic_cubic_identities() {
    for (name, a) in tits_algebras() {
        let j = a.jordan();
        let f = j.field().clone();
        let one = j.unit().clone();
        assert_eq!(j.adjoint(&one).unwrap(), one);
        assert_eq!(j.inverse(&one).unwrap(), one);
        let l = f.from_i64(5);
        assert_eq!(
            j.inverse(&linalg::scale(&l, &one)).unwrap(),
            linalg::scale(&l.inv().unwrap(), &one)
        );
        let mut s = Sampler::new(0x6164);
        for _ in 0..50 {
            let x = s.vector(&f, 27);
            let n = j.norm(&x).unwrap();
            assert_eq!(j.mul(&x, &j.adjoint(&x).unwrap()), linalg::scale(&n, &one), "{name}");
            if !n.is_zero() {
                assert_eq!(j.mul(&x, &j.inverse(&x).unwrap()), one, "{name}");
            }
        }
    }
}

#[test]
fn reduced_norm_from_generic_coefficients() {
    let q = Field::rationals();
    let h = fixtures::h3_zorn(&q).unwrap();
    assert!(h.norm(h.jordan().unit()).unwrap().is_one());
    let mut s = Sampler::new(0x6833);
    for _ in 0..50 {
        let x = s.vector(&q, 27);
        let l = s.nonzero_scalar(&q);
        let n = h.norm(&x).unwrap();
        assert_eq!(h.norm(&linalg::scale(&l, &x)).unwrap(), &l.pow(3) * &n);
        let lhs = h.jordan().mul(&x, &h.jordan().adjoint(&x).unwrap());
        assert_eq!(lhs, h.jordan().table().scalar(&n));
    }
}

#[test]
fn fundamental_formula() {
    let q = Field::rationals();
    for a in [split_f7(), fixtures::split(&q).unwrap()] {
        let j = a.jordan();
        let f = j.field().clone();
        let u1 = j.u_operator(j.unit()).unwrap();
        assert_eq!(u1, ExactMatrix::identity(&f, 27));
        let mut s = Sampler::new(0x6666);
        for _ in 0..10 {
            let p = s.small_vector(&f, 27, 3);
            let r = s.small_vector(&f, 27, 3);
            let up = j.u_operator(&p).unwrap();
            assert_eq!(up.mul_vec(j.unit()).unwrap(), j.mul(&p, &p));
            let upr = up.mul_vec(&r).unwrap();
            let lhs = j.u_operator(&upr).unwrap();
            let rhs = up.mul(&j.u_operator(&r).unwrap()).unwrap().mul(&up).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn isotope_contract() {
    let a = split_f7();
    let j = a.jordan();
    let f = j.field().clone();
    assert_eq!(&j.isotope(j.unit()).unwrap(), j);
    let mut s = Sampler::new(0x6973);
    let mut checked = 0;
    while checked < 50 {
        let p = s.vector(&f, 27);
        if j.norm(&p).unwrap().is_zero() {
            continue;
        }
        let iso = j.isotope(&p).unwrap();
        let pinv = j.inverse(&p).unwrap();
        assert_eq!(iso.unit(), &pinv);
        for i in 0..27 {
            let e = j.table().basis(i);
            assert_eq!(iso.mul(&pinv, &e), e);
            assert_eq!(iso.mul(&e, &pinv), e);
        }
        let x = s.vector(&f, 27);
        let y = s.vector(&f, 27);
        assert_eq!(iso.mul(&x, &y), j.isotope_product(&p, &x, &y).unwrap());
        if checked < 5 {
            assert!(iso.jordan_identity_suite(100, checked).passed());
        }
        checked += 1;
    }
}

#[test]
fn polarized_norm() {
    let q = Field::rationals();
    let a = fixtures::split(&q).unwrap();
    let theta = a.polarize_norm().unwrap();
    let one = a.jordan().unit();
    assert_eq!(theta.eval(one, one, one), q.from_i64(6));
    let six = q.from_i64(6);
    let mut s = Sampler::new(0x7468);
    for _ in 0..50 {
        let x = s.vector(&q, 27);
        let y = s.vector(&q, 27);
        let z = s.vector(&q, 27);
        assert_eq!(theta.eval(&x, &x, &x), &six * &a.albert_norm(&x).unwrap());
        assert_eq!(theta.norm(&x), a.albert_norm(&x).unwrap());
        let v = theta.eval(&x, &y, &z);
        for (p, r, t) in [(&x, &z, &y), (&y, &x, &z), (&y, &z, &x), (&z, &x, &y), (&z, &y, &x)] {
            assert_eq!(theta.eval(p, r, t), v);
        }
        let sum = linalg::add(&linalg::add(&x, &y), &z);
        let n = |v: &[FieldElement]| a.albert_norm(v).unwrap();
        let expected = &(&(&(&(&(&n(&sum) - &n(&linalg::add(&x, &y))) - &n(&linalg::add(&x, &z)))
            - &n(&linalg::add(&y, &z)))
            + &n(&x))
            + &n(&y))
            + &n(&z);
        assert_eq!(v, expected);
    }
}

#[test]
fn generated_subalgebras() {
    let q = Field::rationals();
    let m3 = JordanAlgebra::plus_construction(DegreeThreeAlgebra::matrix3(&q).table()).unwrap();
    let one = m3.subalgebra_generated(m3.unit()).unwrap();
    assert_eq!(one.dimension, 1);
    assert_eq!(JordanAlgebra::format_polynomial(&one.minimal_polynomial), "t-1");
    let e11 = m3.table().basis(0);
    let g = m3.subalgebra_generated(&e11).unwrap();
    assert_eq!((g.dimension, g.is_field), (2, false));
    let a = fixtures::division_qs().unwrap();
    let mut s = Sampler::new(0x7375);
    for _ in 0..3 {
        let x = s.vector(a.field(), 27);
        let g = a.jordan().subalgebra_generated(&x).unwrap();
        assert_eq!((g.dimension, g.is_field), (3, true));
    }
}

#[test]
fn division_probes() {
    let q = Field::rationals();
    let split = fixtures::split(&q).unwrap();
    let r = division_probe(&split, 1000, 1).unwrap();
    let mut witness = vec!["0".to_string(); 27];
    witness[0] = "1".into();
    assert_eq!(r.counterexample, Some(witness));
    let h = fixtures::h3_zorn(&q).unwrap();
    let r = division_probe(&h, 1000, 1).unwrap();
    let w = r.counterexample.expect("reduced algebras have null vectors");
    let w: Vec<_> = w.iter().map(|c| q.parse(c).unwrap()).collect();
    assert!(!linalg::is_zero(&w));
    assert!(h.norm(&w).unwrap().is_zero());
    let d = fixtures::division_qs().unwrap();
    let r = division_probe(&d, 5, 1).unwrap();
    assert!(!r.found_counterexample());
    assert_eq!((r.subalgebras_checked, r.cubic_fields), (5, 5));
}
