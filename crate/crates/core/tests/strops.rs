use albert_core::albert::{NormedJordan, TitsFirstAlbert};
use albert_core::field::{Field, FieldElement};
use albert_core::fixtures;
use albert_core::linalg::{self, ExactMatrix, Vector};
use albert_core::sample::Sampler;
use albert_core::strops::{operator_from_rows, LinearOperator, StructureGroup};

fn invertible(a: &impl NormedJordan, s: &mut Sampler) -> Vector {
    loop {
        let p = s.vector(a.jordan().field(), 27);
        if !a.norm(&p).unwrap().is_zero() {
            return p;
        }
    }
}

fn u_op(a: &impl NormedJordan, p: &[FieldElement]) -> LinearOperator {
    a.jordan().u_operator(p).unwrap()
}

fn algebras() -> Vec<TitsFirstAlbert> {
    vec![
        fixtures::split(&Field::prime(7).unwrap()).unwrap(),
        fixtures::split(&Field::rationals()).unwrap(),
    ]
}

#[test]
fn u_operator_multipliers() {
    for (a, count) in algebras().iter().zip([100, 20]) {
        let sg = StructureGroup::new(a).unwrap();
        let mut s = Sampler::new(0x7570);
        for _ in 0..count {
            let p = invertible(a, &mut s);
            let v = sg.similarity_check(&u_op(a, &p)).unwrap();
            assert!(v.is_similarity);
            assert_eq!(v.multiplier.unwrap(), a.albert_norm(&p).unwrap().pow(2));
        }
    }
}

#[test]
fn homotheties_and_composition() {
    for a in algebras() {
        let f = a.field().clone();
        let sg = StructureGroup::new(&a).unwrap();
        let (l, m) = (f.from_i64(2), f.from_i64(-3));
        let g = sg.compose(&sg.homothety(&l), &sg.homothety(&m)).unwrap();
        assert_eq!(sg.similarity_check(&g).unwrap().multiplier, Some((&l * &m).pow(3)));
        let mut s = Sampler::new(0x636f);
        for _ in 0..5 {
            let p = invertible(&a, &mut s);
            let q = invertible(&a, &mut s);
            let (up, uq) = (u_op(&a, &p), u_op(&a, &q));
            let nu = |g: &LinearOperator| sg.similarity_check(g).unwrap().multiplier.unwrap();
            let composite = sg.compose(&up, &uq).unwrap();
            assert_eq!(nu(&composite), &nu(&up) * &nu(&uq));
            let expected = &a.albert_norm(&p).unwrap().pow(2) * &a.albert_norm(&q).unwrap().pow(2);
            assert_eq!(nu(&composite), expected);
            let id = ExactMatrix::identity(&f, 27);
            assert_eq!(sg.compose(&up, &id).unwrap(), up);
        }
    }
}

#[test]
fn random_operators_are_not_similarities() {
    for a in algebras() {
        let f = a.field().clone();
        let sg = StructureGroup::new(&a).unwrap();
        let mut s = Sampler::new(0x726e);
        let mut checked = 0;
        while checked < 5 {
            let rows = (0..27).map(|_| s.vector(&f, 27)).collect();
            let g = ExactMatrix::from_rows(&f, rows).unwrap();
            if g.det().unwrap().is_zero() {
                continue;
            }
            let v = sg.similarity_check(&g).unwrap();
            assert!(!v.is_similarity);
            assert_eq!(v.multiplier, None);
            assert!(!sg.automorphism_check(&g).unwrap());
            assert_eq!(sg.isotopy_decompose(&g).unwrap(), None);
            checked += 1;
        }
    }
}

#[test]
fn similarities_are_isotopies_and_back() {
    for a in algebras() {
        let j = a.jordan();
        let f = j.field().clone();
        let sg = StructureGroup::new(&a).unwrap();
        let mut s = Sampler::new(0x6973);
        for _ in 0..5 {
            let q = invertible(&a, &mut s);
            let l = s.nonzero_scalar(&f);
            let g = sg.compose(&sg.homothety(&l), &u_op(&a, &q)).unwrap();
            assert!(sg.similarity_check(&g).unwrap().is_similarity);
            let p = sg.isotopy_decompose(&g).unwrap().expect("similarities are isotopies");
            assert_eq!(p, j.inverse(&g.mul_vec(j.unit()).unwrap()).unwrap());
            let qq = j.mul(&q, &q);
            let uq = u_op(&a, &q);
            assert_eq!(sg.isotopy_decompose(&uq).unwrap(), Some(j.inverse(&qq).unwrap()));
        }
        let l = f.from_i64(3);
        let p = sg.isotopy_decompose(&sg.homothety(&l)).unwrap().unwrap();
        assert_eq!(p, linalg::scale(&l.inv().unwrap(), j.unit()));
    }
}

/// `1 - 2e` for a sum `e` of diagonal idempotents of the first slot.
fn reflection(a: &TitsFirstAlbert, slots: &[usize]) -> Vector {
    let f = a.field();
    let mut p = a.jordan().unit().clone();
    for &i in slots {
        // E_ii sits at index 4i of the first slot
        p[4 * i] = &p[4 * i] - &f.from_i64(2);
    }
    p
}

#[test]
fn unital_similarities_are_automorphisms() {
    for a in algebras() {
        let sg = StructureGroup::new(&a).unwrap();
        for slots in [vec![0], vec![1], vec![0, 2], vec![0, 1, 2]] {
            let g = u_op(&a, &reflection(&a, &slots));
            let v = sg.similarity_check(&g).unwrap();
            assert!(v.is_similarity);
            assert_eq!(g.mul_vec(a.jordan().unit()).unwrap(), a.jordan().unit().clone());
            assert!(sg.automorphism_check(&g).unwrap());
        }
    }
    let q = Field::rationals();
    let h = fixtures::h3_zorn(&q).unwrap();
    let sg = StructureGroup::new(&h).unwrap();
    let swap = h.permutation_operator([1, 0, 2]).unwrap();
    let cycle = h.permutation_operator([1, 2, 0]).unwrap();
    let mut p = h.jordan().unit().clone();
    p[1] = q.from_i64(-1);
    let reflect = h.jordan().u_operator(&p).unwrap();
    for g in [swap.clone(), cycle, reflect.clone(), sg.compose(&swap, &reflect).unwrap()] {
        let v = sg.similarity_check(&g).unwrap();
        assert_eq!(v.multiplier, Some(q.one()));
        assert!(sg.automorphism_check(&g).unwrap());
        assert_eq!(sg.isotopy_decompose(&g).unwrap(), Some(h.jordan().unit().clone()));
    }
    assert!(!sg.automorphism_check(&sg.homothety(&q.from_i64(2))).unwrap());
}

#[test]
fn operators_from_strings() {
    let q = Field::rationals();
    let a = fixtures::split(&q).unwrap();
    let sg = StructureGroup::new(&a).unwrap();
    let rows: Vec<Vec<String>> = (0..27)
        .map(|i| (0..27).map(|j| if i == j { "1/2".to_string() } else { "0".into() }).collect())
        .collect();
    let g = operator_from_rows(&q, &rows).unwrap();
    assert_eq!(sg.similarity_check(&g).unwrap().multiplier, Some(q.parse("1/8").unwrap()));
    let small = operator_from_rows(&q, &[vec!["1".into()]]).unwrap();
    assert!(sg.similarity_check(&small).is_err());
    assert!(operator_from_rows(&q, &[vec!["1/0".into()]]).is_err());
}
