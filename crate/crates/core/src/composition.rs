//! Composition algebras of dimension 1, 2, 4 and 8.
//!
//! Doubling uses the product `(a, b)(c, d) = (ac + λ d̄b, da + bc̄)` with
//! conjugation `(a, b)‾ = (ā, -b)` and norm `N(a, b) = N(a) - λN(b)`. The
//! split octonions are built as Zorn vector matrices
//!
//! ```text
//! [a  u] [a' u']   [aa' + u·v'          a u' + b' u + v × v']
//! [v  b] [v' b'] = [a' v + b v' - u × u'   bb' + v·u'        ]
//! ```
//!
//! with norm `ab - u·v`.

use crate::error::{AlgebraError, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::{self, ExactMatrix, Vector};
use crate::table::AlgebraTable;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompositionKind {
    /// The base field itself.
    Scalars,
    /// Iterated doubling of the base field with the given parameters.
    CayleyDickson(Vec<FieldElement>),
    Zorn,
}

#[derive(Clone, Debug)]
pub struct CompositionAlgebra {
    table: AlgebraTable,
    kind: CompositionKind,
    conjugation: ExactMatrix,
    /// `N(x) = sum q_ij x_i x_j` over `i <= j`.
    norm_form: Vec<(usize, usize, FieldElement)>,
    trace_form: Vector,
}

const DOUBLING_NAMES: [&str; 3] = ["i", "j", "l"];

impl CompositionAlgebra {
    /// The field `K` as a one-dimensional composition algebra.
    pub fn scalars(field: &Field) -> Self {
        let table = AlgebraTable::from_constants(
            field,
            vec!["1".into()],
            vec![field.one()],
            vec![(0, 0, 0, field.one())],
        )
        .expect("valid 1-dimensional table");
        CompositionAlgebra {
            table,
            kind: CompositionKind::Scalars,
            conjugation: ExactMatrix::identity(field, 1),
            norm_form: vec![(0, 0, field.one())],
            trace_form: vec![field.from_i64(2)],
        }
    }

    /// Cayley–Dickson doubling with parameter `lambda`.
    pub fn cayley_dickson(base: &CompositionAlgebra, lambda: &FieldElement) -> Result<Self> {
        let n = base.dim();
        if n >= 8 {
            return Err(AlgebraError::CannotDouble(n));
        }
        if lambda.is_zero() {
            return Err(AlgebraError::DegenerateParameter(
                "doubling parameter must be nonzero".into(),
            ));
        }
        let field = base.field().clone();
        let dim = 2 * n;
        let name = DOUBLING_NAMES[n.trailing_zeros() as usize];
        let mut labels: Vec<String> = base.table.labels().to_vec();
        for l in base.table.labels() {
            labels.push(if l == "1" { name.to_string() } else { format!("{l}{name}") });
        }
        let split = |v: &[FieldElement]| (v[..n].to_vec(), v[n..].to_vec());
        let join = |a: Vector, b: Vector| -> Vector { a.into_iter().chain(b).collect() };
        let product = |x: &[FieldElement], y: &[FieldElement]| -> Vector {
            let (a, b) = split(x);
            let (c, d) = split(y);
            let first = linalg::add(
                &base.mul(&a, &c),
                &linalg::scale(lambda, &base.mul(&base.conj(&d), &b)),
            );
            let second = linalg::add(&base.mul(&d, &a), &base.mul(&b, &base.conj(&c)));
            join(first, second)
        };
        let unit = join(base.table.unit().clone(), linalg::zeros(&field, n));
        let basis = |i: usize| linalg::basis_vector(&field, dim, i);
        let table = AlgebraTable::from_fn(&field, labels, unit, |i, j| {
            Ok(product(&basis(i), &basis(j)))
        })?;

        let mut conjugation = ExactMatrix::zeros(&field, dim, dim);
        for i in 0..n {
            for j in 0..n {
                conjugation.set(i, j, base.conjugation.get(i, j).clone());
            }
            conjugation.set(n + i, n + i, field.from_i64(-1));
        }
        let mut norm_form = base.norm_form.clone();
        for (i, j, c) in &base.norm_form {
            norm_form.push((n + i, n + j, -(lambda * c)));
        }
        let mut trace_form = base.trace_form.clone();
        trace_form.extend(linalg::zeros(&field, n));
        let mut params = match &base.kind {
            CompositionKind::CayleyDickson(p) => p.clone(),
            _ => Vec::new(),
        };
        params.push(lambda.clone());
        Ok(CompositionAlgebra {
            table,
            kind: CompositionKind::CayleyDickson(params),
            conjugation,
            norm_form,
            trace_form,
        })
    }

    /// Iterated doubling of `K` with the given parameters.
    pub fn doubled(field: &Field, lambdas: &[FieldElement]) -> Result<Self> {
        let mut alg = Self::scalars(field);
        for l in lambdas {
            alg = Self::cayley_dickson(&alg, l)?;
        }
        Ok(alg)
    }

    /// Split octonions in the Zorn vector-matrix model, basis
    /// `(a, u1, u2, u3, v1, v2, v3, b)`.
    pub fn zorn_split(field: &Field) -> Self {
        let labels: Vec<String> = ["a", "u1", "u2", "u3", "v1", "v2", "v3", "b"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let mut unit = linalg::zeros(field, 8);
        unit[0] = field.one();
        unit[7] = field.one();
        let table = AlgebraTable::from_fn(field, labels, unit, |i, j| {
            let x = linalg::basis_vector(field, 8, i);
            let y = linalg::basis_vector(field, 8, j);
            Ok(zorn_product(&x, &y))
        })
        .expect("valid Zorn table");
        let mut conjugation = ExactMatrix::zeros(field, 8, 8);
        conjugation.set(0, 7, field.one());
        conjugation.set(7, 0, field.one());
        for i in 1..7 {
            conjugation.set(i, i, field.from_i64(-1));
        }
        let mut norm_form = vec![(0, 7, field.one())];
        for i in 0..3 {
            norm_form.push((1 + i, 4 + i, field.from_i64(-1)));
        }
        let mut trace_form = linalg::zeros(field, 8);
        trace_form[0] = field.one();
        trace_form[7] = field.one();
        CompositionAlgebra {
            table,
            kind: CompositionKind::Zorn,
            conjugation,
            norm_form,
            trace_form,
        }
    }

    pub fn table(&self) -> &AlgebraTable {
        &self.table
    }

    pub fn kind(&self) -> &CompositionKind {
        &self.kind
    }

    pub fn field(&self) -> &Field {
        self.table.field()
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn unit(&self) -> &Vector {
        self.table.unit()
    }

    pub fn conjugation_matrix(&self) -> &ExactMatrix {
        &self.conjugation
    }

    pub(crate) fn mul(&self, x: &[FieldElement], y: &[FieldElement]) -> Vector {
        self.table.mul(x, y)
    }

    pub(crate) fn conj(&self, x: &[FieldElement]) -> Vector {
        self.conjugation.mul_vec(x).expect("dimension checked")
    }

    pub(crate) fn norm_unchecked(&self, x: &[FieldElement]) -> FieldElement {
        let mut acc = self.field().zero();
        for (i, j, c) in &self.norm_form {
            if !x[*i].is_zero() && !x[*j].is_zero() {
                acc += &(&(&x[*i] * &x[*j]) * c);
            }
        }
        acc
    }

    /// Polar form `N(x + y) - N(x) - N(y)`.
    pub fn polar_norm(&self, x: &[FieldElement], y: &[FieldElement]) -> Result<FieldElement> {
        self.table.check_len(x)?;
        self.table.check_len(y)?;
        let mut acc = self.field().zero();
        for (i, j, c) in &self.norm_form {
            let t = &(&x[*i] * &y[*j]) + &(&x[*j] * &y[*i]);
            if !t.is_zero() {
                acc += &(&t * c);
            }
        }
        Ok(acc)
    }

    pub(crate) fn trace_unchecked(&self, x: &[FieldElement]) -> FieldElement {
        linalg::dot(&self.trace_form, x)
    }

    pub fn product(&self, x: &[FieldElement], y: &[FieldElement]) -> Result<Vector> {
        self.table.product(x, y)
    }

    pub fn conjugate(&self, x: &[FieldElement]) -> Result<Vector> {
        self.table.check_len(x)?;
        Ok(self.conj(x))
    }

    pub fn norm(&self, x: &[FieldElement]) -> Result<FieldElement> {
        self.table.check_len(x)?;
        Ok(self.norm_unchecked(x))
    }

    /// `x + x̄` as a scalar.
    pub fn trace(&self, x: &[FieldElement]) -> Result<FieldElement> {
        self.table.check_len(x)?;
        Ok(self.trace_unchecked(x))
    }

    /// Structural invariants: unit, involutive conjugation, `N(1) = 1` and
    /// `x + x̄ = T(x)·1` on the basis.
    pub fn check_invariants(&self) -> Result<()> {
        self.table.check_unit()?;
        let field = self.field();
        let sq = self.conjugation.mul(&self.conjugation)?;
        if sq != ExactMatrix::identity(field, self.dim()) {
            return Err(AlgebraError::Internal("conjugation is not an involution".into()));
        }
        if !self.norm_unchecked(self.unit()).is_one() {
            return Err(AlgebraError::Internal("N(1) != 1".into()));
        }
        for i in 0..self.dim() {
            let e = self.table.basis(i);
            let sum = linalg::add(&e, &self.conj(&e));
            if sum != self.table.scalar(&self.trace_unchecked(&e)) {
                return Err(AlgebraError::Internal(format!(
                    "x + conj(x) is not scalar at basis element {i}"
                )));
            }
        }
        Ok(())
    }
}

fn cross3(u: &[FieldElement], v: &[FieldElement]) -> [FieldElement; 3] {
    [
        &(&u[1] * &v[2]) - &(&u[2] * &v[1]),
        &(&u[2] * &v[0]) - &(&u[0] * &v[2]),
        &(&u[0] * &v[1]) - &(&u[1] * &v[0]),
    ]
}

fn zorn_product(x: &[FieldElement], y: &[FieldElement]) -> Vector {
    let (a, u, v, b) = (&x[0], &x[1..4], &x[4..7], &x[7]);
    let (a2, u2, v2, b2) = (&y[0], &y[1..4], &y[4..7], &y[7]);
    let vv = cross3(v, v2);
    let uu = cross3(u, u2);
    let mut out = Vec::with_capacity(8);
    out.push(&(a * a2) + &linalg::dot(u, v2));
    for i in 0..3 {
        out.push(&(&(a * &u2[i]) + &(b2 * &u[i])) + &vv[i]);
    }
    for i in 0..3 {
        out.push(&(&(a2 * &v[i]) + &(b * &v2[i])) - &uu[i]);
    }
    out.push(&(b * b2) + &linalg::dot(v, u2));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::Sampler;

    fn octonions_q() -> CompositionAlgebra {
        let q = Field::rationals();
        let m1 = q.from_i64(-1);
        CompositionAlgebra::doubled(&q, &[m1.clone(), m1.clone(), m1]).unwrap()
    }

    #[test]
    fn invariants_hold() {
        octonions_q().check_invariants().unwrap();
        CompositionAlgebra::zorn_split(&Field::rationals()).check_invariants().unwrap();
        let q = Field::rationals();
        CompositionAlgebra::doubled(&q, &[q.from_i64(2), q.from_i64(-3)])
            .unwrap()
            .check_invariants()
            .unwrap();
    }

    #[test]
    fn doubling_errors() {
        let q = Field::rationals();
        let o = octonions_q();
        assert_eq!(
            CompositionAlgebra::cayley_dickson(&o, &q.one()).unwrap_err(),
            AlgebraError::CannotDouble(8)
        );
        assert!(matches!(
            CompositionAlgebra::cayley_dickson(&CompositionAlgebra::scalars(&q), &q.zero()),
            Err(AlgebraError::DegenerateParameter(_))
        ));
    }

    #[test]
    fn split_quadratic_is_isotropic() {
        let q = Field::rationals();
        let c = CompositionAlgebra::doubled(&q, &[q.one()]).unwrap();
        assert!(c.norm(&[q.one(), q.one()]).unwrap().is_zero());
        assert_eq!(c.norm(&[q.from_i64(3), q.from_i64(2)]).unwrap(), q.from_i64(5));
    }

    #[test]
    fn conjugate_of_unit_is_unit() {
        let o = octonions_q();
        assert_eq!(&o.conjugate(o.unit()).unwrap(), o.unit());
        assert!(o.norm(o.unit()).unwrap().is_one());
        let z = CompositionAlgebra::zorn_split(&Field::rationals());
        assert_eq!(&z.conjugate(z.unit()).unwrap(), z.unit());
        assert!(z.norm(z.unit()).unwrap().is_one());
    }

    #[test]
    fn zorn_has_null_vectors() {
        let q = Field::rationals();
        let z = CompositionAlgebra::zorn_split(&q);
        let u1 = z.table().basis(1);
        assert!(z.norm(&u1).unwrap().is_zero());
    }

    #[test]
    fn mixed_dimensions_rejected() {
        let q = Field::rationals();
        let o = octonions_q();
        let quat = CompositionAlgebra::doubled(&q, &[q.from_i64(-1), q.from_i64(-1)]).unwrap();
        assert!(matches!(
            o.product(o.unit(), quat.unit()),
            Err(AlgebraError::Mismatch { expected: 8, got: 4 })
        ));
    }

    #[test]
    fn octonion_identities_sampled() {
        let o = octonions_q();
        let q = o.field().clone();
        let mut s = Sampler::new(11);
        for _ in 0..50 {
            let x = s.vector(&q, 8);
            let y = s.vector(&q, 8);
            let xy = o.mul(&x, &y);
            assert_eq!(o.norm_unchecked(&xy), &o.norm_unchecked(&x) * &o.norm_unchecked(&y));
            assert_eq!(o.mul(&x, &o.conj(&x)), o.table().scalar(&o.norm_unchecked(&x)));
            assert_eq!(o.conj(&xy), o.mul(&o.conj(&y), &o.conj(&x)));
            assert_eq!(o.mul(&x, &o.mul(&x, &y)), o.mul(&o.mul(&x, &x), &y));
        }
    }
}
