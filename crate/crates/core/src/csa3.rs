//! Degree-3 associative algebras: the split algebra `M3(K)` and cyclic
//! algebras `(L/K, σ, b)`.
//!
//! A cyclic algebra has basis `x^i z^j` (index `3j + i`) with `z l = σ(l) z`
//! and `z³ = b`. Its splitting embedding sends `l` to `diag(l, σl, σ²l)` and
//! `z` to `[[0,1,0],[0,0,1],[b,0,0]]` over `L`; reduced trace and norm are the
//! trace and determinant of that image.

use crate::cubic::TrilinearNormForm;
use crate::error::{AlgebraError, Result};
use crate::field::{Field, FieldElement, FieldKind};
use crate::linalg::{self, Vector};
use crate::table::AlgebraTable;

#[derive(Clone, Debug)]
pub enum Csa3Kind {
    Matrix3,
    Cyclic {
        /// `L = K[x]/(modulus)`.
        extension: Field,
        /// `σ(x)` as an element of `L`.
        sigma: FieldElement,
        b: FieldElement,
    },
}

#[derive(Clone, Debug)]
struct Splitting {
    ext: Field,
    /// `sigma_pow[r][k] = σ^r(x^k)`.
    sigma_pow: [[FieldElement; 3]; 3],
    b: FieldElement,
}

#[derive(Clone, Debug)]
pub struct DegreeThreeAlgebra {
    table: AlgebraTable,
    kind: Csa3Kind,
    splitting: Option<Splitting>,
    trace_form: Vector,
    norm_form: TrilinearNormForm,
}

type Mat3 = [[FieldElement; 3]; 3];

fn det3(m: &Mat3) -> FieldElement {
    let t1 = &m[0][0] * &(&(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1]));
    let t2 = &m[0][1] * &(&(&m[1][0] * &m[2][2]) - &(&m[1][2] * &m[2][0]));
    let t3 = &m[0][2] * &(&(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0]));
    &(&t1 - &t2) + &t3
}

fn mat3_mul(a: &Mat3, b: &Mat3, zero: &FieldElement) -> Mat3 {
    std::array::from_fn(|r| {
        std::array::from_fn(|c| {
            let mut acc = zero.clone();
            for k in 0..3 {
                if !a[r][k].is_zero() && !b[k][c].is_zero() {
                    acc += &(&a[r][k] * &b[k][c]);
                }
            }
            acc
        })
    })
}

fn mat3_from(x: &[FieldElement]) -> Mat3 {
    std::array::from_fn(|r| std::array::from_fn(|c| x[3 * r + c].clone()))
}

impl Splitting {
    fn apply_sigma(&self, r: usize, l: &[FieldElement]) -> FieldElement {
        let mut acc = self.ext.zero();
        for (k, c) in l.iter().enumerate() {
            if !c.is_zero() {
                acc += &(&self.ext.embed(c) * &self.sigma_pow[r][k]);
            }
        }
        acc
    }

    /// Image of a coordinate vector in `M3(L)`.
    fn image(&self, u: &[FieldElement]) -> Mat3 {
        let zero = self.ext.zero();
        let bl = self.ext.embed(&self.b);
        let mut m: Mat3 = std::array::from_fn(|_| std::array::from_fn(|_| zero.clone()));
        for j in 0..3 {
            let l = &u[3 * j..3 * j + 3];
            if l.iter().all(|c| c.is_zero()) {
                continue;
            }
            for r in 0..3 {
                let s = self.apply_sigma(r, l);
                // row r of Z^j has a single entry
                let c = (r + j) % 3;
                let entry = if r + j >= 3 { &s * &bl } else { s };
                m[r][c] += &entry;
            }
        }
        m
    }

    fn to_base(&self, x: &FieldElement) -> Result<FieldElement> {
        x.to_base().ok_or_else(|| {
            AlgebraError::Internal(format!("splitting image value {x} does not lie in the base field"))
        })
    }
}

impl DegreeThreeAlgebra {
    /// The split algebra `M3(K)` on the matrix units `E_rc` (index `3r + c`).
    pub fn matrix3(field: &Field) -> Self {
        let labels = (1..=3)
            .flat_map(|r| (1..=3).map(move |c| format!("E{r}{c}")))
            .collect();
        let mut unit = linalg::zeros(field, 9);
        for r in 0..3 {
            unit[4 * r] = field.one();
        }
        let mut constants = Vec::new();
        for r in 0..3 {
            for c in 0..3 {
                for d in 0..3 {
                    constants.push((3 * r + c, 3 * c + d, 3 * r + d, field.one()));
                }
            }
        }
        let table = AlgebraTable::from_constants(field, labels, unit, constants)
            .expect("valid matrix-unit table");
        let mut trace_form = linalg::zeros(field, 9);
        for r in 0..3 {
            trace_form[4 * r] = field.one();
        }
        let norm_form = TrilinearNormForm::polarize(field, 9, |x| det3(&mat3_from(x)));
        DegreeThreeAlgebra {
            table,
            kind: Csa3Kind::Matrix3,
            splitting: None,
            trace_form,
            norm_form,
        }
    }

    /// The cyclic algebra `(L/K, σ, b)` where `L` is a cubic extension of
    /// `K` and `σ` is given by the image of the generator of `L`.
    pub fn cyclic(ext: &Field, sigma: &FieldElement, b: &FieldElement) -> Result<Self> {
        let base = match ext.kind() {
            FieldKind::Extension { base, modulus, .. } if modulus.len() == 4 => base.clone(),
            _ => {
                return Err(AlgebraError::InvalidAutomorphism(
                    "the extension must be cubic".into(),
                ))
            }
        };
        if sigma.field() != ext {
            return Err(AlgebraError::InvalidAutomorphism(
                "σ(x) must be an element of the extension".into(),
            ));
        }
        if b.field() != &base {
            return Err(AlgebraError::DegenerateParameter(
                "b must lie in the base field".into(),
            ));
        }
        if b.is_zero() {
            return Err(AlgebraError::DegenerateParameter("b must be nonzero".into()));
        }
        let x = ext.generator().expect("extension has a generator");
        let modulus = match ext.kind() {
            FieldKind::Extension { modulus, .. } => modulus.clone(),
            _ => unreachable!(),
        };
        let eval_in_ext = |coeffs: &[FieldElement], at: &FieldElement| {
            let mut acc = ext.zero();
            for c in coeffs.iter().rev() {
                acc = &(&acc * at) + &ext.embed(c);
            }
            acc
        };
        // σ must send x to another root of the modulus and have order 3
        if !eval_in_ext(&modulus, sigma).is_zero() {
            return Err(AlgebraError::InvalidAutomorphism(format!(
                "σ(x) = {sigma} is not a root of the modulus"
            )));
        }
        let coeffs_of = |l: &FieldElement| -> Vec<FieldElement> {
            let mut v = l.poly_coeffs().expect("extension element").to_vec();
            v.resize(3, base.zero());
            v
        };
        let apply = |l: &FieldElement| eval_in_ext(&coeffs_of(l), sigma);
        let s2 = apply(sigma);
        if sigma == &x || apply(&s2) != x {
            return Err(AlgebraError::InvalidAutomorphism(format!(
                "σ(x) = {sigma} does not define an automorphism of order 3"
            )));
        }
        let sigma_pow: [[FieldElement; 3]; 3] = std::array::from_fn(|r| {
            let image = [x.clone(), sigma.clone(), s2.clone()][r].clone();
            std::array::from_fn(|k| image.pow(k as u64))
        });

        let mut labels = Vec::with_capacity(9);
        for j in 0..3 {
            for i in 0..3 {
                let xi = match i {
                    0 => String::new(),
                    1 => "x".to_string(),
                    _ => format!("x^{i}"),
                };
                let zj = match j {
                    0 => String::new(),
                    1 => "z".to_string(),
                    _ => format!("z^{j}"),
                };
                labels.push(match (xi.is_empty(), zj.is_empty()) {
                    (true, true) => "1".to_string(),
                    (false, true) => xi,
                    (true, false) => zj,
                    (false, false) => format!("{xi}*{zj}"),
                });
            }
        }
        let mut unit = linalg::zeros(&base, 9);
        unit[0] = base.one();
        // (x^i z^j)(x^k z^m) = x^i σ^j(x^k) z^(j+m)
        let mut constants = Vec::new();
        for j in 0..3 {
            for i in 0..3 {
                for m in 0..3 {
                    for k in 0..3 {
                        let l = &x.pow(i as u64) * &sigma_pow[j][k];
                        let l = if j + m >= 3 { &l * &ext.embed(b) } else { l };
                        let coeffs = coeffs_of(&l);
                        let zpow = (j + m) % 3;
                        for (t, c) in coeffs.into_iter().enumerate() {
                            if !c.is_zero() {
                                constants.push((3 * j + i, 3 * m + k, 3 * zpow + t, c));
                            }
                        }
                    }
                }
            }
        }
        let table = AlgebraTable::from_constants(&base, labels, unit, constants)?;
        table.check_associative()?;
        let splitting = Splitting {
            ext: ext.clone(),
            sigma_pow,
            b: b.clone(),
        };
        let mut trace_form = Vec::with_capacity(9);
        for i in 0..9 {
            let m = splitting.image(&table.basis(i));
            let t = &(&m[0][0] + &m[1][1]) + &m[2][2];
            trace_form.push(splitting.to_base(&t)?);
        }
        let failure = std::sync::Mutex::new(None);
        let norm_form = TrilinearNormForm::polarize(&base, 9, |u| {
            splitting.to_base(&det3(&splitting.image(u))).unwrap_or_else(|e| {
                *failure.lock().expect("lock") = Some(e);
                base.zero()
            })
        });
        if let Some(e) = failure.into_inner().expect("lock") {
            return Err(e);
        }
        Ok(DegreeThreeAlgebra {
            table,
            kind: Csa3Kind::Cyclic {
                extension: ext.clone(),
                sigma: sigma.clone(),
                b: b.clone(),
            },
            splitting: Some(splitting),
            trace_form,
            norm_form,
        })
    }

    pub fn table(&self) -> &AlgebraTable {
        &self.table
    }

    pub fn kind(&self) -> &Csa3Kind {
        &self.kind
    }

    pub fn field(&self) -> &Field {
        self.table.field()
    }

    pub fn unit(&self) -> &Vector {
        self.table.unit()
    }

    pub fn product(&self, u: &[FieldElement], v: &[FieldElement]) -> Result<Vector> {
        self.table.product(u, v)
    }

    pub(crate) fn mul(&self, u: &[FieldElement], v: &[FieldElement]) -> Vector {
        self.table.mul(u, v)
    }

    pub(crate) fn trace_unchecked(&self, u: &[FieldElement]) -> FieldElement {
        linalg::dot(&self.trace_form, u)
    }

    pub(crate) fn norm_unchecked(&self, u: &[FieldElement]) -> FieldElement {
        self.norm_form.norm(u)
    }

    pub fn reduced_trace(&self, u: &[FieldElement]) -> Result<FieldElement> {
        self.table.check_len(u)?;
        Ok(self.trace_unchecked(u))
    }

    pub fn reduced_norm(&self, u: &[FieldElement]) -> Result<FieldElement> {
        self.table.check_len(u)?;
        Ok(self.norm_unchecked(u))
    }

    /// Reduced norm recomputed as the determinant of the splitting image
    /// (or of the matrix itself for `M3(K)`).
    pub fn reduced_norm_direct(&self, u: &[FieldElement]) -> Result<FieldElement> {
        self.table.check_len(u)?;
        match &self.splitting {
            None => Ok(det3(&mat3_from(u))),
            Some(s) => s.to_base(&det3(&s.image(u))),
        }
    }

    /// `S(u) = (T(u)² - T(u²)) / 2`.
    pub fn quadratic_trace(&self, u: &[FieldElement]) -> Result<FieldElement> {
        self.table.check_len(u)?;
        let t = self.trace_unchecked(u);
        let t2 = self.trace_unchecked(&self.mul(u, u));
        let half = self.field().from_i64(2).inv()?;
        Ok(&(&(&t * &t) - &t2) * &half)
    }

    /// `ũ = T(u)·1 - u`.
    pub fn tilde(&self, u: &[FieldElement]) -> Result<Vector> {
        self.table.check_len(u)?;
        Ok(self.tilde_unchecked(u))
    }

    pub(crate) fn tilde_unchecked(&self, u: &[FieldElement]) -> Vector {
        let mut v = linalg::neg(u);
        let t = self.trace_unchecked(u);
        for (vi, ui) in v.iter_mut().zip(self.unit()) {
            if !ui.is_zero() {
                *vi += &(&t * ui);
            }
        }
        v
    }

    /// `u × v = uv + vu - T(u)v - T(v)u - T(uv)·1 + T(u)T(v)·1`.
    pub fn cross_product(&self, u: &[FieldElement], v: &[FieldElement]) -> Result<Vector> {
        self.table.check_len(u)?;
        self.table.check_len(v)?;
        Ok(self.cross_unchecked(u, v))
    }

    pub(crate) fn cross_unchecked(&self, u: &[FieldElement], v: &[FieldElement]) -> Vector {
        let uv = self.mul(u, v);
        let vu = self.mul(v, u);
        let tu = self.trace_unchecked(u);
        let tv = self.trace_unchecked(v);
        let scalar = &(&tu * &tv) - &self.trace_unchecked(&uv);
        let mut out = linalg::add(&uv, &vu);
        for i in 0..out.len() {
            let mut c = out[i].clone();
            if !tu.is_zero() && !v[i].is_zero() {
                c -= &(&tu * &v[i]);
            }
            if !tv.is_zero() && !u[i].is_zero() {
                c -= &(&tv * &u[i]);
            }
            if !self.unit()[i].is_zero() {
                c += &(&scalar * &self.unit()[i]);
            }
            out[i] = c;
        }
        out
    }

    /// `u# = u² - T(u)u + S(u)·1`.
    pub fn adjoint(&self, u: &[FieldElement]) -> Result<Vector> {
        let s = self.quadratic_trace(u)?;
        let t = self.trace_unchecked(u);
        let mut out = linalg::sub(&self.mul(u, u), &linalg::scale(&t, u));
        out = linalg::add(&out, &self.table.scalar(&s));
        Ok(out)
    }

    /// Checks that the splitting embedding is multiplicative on all basis
    /// pairs. Trivially true for `M3(K)`.
    pub fn check_splitting_homomorphism(&self) -> Result<()> {
        let Some(s) = &self.splitting else {
            return Ok(());
        };
        let zero = s.ext.zero();
        let images: Vec<Mat3> = (0..9).map(|i| s.image(&self.table.basis(i))).collect();
        for i in 0..9 {
            for j in 0..9 {
                let lhs = s.image(&self.mul(&self.table.basis(i), &self.table.basis(j)));
                if lhs != mat3_mul(&images[i], &images[j], &zero) {
                    return Err(AlgebraError::Internal(format!(
                        "splitting embedding is not multiplicative on basis pair ({i}, {j})"
                    )));
                }
            }
        }
        let unit_image = s.image(self.unit());
        for r in 0..3 {
            for c in 0..3 {
                let expected = if r == c { s.ext.one() } else { s.ext.zero() };
                if unit_image[r][c] != expected {
                    return Err(AlgebraError::Internal("splitting image of 1 is not I".into()));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::Sampler;

    fn cyclic7() -> DegreeThreeAlgebra {
        let q = Field::rationals();
        let m: Vec<_> = [-1, -2, 1, 1].iter().map(|&n| q.from_i64(n)).collect();
        let l = Field::extension(&q, m, "x").unwrap();
        let sigma = l.parse("x^2-2").unwrap();
        DegreeThreeAlgebra::cyclic(&l, &sigma, &q.from_i64(2)).unwrap()
    }

    fn v(q: &Field, xs: &[i64]) -> Vector {
        xs.iter().map(|&n| q.from_i64(n)).collect()
    }

    #[test]
    fn matrix3_examples() {
        let q = Field::rationals();
        let d = DegreeThreeAlgebra::matrix3(&q);
        let e11 = d.table().basis(0);
        assert!(d.reduced_trace(&e11).unwrap().is_one());
        assert!(d.reduced_norm(&e11).unwrap().is_zero());
        let diag = v(&q, &[1, 0, 0, 0, 2, 0, 0, 0, 3]);
        assert_eq!(d.reduced_norm(&diag).unwrap(), q.from_i64(6));
        assert_eq!(d.reduced_trace(d.unit()).unwrap(), q.from_i64(3));
        assert!(d.reduced_norm(d.unit()).unwrap().is_one());
        assert_eq!(d.tilde(d.unit()).unwrap(), d.table().scalar(&q.from_i64(2)));
        assert_eq!(d.tilde(&e11).unwrap(), v(&q, &[0, 0, 0, 0, 1, 0, 0, 0, 1]));
        assert_eq!(d.tilde(&d.table().zero()).unwrap(), d.table().zero());
        assert_eq!(
            d.cross_product(d.unit(), d.unit()).unwrap(),
            d.table().scalar(&q.from_i64(2))
        );
        d.table().check_associative().unwrap();
    }

    #[test]
    fn cyclic_examples() {
        let d = cyclic7();
        let q = d.field().clone();
        d.check_splitting_homomorphism().unwrap();
        assert_eq!(d.table().labels()[4], "x*z");
        let z = d.table().basis(3);
        assert_eq!(d.reduced_norm(&z).unwrap(), q.from_i64(2));
        assert_eq!(d.reduced_norm_direct(&z).unwrap(), q.from_i64(2));
        // T(l z) = 0, T(x) = Tr(x) = -1
        for i in 3..9 {
            assert!(d.reduced_trace(&d.table().basis(i)).unwrap().is_zero());
        }
        assert_eq!(d.reduced_trace(&d.table().basis(1)).unwrap(), q.from_i64(-1));
        assert_eq!(d.reduced_trace(d.unit()).unwrap(), q.from_i64(3));
        assert!(d.reduced_norm(d.unit()).unwrap().is_one());
    }

    #[test]
    fn cyclic_rejects_bad_parameters() {
        let q = Field::rationals();
        let m: Vec<_> = [-1, -2, 1, 1].iter().map(|&n| q.from_i64(n)).collect();
        let l = Field::extension(&q, m, "x").unwrap();
        let x = l.generator().unwrap();
        assert!(matches!(
            DegreeThreeAlgebra::cyclic(&l, &x, &q.from_i64(2)),
            Err(AlgebraError::InvalidAutomorphism(_))
        ));
        assert!(matches!(
            DegreeThreeAlgebra::cyclic(&l, &l.parse("x^2").unwrap(), &q.from_i64(2)),
            Err(AlgebraError::InvalidAutomorphism(_))
        ));
        assert!(matches!(
            DegreeThreeAlgebra::cyclic(&l, &l.parse("x^2-2").unwrap(), &q.zero()),
            Err(AlgebraError::DegenerateParameter(_))
        ));
    }

    #[test]
    fn sampled_identities() {
        let q = Field::rationals();
        for d in [DegreeThreeAlgebra::matrix3(&q), cyclic7()] {
            let mut s = Sampler::new(3);
            for _ in 0..30 {
                let u = s.vector(&q, 9);
                let w = s.vector(&q, 9);
                let uw = d.mul(&u, &w);
                assert_eq!(
                    d.reduced_norm(&uw).unwrap(),
                    &d.reduced_norm(&u).unwrap() * &d.reduced_norm(&w).unwrap()
                );
                assert_eq!(d.reduced_norm(&u).unwrap(), d.reduced_norm_direct(&u).unwrap());
                let adj = d.adjoint(&u).unwrap();
                assert_eq!(d.mul(&u, &adj), d.table().scalar(&d.reduced_norm(&u).unwrap()));
                let two_adj = linalg::scale(&q.from_i64(2), &adj);
                assert_eq!(d.cross_product(&u, &u).unwrap(), two_adj);
                assert_eq!(d.cross_product(&u, &w).unwrap(), d.cross_product(&w, &u).unwrap());
            }
        }
    }
}
