//! Structure-group predicates on linear operators: norm similarity with its
//! multiplier, automorphism, isotopy with recovery of `p`, and composition.
//!
//! Similarity is decided exactly by pulling back the polarized norm:
//! `g` is a similarity with multiplier `ν = N(g(1))` iff
//! `Θ(g e_a, g e_b, g e_c) = ν Θ(e_a, e_b, e_c)` on every basis triple.

use crate::albert::{NormedJordan, TrilinearNormForm};
use crate::error::{AlgebraError, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::{self, ExactMatrix, Vector};

/// A linear self-map of an algebra, acting on coordinate columns.
pub type LinearOperator = ExactMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimilarityVerdict {
    pub is_similarity: bool,
    /// Present iff `is_similarity`.
    pub multiplier: Option<FieldElement>,
}

impl SimilarityVerdict {
    fn negative() -> Self {
        SimilarityVerdict {
            is_similarity: false,
            multiplier: None,
        }
    }
}

/// An algebra paired with its polarized norm.
pub struct StructureGroup<'a, A: NormedJordan + ?Sized> {
    algebra: &'a A,
    form: TrilinearNormForm,
}

impl<'a, A: NormedJordan + ?Sized> StructureGroup<'a, A> {
    pub fn new(algebra: &'a A) -> Result<Self> {
        let form = algebra.polarize_norm()?;
        Ok(StructureGroup { algebra, form })
    }

    /// Reuses a previously computed polarization.
    pub fn with_form(algebra: &'a A, form: TrilinearNormForm) -> Result<Self> {
        let dim = algebra.jordan().dim();
        if form.dim() != dim {
            return Err(AlgebraError::Mismatch {
                expected: dim,
                got: form.dim(),
            });
        }
        Ok(StructureGroup { algebra, form })
    }

    pub fn algebra(&self) -> &A {
        self.algebra
    }

    pub fn form(&self) -> &TrilinearNormForm {
        &self.form
    }

    fn field(&self) -> &Field {
        self.algebra.jordan().field()
    }

    fn dim(&self) -> usize {
        self.algebra.jordan().dim()
    }

    fn check_operator(&self, g: &LinearOperator) -> Result<()> {
        let n = self.dim();
        if g.rows() != n || g.cols() != n {
            return Err(AlgebraError::Mismatch {
                expected: n,
                got: if g.rows() != n { g.rows() } else { g.cols() },
            });
        }
        if g.field() != self.field() {
            return Err(AlgebraError::DegenerateParameter(
                "operator is defined over a different field".into(),
            ));
        }
        Ok(())
    }

    /// `λ·id`.
    pub fn homothety(&self, lambda: &FieldElement) -> LinearOperator {
        ExactMatrix::scalar(self.field(), self.dim(), lambda)
    }

    /// Exact similarity test with `ν = N(g(1))`.
    pub fn similarity_check(&self, g: &LinearOperator) -> Result<SimilarityVerdict> {
        self.check_operator(g)?;
        if g.det()?.is_zero() {
            return Ok(SimilarityVerdict::negative());
        }
        let unit = self.algebra.jordan().unit();
        let nu = self.algebra.norm(&g.mul_vec(unit)?)?;
        if nu.is_zero() {
            return Ok(SimilarityVerdict::negative());
        }
        let ok = self.pullback_matches(g, &nu);
        Ok(if ok {
            SimilarityVerdict {
                is_similarity: true,
                multiplier: Some(nu),
            }
        } else {
            SimilarityVerdict::negative()
        })
    }

    /// Compares `Θ(g·, g·, g·)` with `ν Θ` on all sorted basis triples,
    /// contracting one argument at a time.
    fn pullback_matches(&self, g: &LinearOperator, nu: &FieldElement) -> bool {
        let n = self.dim();
        let field = self.field();
        let zero = field.zero();
        // every ordered nonzero entry of Θ
        let mut ordered: Vec<(usize, usize, usize, &FieldElement)> = Vec::new();
        for (i, j, k, v) in self.form.entries() {
            let (i, j, k) = (*i, *j, *k);
            let mut perms = vec![(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)];
            perms.sort_unstable();
            perms.dedup();
            ordered.extend(perms.into_iter().map(|(a, b, c)| (a, b, c, v)));
        }
        let idx3 = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
        // t1[i][j][c] = sum_k Θ_ijk g_kc
        let mut t1 = vec![zero.clone(); n * n * n];
        for &(i, j, k, v) in &ordered {
            for c in 0..n {
                let gkc = g.get(k, c);
                if !gkc.is_zero() {
                    t1[idx3(i, j, c)] += &(v * gkc);
                }
            }
        }
        // t2[i][b][c] = sum_j t1[i][j][c] g_jb, kept for b <= c
        let mut t2 = vec![zero.clone(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                for c in 0..n {
                    let t = &t1[idx3(i, j, c)];
                    if t.is_zero() {
                        continue;
                    }
                    for b in 0..=c {
                        let gjb = g.get(j, b);
                        if !gjb.is_zero() {
                            t2[idx3(i, b, c)] += &(t * gjb);
                        }
                    }
                }
            }
        }
        drop(t1);
        // t3[a][b][c] = sum_i t2[i][b][c] g_ia for a <= b <= c
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    let mut acc = zero.clone();
                    for i in 0..n {
                        let gia = g.get(i, a);
                        let t = &t2[idx3(i, b, c)];
                        if !gia.is_zero() && !t.is_zero() {
                            acc += &(t * gia);
                        }
                    }
                    if acc != nu * self.form.entry(a, b, c) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `g(1) = 1` and `g(e_i∘e_j) = g(e_i)∘g(e_j)` on all basis pairs.
    pub fn automorphism_check(&self, g: &LinearOperator) -> Result<bool> {
        self.check_operator(g)?;
        let j = self.algebra.jordan();
        if &g.mul_vec(j.unit())? != j.unit() {
            return Ok(false);
        }
        let images: Vec<Vector> = (0..self.dim()).map(|i| g.column(i)).collect();
        for a in 0..self.dim() {
            for b in a..self.dim() {
                let lhs = self.apply_to_product(&images, a, b);
                if lhs != j.mul(&images[a], &images[b]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `g(e_a∘e_b)` from the structure constants and the columns of `g`.
    fn apply_to_product(&self, images: &[Vector], a: usize, b: usize) -> Vector {
        let mut out = linalg::zeros(self.field(), self.dim());
        for (k, c) in self.algebra.jordan().table().row(a, b) {
            for (o, x) in out.iter_mut().zip(&images[*k]) {
                if !x.is_zero() {
                    *o += &(c * x);
                }
            }
        }
        out
    }

    /// Returns `p = g(1)⁻¹` when `g` is an isomorphism from the algebra to
    /// its isotope `A⁽ᵖ⁾`, and `None` otherwise.
    pub fn isotopy_decompose(&self, g: &LinearOperator) -> Result<Option<Vector>> {
        self.check_operator(g)?;
        let j = self.algebra.jordan();
        let u = g.mul_vec(j.unit())?;
        if self.algebra.norm(&u)?.is_zero() {
            return Ok(None);
        }
        let p = j.inverse(&u)?;
        let lp = j.table().left_mul_matrix(&p);
        let images: Vec<Vector> = (0..self.dim()).map(|i| g.column(i)).collect();
        let images_p: Vec<Vector> = images
            .iter()
            .map(|x| lp.mul_vec(x))
            .collect::<std::result::Result<_, _>>()?;
        for a in 0..self.dim() {
            for b in a..self.dim() {
                let lhs = self.apply_to_product(&images, a, b);
                // x(yp) + y(xp) - (xy)p
                let xy = j.mul(&images[a], &images[b]);
                let rhs = linalg::sub(
                    &linalg::add(
                        &j.mul(&images[a], &images_p[b]),
                        &j.mul(&images[b], &images_p[a]),
                    ),
                    &lp.mul_vec(&xy)?,
                );
                if lhs != rhs {
                    return Ok(None);
                }
            }
        }
        Ok(Some(p))
    }

    /// `g ∘ h` as a matrix product.
    pub fn compose(&self, g: &LinearOperator, h: &LinearOperator) -> Result<LinearOperator> {
        self.check_operator(g)?;
        self.check_operator(h)?;
        Ok(g.mul(h)?)
    }
}

/// Parses a square operator from rows of scalar strings.
pub fn operator_from_rows(field: &Field, rows: &[Vec<String>]) -> Result<LinearOperator> {
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|s| field.parse(s)).collect::<std::result::Result<Vec<_>, _>>())
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let m = ExactMatrix::from_rows(field, parsed)?;
    if !m.is_square() {
        return Err(AlgebraError::Mismatch {
            expected: m.rows(),
            got: m.cols(),
        });
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::albert::{ReducedAlbert, TitsFirstAlbert};
    use crate::composition::CompositionAlgebra;
    use crate::csa3::DegreeThreeAlgebra;

    fn split_f7() -> TitsFirstAlbert {
        let f = Field::prime(7).unwrap();
        TitsFirstAlbert::new(DegreeThreeAlgebra::matrix3(&f), &f.one()).unwrap()
    }

    #[test]
    fn identity_and_homothety() {
        let a = split_f7();
        let f = a.field().clone();
        let sg = StructureGroup::new(&a).unwrap();
        let id = ExactMatrix::identity(&f, 27);
        let v = sg.similarity_check(&id).unwrap();
        assert_eq!(v.multiplier, Some(f.one()));
        assert!(sg.automorphism_check(&id).unwrap());
        assert_eq!(sg.isotopy_decompose(&id).unwrap(), Some(a.jordan().unit().clone()));
        let l = f.from_i64(3);
        let h = sg.homothety(&l);
        assert_eq!(sg.similarity_check(&h).unwrap().multiplier, Some(l.pow(3)));
        assert!(!sg.automorphism_check(&h).unwrap());
        let p = sg.isotopy_decompose(&h).unwrap().unwrap();
        assert_eq!(p, a.jordan().table().scalar(&l.inv().unwrap()));
        assert_eq!(sg.compose(&h, &id).unwrap(), h);
    }

    #[test]
    fn singular_operator_is_negative() {
        let a = split_f7();
        let sg = StructureGroup::new(&a).unwrap();
        let zero = ExactMatrix::zeros(a.field(), 27, 27);
        assert!(!sg.similarity_check(&zero).unwrap().is_similarity);
        let wrong = ExactMatrix::identity(a.field(), 9);
        assert!(matches!(
            sg.similarity_check(&wrong),
            Err(AlgebraError::Mismatch { expected: 27, got: 9 })
        ));
    }

    #[test]
    fn permutation_is_automorphism_of_h3() {
        let q = Field::rationals();
        let h = ReducedAlbert::new(
            CompositionAlgebra::zorn_split(&q),
            [q.one(), q.one(), q.one()],
        )
        .unwrap();
        let sg = StructureGroup::new(&h).unwrap();
        for perm in [[1, 2, 0], [1, 0, 2]] {
            let p = h.permutation_operator(perm).unwrap();
            assert!(sg.automorphism_check(&p).unwrap());
            let v = sg.similarity_check(&p).unwrap();
            assert_eq!(v.multiplier, Some(q.one()));
        }
    }

    #[test]
    fn operator_parsing() {
        let q = Field::rationals();
        let m = operator_from_rows(&q, &[vec!["1".into(), "1/2".into()], vec!["0".into(), "-3".into()]])
            .unwrap();
        assert_eq!(m.get(0, 1), &q.parse("1/2").unwrap());
        assert!(operator_from_rows(&q, &[vec!["1".into(), "2".into()]]).is_err());
    }
}
