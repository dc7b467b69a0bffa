//! Finite-dimensional Jordan algebras and the degree-3 generic machinery:
//! generic trace/norm, adjoint, inverse, U-operators, isotopes and the
//! subalgebra generated by one element.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::field::{poly, roots, Field, FieldElement};
use crate::linalg::{self, ExactMatrix, Solution, Vector};
use crate::sample::Sampler;
use crate::table::AlgebraTable;

/// Coefficients of `a³ - T a² + S a - N·1 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericCoefficients {
    pub t: FieldElement,
    pub s: FieldElement,
    pub n: FieldElement,
}

#[derive(Clone, Debug)]
pub struct JordanAlgebra {
    table: AlgebraTable,
    trace_functional: OnceLock<std::result::Result<Vector, AlgebraError>>,
}

/// A sampled pair with a nonzero Jordan-identity residual.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityViolation {
    pub sample: u64,
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub residual: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub samples: u64,
    pub violations: Vec<IdentityViolation>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The span of the powers of one element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedSubalgebra {
    /// `1, a, ..., a^(d-1)`.
    pub basis: Vec<Vector>,
    pub dimension: usize,
    /// Monic, coefficients low to high.
    pub minimal_polynomial: Vec<FieldElement>,
    /// Whether the minimal polynomial is irreducible, i.e. the subalgebra is
    /// a field.
    pub is_field: bool,
}

pub fn to_strings(v: &[FieldElement]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

impl JordanAlgebra {
    /// Wraps a table after checking commutativity and the unit on all basis
    /// vectors.
    pub fn new(table: AlgebraTable) -> Result<Self> {
        table.check_commutative()?;
        table.check_unit()?;
        Ok(JordanAlgebra {
            table,
            trace_functional: OnceLock::new(),
        })
    }

    /// `B⁺`: the same space with `x∘y = (xy + yx)/2`.
    pub fn plus_construction(b: &AlgebraTable) -> Result<Self> {
        b.check_associative()?;
        let field = b.field();
        let half = field.from_i64(2).inv()?;
        let table = AlgebraTable::from_fn(field, b.labels().to_vec(), b.unit().clone(), |i, j| {
            let (ei, ej) = (b.basis(i), b.basis(j));
            Ok(linalg::scale(&half, &linalg::add(&b.mul(&ei, &ej), &b.mul(&ej, &ei))))
        })?;
        Self::new(table)
    }

    pub fn table(&self) -> &AlgebraTable {
        &self.table
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

    pub fn check_len(&self, x: &[FieldElement]) -> Result<()> {
        self.table.check_len(x)
    }

    pub fn product(&self, x: &[FieldElement], y: &[FieldElement]) -> Result<Vector> {
        self.table.product(x, y)
    }

    pub fn mul(&self, x: &[FieldElement], y: &[FieldElement]) -> Vector {
        self.table.mul(x, y)
    }

    /// `(x∘y)∘(x∘x) - x∘(y∘(x∘x))`.
    pub fn jordan_residual(&self, x: &[FieldElement], y: &[FieldElement]) -> Vector {
        let xx = self.mul(x, x);
        let lhs = self.mul(&self.mul(x, y), &xx);
        let rhs = self.mul(x, &self.mul(y, &xx));
        linalg::sub(&lhs, &rhs)
    }

    /// Evaluates the Jordan identity on `samples` seeded random pairs. Each
    /// sample draws from its own derived stream, so results do not depend on
    /// scheduling.
    pub fn jordan_identity_suite(&self, samples: u64, seed: u64) -> IdentityReport {
        let field = self.field();
        let mut violations: Vec<IdentityViolation> = (0..samples)
            .into_par_iter()
            .filter_map(|i| {
                let mut s = Sampler::derived(seed, "jordan", i);
                let x = s.vector(field, self.dim());
                let y = s.vector(field, self.dim());
                let r = self.jordan_residual(&x, &y);
                (!linalg::is_zero(&r)).then(|| IdentityViolation {
                    sample: i,
                    x: to_strings(&x),
                    y: to_strings(&y),
                    residual: to_strings(&r),
                })
            })
            .collect();
        violations.sort_by_key(|v| v.sample);
        IdentityReport {
            samples,
            violations,
        }
    }

    /// `λ` if `x = λ·1`.
    fn as_scalar(&self, x: &[FieldElement]) -> Option<FieldElement> {
        let unit = self.unit();
        let i = unit.iter().position(|c| !c.is_zero())?;
        let lambda = x[i].checked_div(&unit[i]).ok()?;
        (linalg::scale(&lambda, unit) == x).then_some(lambda)
    }

    /// Solves `a³ = T a² - S a + N·1` over the span of `1, a, a²`; `None`
    /// when the span is degenerate.
    fn solve_coeffs(&self, a: &[FieldElement]) -> Result<Option<GenericCoefficients>> {
        let a2 = self.mul(a, a);
        let a3 = self.mul(a, &a2);
        let m = ExactMatrix::from_columns(self.field(), &[self.unit().clone(), a.to_vec(), a2])?;
        match m.solve(&a3)? {
            Solution::Unique(v) => Ok(Some(GenericCoefficients {
                n: v[0].clone(),
                s: -v[1].clone(),
                t: v[2].clone(),
            })),
            Solution::Underdetermined { .. } => Ok(None),
            Solution::Inconsistent => Err(AlgebraError::NotDegreeThree),
        }
    }

    /// The generic trace as a linear functional, found by differencing the
    /// trace of generic elements.
    pub fn trace_functional(&self) -> Result<&Vector> {
        self.trace_functional
            .get_or_init(|| self.compute_trace_functional())
            .as_ref()
            .map_err(|e| e.clone())
    }

    fn compute_trace_functional(&self) -> Result<Vector> {
        let field = self.field();
        let n = self.dim();
        if n == 1 {
            return Ok(vec![field.from_i64(3).checked_div(&self.unit()[0])?]);
        }
        let mut sampler = Sampler::new(0x7472_6163_6566_6e63);
        'attempt: for _ in 0..64 {
            let r = sampler.vector(field, n);
            let Some(base) = self.solve_coeffs(&r)? else {
                continue;
            };
            let mut functional = Vec::with_capacity(n);
            for i in 0..n {
                let mut ri = r.clone();
                ri[i] += &field.one();
                let Some(c) = self.solve_coeffs(&ri)? else {
                    continue 'attempt;
                };
                functional.push(&c.t - &base.t);
            }
            return Ok(functional);
        }
        Err(AlgebraError::NotDegreeThree)
    }

    /// Generic trace `T(x)`.
    pub fn generic_trace(&self, x: &[FieldElement]) -> Result<FieldElement> {
        self.check_len(x)?;
        Ok(linalg::dot(self.trace_functional()?, x))
    }

    /// `(T, S, N)` of the generic cubic polynomial of `a`.
    ///
    /// Generic elements are handled by the linear solve. When `1, a, a²` are
    /// dependent, the coefficients come from the trace functional through
    /// Newton's identities: `S = (T(a)² - T(a²))/2` and
    /// `N = (T(a³) - T(a)T(a²) + S T(a))/3`.
    pub fn generic_coeffs(&self, a: &[FieldElement]) -> Result<GenericCoefficients> {
        self.check_len(a)?;
        let field = self.field();
        if let Some(l) = self.as_scalar(a) {
            let three = field.from_i64(3);
            return Ok(GenericCoefficients {
                t: &three * &l,
                s: &three * &(&l * &l),
                n: l.pow(3),
            });
        }
        if let Some(c) = self.solve_coeffs(a)? {
            return Ok(c);
        }
        let tf = self.trace_functional()?;
        let a2 = self.mul(a, a);
        let a3 = self.mul(a, &a2);
        let (p1, p2, p3) = (linalg::dot(tf, a), linalg::dot(tf, &a2), linalg::dot(tf, &a3));
        let s = (&(&p1 * &p1) - &p2).checked_div(&field.from_i64(2))?;
        let n = (&(&p3 - &(&p1 * &p2)) + &(&s * &p1)).checked_div(&field.from_i64(3))?;
        Ok(GenericCoefficients { t: p1, s, n })
    }

    pub fn norm(&self, a: &[FieldElement]) -> Result<FieldElement> {
        Ok(self.generic_coeffs(a)?.n)
    }

    /// `a# = a² - T(a) a + S(a)·1`.
    pub fn adjoint(&self, a: &[FieldElement]) -> Result<Vector> {
        let c = self.generic_coeffs(a)?;
        Ok(self.adjoint_with(a, &c))
    }

    fn adjoint_with(&self, a: &[FieldElement], c: &GenericCoefficients) -> Vector {
        let mut out = linalg::sub(&self.mul(a, a), &linalg::scale(&c.t, a));
        for (o, u) in out.iter_mut().zip(self.unit()) {
            if !u.is_zero() {
                *o += &(&c.s * u);
            }
        }
        out
    }

    /// `a⁻¹ = a# / N(a)`.
    pub fn inverse(&self, a: &[FieldElement]) -> Result<Vector> {
        let c = self.generic_coeffs(a)?;
        if c.n.is_zero() {
            return Err(AlgebraError::NotInvertible);
        }
        let inv = c.n.inv()?;
        Ok(linalg::scale(&inv, &self.adjoint_with(a, &c)))
    }

    /// Matrix of `x ↦ 2p∘(p∘x) - (p∘p)∘x`.
    pub fn u_operator(&self, p: &[FieldElement]) -> Result<ExactMatrix> {
        self.check_len(p)?;
        let lp = self.table.left_mul_matrix(p);
        let lp2 = self.table.left_mul_matrix(&self.mul(p, p));
        let two = self.field().from_i64(2);
        Ok(lp.mul(&lp)?.scale(&two).add(&lp2.scale(&self.field().from_i64(-1)))?)
    }

    /// `x ·_p y = x∘(y∘p) + y∘(x∘p) - (x∘y)∘p`.
    pub fn isotope_product(
        &self,
        p: &[FieldElement],
        x: &[FieldElement],
        y: &[FieldElement],
    ) -> Result<Vector> {
        self.check_len(p)?;
        self.check_len(x)?;
        self.check_len(y)?;
        let a = self.mul(x, &self.mul(y, p));
        let b = self.mul(y, &self.mul(x, p));
        let c = self.mul(&self.mul(x, y), p);
        Ok(linalg::sub(&linalg::add(&a, &b), &c))
    }

    /// The isotope `A⁽ᵖ⁾`, whose unit is `p⁻¹`.
    pub fn isotope(&self, p: &[FieldElement]) -> Result<JordanAlgebra> {
        let unit = self.inverse(p)?;
        let lp = self.table.left_mul_matrix(p);
        let columns: Vec<Vector> = (0..self.dim()).map(|j| lp.column(j)).collect();
        let table = AlgebraTable::from_fn(self.field(), self.table.labels().to_vec(), unit, |i, j| {
            let ei = self.table.basis(i);
            let ej = self.table.basis(j);
            let a = self.mul(&ei, &columns[j]);
            let b = self.mul(&ej, &columns[i]);
            let c = lp.mul_vec(&self.mul(&ei, &ej))?;
            Ok(linalg::sub(&linalg::add(&a, &b), &c))
        })?;
        JordanAlgebra::new(table)
    }

    /// Basis `1, a, a², ...` of the subalgebra generated by `a`, with the
    /// minimal polynomial of `a`.
    pub fn subalgebra_generated(&self, a: &[FieldElement]) -> Result<GeneratedSubalgebra> {
        self.check_len(a)?;
        let field = self.field();
        let mut powers = vec![self.unit().clone()];
        loop {
            let next = self.mul(a, powers.last().expect("nonempty"));
            let m = ExactMatrix::from_columns(field, &powers)?;
            match m.solve(&next)? {
                Solution::Unique(c) => {
                    let mut minpoly: Vec<FieldElement> = c.iter().map(|x| -x.clone()).collect();
                    minpoly.push(field.one());
                    let is_field = minpoly.len() <= 2
                        || roots::is_irreducible_low_degree(field, &minpoly)?;
                    let dimension = powers.len();
                    return Ok(GeneratedSubalgebra {
                        basis: powers,
                        dimension,
                        minimal_polynomial: minpoly,
                        is_field,
                    });
                }
                Solution::Inconsistent if powers.len() < 3 => powers.push(next),
                _ => return Err(AlgebraError::NotDegreeThree),
            }
        }
    }

    /// Display form of a minimal polynomial.
    pub fn format_polynomial(p: &[FieldElement]) -> String {
        poly::format_poly(p, "t")
    }
}

impl PartialEq for JordanAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.table.to_json() == other.table.to_json()
    }
}
