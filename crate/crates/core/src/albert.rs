//! Albert algebras: the first Tits construction `J(D, μ)` on `D ⊕ D ⊕ D` and
//! the reduced algebras `H3(C, Γ)` of Γ-hermitian matrices over an octonion
//! algebra.
//!
//! The Tits product is
//!
//! ```text
//! (x,y,z)(x',y',z') = ½( xx' + x'x + (yz')~ + (y'z)~,
//!                        x̃y' + x̃'y + μ⁻¹ z×z',
//!                        zx̃' + z'x̃ + μ y×y' )
//! ```
//!
//! and its norm is `N_D(x) + μN_D(y) + μ⁻¹N_D(z) - T_D(xyz)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::composition::CompositionAlgebra;
use crate::csa3::DegreeThreeAlgebra;
use crate::error::{AlgebraError, Result};
pub use crate::cubic::TrilinearNormForm;
use crate::field::{Field, FieldElement};
use crate::jordan::{to_strings, JordanAlgebra};
use crate::linalg::{self, ExactMatrix, Vector};
use crate::sample::Sampler;
use crate::table::AlgebraTable;

/// A Jordan algebra together with a cubic norm evaluator.
pub trait NormedJordan: Sync {
    fn jordan(&self) -> &JordanAlgebra;

    fn norm(&self, x: &[FieldElement]) -> Result<FieldElement>;

    /// Full polarization of the norm on basis triples.
    fn polarize_norm(&self) -> Result<TrilinearNormForm> {
        let j = self.jordan();
        // surface evaluator errors before the (infallible) polarization loop
        self.norm(j.unit())?;
        let zero = j.field().zero();
        Ok(TrilinearNormForm::polarize(j.field(), j.dim(), |x| {
            self.norm(x).unwrap_or_else(|_| zero.clone())
        }))
    }
}

impl NormedJordan for JordanAlgebra {
    fn jordan(&self) -> &JordanAlgebra {
        self
    }

    fn norm(&self, x: &[FieldElement]) -> Result<FieldElement> {
        JordanAlgebra::norm(self, x)
    }
}

#[derive(Clone, Debug)]
pub struct TitsFirstAlbert {
    d: DegreeThreeAlgebra,
    mu: FieldElement,
    mu_inv: FieldElement,
    jordan: JordanAlgebra,
}

impl TitsFirstAlbert {
    pub fn new(d: DegreeThreeAlgebra, mu: &FieldElement) -> Result<Self> {
        if mu.field() != d.field() {
            return Err(AlgebraError::DegenerateParameter(
                "μ must lie in the base field of D".into(),
            ));
        }
        if mu.is_zero() {
            return Err(AlgebraError::DegenerateParameter("μ must be nonzero".into()));
        }
        let field = d.field().clone();
        let mu_inv = mu.inv()?;
        let labels = (1..=3)
            .flat_map(|s| d.table().labels().iter().map(move |l| format!("{s}.{l}")))
            .collect();
        let mut unit = d.unit().clone();
        unit.extend(linalg::zeros(&field, 18));
        let table = AlgebraTable::from_fn(&field, labels, unit, |i, j| {
            let ei = linalg::basis_vector(&field, 27, i);
            let ej = linalg::basis_vector(&field, 27, j);
            Ok(tits_product(&d, mu, &mu_inv, &ei, &ej))
        })?;
        Ok(TitsFirstAlbert {
            jordan: JordanAlgebra::new(table)?,
            d,
            mu: mu.clone(),
            mu_inv,
        })
    }

    pub fn d(&self) -> &DegreeThreeAlgebra {
        &self.d
    }

    pub fn mu(&self) -> &FieldElement {
        &self.mu
    }

    pub fn field(&self) -> &Field {
        self.d.field()
    }

    pub fn split(a: &[FieldElement]) -> (&[FieldElement], &[FieldElement], &[FieldElement]) {
        (&a[..9], &a[9..18], &a[18..27])
    }

    pub fn join(x: &[FieldElement], y: &[FieldElement], z: &[FieldElement]) -> Vector {
        x.iter().chain(y).chain(z).cloned().collect()
    }

    /// The product evaluated straight from the defining formula.
    pub fn product_direct(&self, a: &[FieldElement], b: &[FieldElement]) -> Result<Vector> {
        self.jordan.check_len(a)?;
        self.jordan.check_len(b)?;
        Ok(tits_product(&self.d, &self.mu, &self.mu_inv, a, b))
    }

    /// `N_D(x) + μN_D(y) + μ⁻¹N_D(z) - T_D(xyz)`.
    pub fn albert_norm(&self, a: &[FieldElement]) -> Result<FieldElement> {
        self.jordan.check_len(a)?;
        let d = &self.d;
        let (x, y, z) = Self::split(a);
        let mut n = d.norm_unchecked(x);
        n += &(&self.mu * &d.norm_unchecked(y));
        n += &(&self.mu_inv * &d.norm_unchecked(z));
        n -= &d.trace_unchecked(&d.mul(&d.mul(x, y), z));
        Ok(n)
    }
}

fn tits_product(
    d: &DegreeThreeAlgebra,
    mu: &FieldElement,
    mu_inv: &FieldElement,
    a: &[FieldElement],
    b: &[FieldElement],
) -> Vector {
    let (x, y, z) = TitsFirstAlbert::split(a);
    let (x2, y2, z2) = TitsFirstAlbert::split(b);
    let half = d.field().from_i64(2).inv().expect("characteristic is not 2");
    let first = linalg::add(
        &linalg::add(&d.mul(x, x2), &d.mul(x2, x)),
        &linalg::add(
            &d.tilde_unchecked(&d.mul(y, z2)),
            &d.tilde_unchecked(&d.mul(y2, z)),
        ),
    );
    let (xt, x2t) = (d.tilde_unchecked(x), d.tilde_unchecked(x2));
    let second = linalg::add(
        &linalg::add(&d.mul(&xt, y2), &d.mul(&x2t, y)),
        &linalg::scale(mu_inv, &d.cross_unchecked(z, z2)),
    );
    let third = linalg::add(
        &linalg::add(&d.mul(z, &x2t), &d.mul(z2, &xt)),
        &linalg::scale(mu, &d.cross_unchecked(y, y2)),
    );
    linalg::scale(&half, &TitsFirstAlbert::join(&first, &second, &third))
}

impl NormedJordan for TitsFirstAlbert {
    fn jordan(&self) -> &JordanAlgebra {
        &self.jordan
    }

    fn norm(&self, x: &[FieldElement]) -> Result<FieldElement> {
        self.albert_norm(x)
    }
}

/// `3×3` matrix with entries in a composition algebra.
pub type OctonionMatrix = [[Vector; 3]; 3];

#[derive(Clone, Debug)]
pub struct ReducedAlbert {
    c: CompositionAlgebra,
    gamma: [FieldElement; 3],
    jordan: JordanAlgebra,
}

impl ReducedAlbert {
    /// `H3(C, Γ)` with basis `(ξ1, ξ2, ξ3, c1, c2, c3)`.
    pub fn new(c: CompositionAlgebra, gamma: [FieldElement; 3]) -> Result<Self> {
        if c.dim() != 8 {
            return Err(AlgebraError::Mismatch {
                expected: 8,
                got: c.dim(),
            });
        }
        for (i, g) in gamma.iter().enumerate() {
            if g.is_zero() {
                return Err(AlgebraError::DegenerateParameter(format!(
                    "γ{} must be nonzero",
                    i + 1
                )));
            }
            if g.field() != c.field() {
                return Err(AlgebraError::DegenerateParameter(format!(
                    "γ{} must lie in the base field",
                    i + 1
                )));
            }
        }
        let field = c.field().clone();
        let mut labels: Vec<String> = (1..=3).map(|i| format!("xi{i}")).collect();
        for s in 1..=3 {
            for l in c.table().labels() {
                labels.push(format!("c{s}.{l}"));
            }
        }
        let mut unit = linalg::zeros(&field, 27);
        for u in unit.iter_mut().take(3) {
            *u = field.one();
        }
        let model = MatrixModel { c: &c, gamma: &gamma };
        let half = field.from_i64(2).inv()?;
        let table = AlgebraTable::from_fn(&field, labels, unit, |i, j| {
            let x = model.to_matrix(&linalg::basis_vector(&field, 27, i));
            let y = model.to_matrix(&linalg::basis_vector(&field, 27, j));
            let sum = model.add(&model.mul(&x, &y), &model.mul(&y, &x));
            let coords = model.from_matrix(&sum).map_err(|e| match e {
                AlgebraError::Internal(msg) => AlgebraError::Internal(format!(
                    "anticommutator of basis pair ({i}, {j}) leaves H3: {msg}"
                )),
                other => other,
            })?;
            Ok(linalg::scale(&half, &coords))
        })?;
        Ok(ReducedAlbert {
            jordan: JordanAlgebra::new(table)?,
            c,
            gamma,
        })
    }

    pub fn c(&self) -> &CompositionAlgebra {
        &self.c
    }

    pub fn gamma(&self) -> &[FieldElement; 3] {
        &self.gamma
    }

    pub fn field(&self) -> &Field {
        self.c.field()
    }

    fn model(&self) -> MatrixModel<'_> {
        MatrixModel {
            c: &self.c,
            gamma: &self.gamma,
        }
    }

    /// The hermitian matrix of a coordinate vector.
    pub fn to_matrix(&self, x: &[FieldElement]) -> Result<OctonionMatrix> {
        self.jordan.check_len(x)?;
        Ok(self.model().to_matrix(x))
    }

    /// Coordinates of a matrix, checking that it is Γ-hermitian.
    pub fn from_matrix(&self, m: &OctonionMatrix) -> Result<Vector> {
        self.model().from_matrix(m)
    }

    /// The map `X ↦ P X Pᵀ` where `P e_j = e_perm[j]`, as a `27×27`
    /// matrix. Fails if the image of some basis matrix is not Γ-hermitian.
    pub fn permutation_operator(&self, perm: [usize; 3]) -> Result<ExactMatrix> {
        let mut seen = [false; 3];
        for &p in &perm {
            if p >= 3 || seen[p] {
                return Err(AlgebraError::DegenerateParameter(format!(
                    "{perm:?} is not a permutation of 0..3"
                )));
            }
            seen[p] = true;
        }
        let field = self.field().clone();
        let model = self.model();
        let mut columns = Vec::with_capacity(27);
        for i in 0..27 {
            let x = model.to_matrix(&linalg::basis_vector(&field, 27, i));
            let zero = self.c.table().zero();
            let mut y: OctonionMatrix =
                std::array::from_fn(|_| std::array::from_fn(|_| zero.clone()));
            for r in 0..3 {
                for s in 0..3 {
                    y[perm[r]][perm[s]] = x[r][s].clone();
                }
            }
            columns.push(model.from_matrix(&y)?);
        }
        Ok(ExactMatrix::from_columns(&field, &columns)?)
    }
}

/// Borrowed view used to move between coordinates and matrices.
struct MatrixModel<'a> {
    c: &'a CompositionAlgebra,
    gamma: &'a [FieldElement; 3],
}

impl MatrixModel<'_> {
    fn ratio(&self, i: usize, j: usize) -> FieldElement {
        // γ_i⁻¹ γ_j
        self.gamma[j]
            .checked_div(&self.gamma[i])
            .expect("γ entries are nonzero")
    }

    /// Slot `k` (0-based) sits at position `(k+1, k+2)` mod 3.
    fn slot_position(k: usize) -> (usize, usize) {
        ((k + 1) % 3, (k + 2) % 3)
    }

    /// The hermitian matrix of a coordinate vector.
    fn to_matrix(&self, x: &[FieldElement]) -> OctonionMatrix {
        let c = &self.c;
        let zero = c.table().zero();
        let mut m: OctonionMatrix = std::array::from_fn(|_| std::array::from_fn(|_| zero.clone()));
        for i in 0..3 {
            m[i][i] = c.table().scalar(&x[i]);
        }
        for k in 0..3 {
            let ck = &x[3 + 8 * k..11 + 8 * k];
            let (r, s) = Self::slot_position(k);
            m[r][s] = ck.to_vec();
            // X[s][r] = γ_s⁻¹ γ_r c̄_k
            m[s][r] = linalg::scale(&self.ratio(s, r), &c.conj(ck));
        }
        m
    }

    /// Coordinates of a matrix, checking that it is Γ-hermitian.
    fn from_matrix(&self, m: &OctonionMatrix) -> Result<Vector> {
        let c = &self.c;
        let field = c.field();
        let mut out = Vec::with_capacity(27);
        for (i, row) in m.iter().enumerate() {
            let entry = &row[i];
            let xi = c
                .unit()
                .iter()
                .position(|u| !u.is_zero())
                .map(|p| entry[p].checked_div(&c.unit()[p]))
                .transpose()?
                .unwrap_or_else(|| field.zero());
            if &c.table().scalar(&xi) != entry {
                return Err(AlgebraError::Internal(format!(
                    "diagonal entry {i} is not a scalar"
                )));
            }
            out.push(xi);
        }
        for k in 0..3 {
            let (r, s) = Self::slot_position(k);
            let expected = linalg::scale(&self.ratio(s, r), &c.conj(&m[r][s]));
            if expected != m[s][r] {
                return Err(AlgebraError::Internal(format!(
                    "entries ({r}, {s}) and ({s}, {r}) are not Γ-conjugate"
                )));
            }
            out.extend(m[r][s].iter().cloned());
        }
        Ok(out)
    }

    fn mul(&self, x: &OctonionMatrix, y: &OctonionMatrix) -> OctonionMatrix {
        std::array::from_fn(|r| {
            std::array::from_fn(|s| {
                let mut acc = self.c.table().zero();
                for k in 0..3 {
                    if linalg::is_zero(&x[r][k]) || linalg::is_zero(&y[k][s]) {
                        continue;
                    }
                    acc = linalg::add(&acc, &self.c.mul(&x[r][k], &y[k][s]));
                }
                acc
            })
        })
    }

    fn add(&self, x: &OctonionMatrix, y: &OctonionMatrix) -> OctonionMatrix {
        std::array::from_fn(|r| std::array::from_fn(|s| linalg::add(&x[r][s], &y[r][s])))
    }

}

impl NormedJordan for ReducedAlbert {
    fn jordan(&self) -> &JordanAlgebra {
        &self.jordan
    }

    fn norm(&self, x: &[FieldElement]) -> Result<FieldElement> {
        self.jordan.norm(x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisionProbeReport {
    pub trials: u64,
    /// A nonzero element of norm zero, if one was found.
    pub counterexample: Option<Vec<String>>,
    /// Number of sampled elements whose generated subalgebra was examined.
    pub subalgebras_checked: u64,
    /// How many of those were cubic fields.
    pub cubic_fields: u64,
}

impl DivisionProbeReport {
    pub fn found_counterexample(&self) -> bool {
        self.counterexample.is_some()
    }
}

/// Searches for nonzero elements of norm zero: first among basis vectors,
/// then among `trials` seeded random elements. Each random element with
/// nonzero norm also has its generated subalgebra examined. Finding nothing
/// is evidence, not proof, of division.
pub fn division_probe<A: NormedJordan + ?Sized>(
    algebra: &A,
    trials: u64,
    seed: u64,
) -> Result<DivisionProbeReport> {
    let j = algebra.jordan();
    let field = j.field();
    for i in 0..j.dim() {
        let e = j.table().basis(i);
        if algebra.norm(&e)?.is_zero() {
            return Ok(DivisionProbeReport {
                trials: 0,
                counterexample: Some(to_strings(&e)),
                subalgebras_checked: 0,
                cubic_fields: 0,
            });
        }
    }
    enum Outcome {
        Zero(Vector),
        Sub(bool),
        Skip,
    }
    let outcomes: Vec<(u64, Outcome)> = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<(u64, Outcome)> {
            let mut s = Sampler::derived(seed, "probe", t);
            let x = s.vector(field, j.dim());
            if linalg::is_zero(&x) {
                return Ok((t, Outcome::Skip));
            }
            if algebra.norm(&x)?.is_zero() {
                return Ok((t, Outcome::Zero(x)));
            }
            let g = j.subalgebra_generated(&x)?;
            Ok((t, Outcome::Sub(g.dimension == 3 && g.is_field)))
        })
        .collect::<Result<_>>()?;
    let mut report = DivisionProbeReport {
        trials,
        counterexample: None,
        subalgebras_checked: 0,
        cubic_fields: 0,
    };
    for (t, o) in outcomes {
        match o {
            Outcome::Zero(x) => {
                report.trials = t + 1;
                report.counterexample = Some(to_strings(&x));
                break;
            }
            Outcome::Sub(cubic) => {
                report.subalgebras_checked += 1;
                report.cubic_fields += u64::from(cubic);
            }
            Outcome::Skip => {}
        }
    }
    Ok(report)
}
