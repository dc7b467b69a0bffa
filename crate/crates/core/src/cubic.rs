//! Cubic forms stored through their full polarization.

use rayon::prelude::*;

use crate::error::{AlgebraError, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::{self, Vector};

/// Symmetric trilinear form `Θ` with `Θ(x, x, x) = 6 N(x)`.
///
/// Entries are kept densely (all `dim³` ordered triples) for lookups, and as
/// a sparse list over `i <= j <= k` for evaluation.
#[derive(Clone, Debug)]
pub struct TrilinearNormForm {
    field: Field,
    dim: usize,
    dense: Vec<FieldElement>,
    entries: Vec<(usize, usize, usize, FieldElement)>,
    /// Monomial coefficients of `N`: `N(x) = sum c_ijk x_i x_j x_k`.
    monomials: Vec<(usize, usize, usize, FieldElement)>,
}

impl TrilinearNormForm {
    /// Polarizes `norm` on basis triples:
    /// `Θ(x,y,z) = N(x+y+z) - N(x+y) - N(x+z) - N(y+z) + N(x) + N(y) + N(z)`.
    pub fn polarize<F>(field: &Field, dim: usize, norm: F) -> Self
    where
        F: Fn(&[FieldElement]) -> FieldElement + Sync,
    {
        let unit_sum = |idx: &[usize]| {
            let mut v = linalg::zeros(field, dim);
            for &i in idx {
                v[i] += &field.one();
            }
            v
        };
        let singles: Vec<FieldElement> = (0..dim)
            .into_par_iter()
            .map(|i| norm(&unit_sum(&[i])))
            .collect();
        let pair_index: Vec<(usize, usize)> =
            (0..dim).flat_map(|i| (i..dim).map(move |j| (i, j))).collect();
        let pair_vals: Vec<FieldElement> = pair_index
            .par_iter()
            .map(|&(i, j)| norm(&unit_sum(&[i, j])))
            .collect();
        let mut pairs = vec![field.zero(); dim * dim];
        for (&(i, j), v) in pair_index.iter().zip(pair_vals) {
            pairs[i * dim + j] = v.clone();
            pairs[j * dim + i] = v;
        }
        let triples: Vec<(usize, usize, usize)> = (0..dim)
            .flat_map(|i| (i..dim).flat_map(move |j| (j..dim).map(move |k| (i, j, k))))
            .collect();
        let values: Vec<FieldElement> = triples
            .par_iter()
            .map(|&(i, j, k)| {
                let mut t = norm(&unit_sum(&[i, j, k]));
                t -= &pairs[i * dim + j];
                t -= &pairs[i * dim + k];
                t -= &pairs[j * dim + k];
                t += &singles[i];
                t += &singles[j];
                t += &singles[k];
                t
            })
            .collect();
        let entries = triples
            .into_iter()
            .zip(values)
            .filter(|(_, v)| !v.is_zero())
            .map(|((i, j, k), v)| (i, j, k, v))
            .collect();
        Self::from_entries(field, dim, entries).expect("indices in range")
    }

    /// Builds the form from its entries on `i <= j <= k` (other entries are
    /// filled in by symmetry).
    pub fn from_entries(
        field: &Field,
        dim: usize,
        entries: Vec<(usize, usize, usize, FieldElement)>,
    ) -> Result<Self> {
        let mut dense = vec![field.zero(); dim * dim * dim];
        let half = field.from_i64(2).inv()?;
        let sixth = field.from_i64(6).inv()?;
        let mut monomials = Vec::with_capacity(entries.len());
        for (i, j, k, v) in &entries {
            let (i, j, k) = (*i, *j, *k);
            if !(i <= j && j <= k && k < dim) {
                return Err(AlgebraError::InvalidTable(format!(
                    "trilinear entry ({i}, {j}, {k}) is not sorted or out of range"
                )));
            }
            for (a, b, c) in [(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)] {
                dense[(a * dim + b) * dim + c] = v.clone();
            }
            let coeff = if i == k {
                v * &sixth
            } else if i == j || j == k {
                v * &half
            } else {
                v.clone()
            };
            monomials.push((i, j, k, coeff));
        }
        Ok(TrilinearNormForm {
            field: field.clone(),
            dim,
            dense,
            entries,
            monomials,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Nonzero entries on `i <= j <= k`.
    pub fn entries(&self) -> &[(usize, usize, usize, FieldElement)] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize, k: usize) -> &FieldElement {
        &self.dense[(i * self.dim + j) * self.dim + k]
    }

    pub fn eval(&self, x: &[FieldElement], y: &[FieldElement], z: &[FieldElement]) -> FieldElement {
        let mut acc = self.field.zero();
        for (i, j, k, v) in &self.entries {
            let (i, j, k) = (*i, *j, *k);
            let mut s = self.field.zero();
            let perms: &[(usize, usize, usize)] = if i == k {
                &[(i, i, i)]
            } else if i == j {
                &[(i, i, k), (i, k, i), (k, i, i)]
            } else if j == k {
                &[(i, j, j), (j, i, j), (j, j, i)]
            } else {
                &[(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)]
            };
            for &(a, b, c) in perms {
                if !x[a].is_zero() && !y[b].is_zero() && !z[c].is_zero() {
                    s += &(&(&x[a] * &y[b]) * &z[c]);
                }
            }
            if !s.is_zero() {
                acc += &(&s * v);
            }
        }
        acc
    }

    /// `N(x) = Θ(x, x, x) / 6`, evaluated through the monomial expansion.
    pub fn norm(&self, x: &[FieldElement]) -> FieldElement {
        let mut acc = self.field.zero();
        for (i, j, k, c) in &self.monomials {
            if !x[*i].is_zero() && !x[*j].is_zero() && !x[*k].is_zero() {
                acc += &(&(&(&x[*i] * &x[*j]) * &x[*k]) * c);
            }
        }
        acc
    }

    /// `Θ(x, x, y) / 2`, the directional derivative of `N` at `x` along `y`.
    pub fn derivative(&self, x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
        let half = self.field.from_i64(2).inv().expect("characteristic is not 2");
        &self.eval(x, x, y) * &half
    }

    pub fn zero_vector(&self) -> Vector {
        linalg::zeros(&self.field, self.dim)
    }
}
