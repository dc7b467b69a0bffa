//! Finite-dimensional algebras given by structure constants.

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::field::{Field, FieldElement, FieldSpec};
use crate::linalg::{self, ExactMatrix, Vector};

/// Sparse structure constants `e_i e_j = sum_k c_ijk e_k` plus a unit vector.
#[derive(Clone, Debug)]
pub struct AlgebraTable {
    field: Field,
    dim: usize,
    labels: Vec<String>,
    unit: Vector,
    /// Indexed by `i * dim + j`.
    products: Vec<Vec<(usize, FieldElement)>>,
    commutative: bool,
}

/// JSON form of a table: scalars as canonical strings, constants as
/// `[i, j, k, "c"]` sorted by `(i, j, k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableJson {
    pub field: FieldSpec,
    pub dimension: usize,
    pub labels: Vec<String>,
    pub unit: Vec<String>,
    pub constants: Vec<(usize, usize, usize, String)>,
}

impl AlgebraTable {
    /// Builds the table from a product evaluated on basis vectors.
    pub fn from_fn<F>(field: &Field, labels: Vec<String>, unit: Vector, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Result<Vector>,
    {
        let dim = labels.len();
        let mut products = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j)?;
                if v.len() != dim {
                    return Err(AlgebraError::Mismatch {
                        expected: dim,
                        got: v.len(),
                    });
                }
                products.push(
                    v.into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .collect(),
                );
            }
        }
        Self::assemble(field, labels, unit, products)
    }

    pub fn from_constants(
        field: &Field,
        labels: Vec<String>,
        unit: Vector,
        constants: Vec<(usize, usize, usize, FieldElement)>,
    ) -> Result<Self> {
        let dim = labels.len();
        let mut products: Vec<Vec<(usize, FieldElement)>> = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in constants {
            if i >= dim || j >= dim || k >= dim {
                return Err(AlgebraError::InvalidTable(format!(
                    "index ({i}, {j}, {k}) out of range for dimension {dim}"
                )));
            }
            let slot = &mut products[i * dim + j];
            match slot.iter_mut().find(|(kk, _)| *kk == k) {
                Some((_, existing)) => *existing = &*existing + &c,
                None => slot.push((k, c)),
            }
        }
        for slot in &mut products {
            slot.retain(|(_, c)| !c.is_zero());
            slot.sort_by_key(|(k, _)| *k);
        }
        Self::assemble(field, labels, unit, products)
    }

    fn assemble(
        field: &Field,
        labels: Vec<String>,
        unit: Vector,
        products: Vec<Vec<(usize, FieldElement)>>,
    ) -> Result<Self> {
        let dim = labels.len();
        if unit.len() != dim {
            return Err(AlgebraError::Mismatch {
                expected: dim,
                got: unit.len(),
            });
        }
        let mut table = AlgebraTable {
            field: field.clone(),
            dim,
            labels,
            unit,
            products,
            commutative: false,
        };
        table.commutative = table.find_noncommuting_pair().is_none();
        Ok(table)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn basis(&self, i: usize) -> Vector {
        linalg::basis_vector(&self.field, self.dim, i)
    }

    pub fn zero(&self) -> Vector {
        linalg::zeros(&self.field, self.dim)
    }

    /// `c * unit`.
    pub fn scalar(&self, c: &FieldElement) -> Vector {
        linalg::scale(c, &self.unit)
    }

    /// Nonzero constants of `e_i e_j`.
    pub fn row(&self, i: usize, j: usize) -> &[(usize, FieldElement)] {
        &self.products[i * self.dim + j]
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> FieldElement {
        self.row(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    /// Adds `delta` to a single structure constant.
    pub fn perturb(&mut self, i: usize, j: usize, k: usize, delta: &FieldElement) {
        let slot = &mut self.products[i * self.dim + j];
        match slot.iter_mut().find(|(kk, _)| *kk == k) {
            Some((_, c)) => *c = &*c + delta,
            None => slot.push((k, delta.clone())),
        }
        slot.retain(|(_, c)| !c.is_zero());
        slot.sort_by_key(|(k, _)| *k);
        self.commutative = self.find_noncommuting_pair().is_none();
    }

    pub fn check_len(&self, x: &[FieldElement]) -> Result<()> {
        if x.len() == self.dim {
            Ok(())
        } else {
            Err(AlgebraError::Mismatch {
                expected: self.dim,
                got: x.len(),
            })
        }
    }

    /// Checked product.
    pub fn product(&self, x: &[FieldElement], y: &[FieldElement]) -> Result<Vector> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.mul(x, y))
    }

    /// Product of two coordinate vectors of the right length.
    pub fn mul(&self, x: &[FieldElement], y: &[FieldElement]) -> Vector {
        debug_assert_eq!(x.len(), self.dim);
        debug_assert_eq!(y.len(), self.dim);
        let mut out = self.zero();
        if self.commutative {
            let support: Vec<usize> = (0..self.dim)
                .filter(|&i| !x[i].is_zero() || !y[i].is_zero())
                .collect();
            for (a, &i) in support.iter().enumerate() {
                for &j in &support[a..] {
                    let coef = if i == j {
                        if x[i].is_zero() || y[i].is_zero() {
                            continue;
                        }
                        &x[i] * &y[i]
                    } else {
                        let mut c = self.field.zero();
                        if !x[i].is_zero() && !y[j].is_zero() {
                            c = &x[i] * &y[j];
                        }
                        if !x[j].is_zero() && !y[i].is_zero() {
                            c = c + &x[j] * &y[i];
                        }
                        c
                    };
                    if coef.is_zero() {
                        continue;
                    }
                    for (k, c) in self.row(i, j) {
                        out[*k] += &(&coef * c);
                    }
                }
            }
        } else {
            for (i, xi) in x.iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                for (j, yj) in y.iter().enumerate() {
                    if yj.is_zero() {
                        continue;
                    }
                    let row = self.row(i, j);
                    if row.is_empty() {
                        continue;
                    }
                    let coef = xi * yj;
                    for (k, c) in row {
                        out[*k] += &(&coef * c);
                    }
                }
            }
        }
        out
    }

    /// Matrix of left multiplication `y -> x y`.
    pub fn left_mul_matrix(&self, x: &[FieldElement]) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(&self.field, self.dim, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for (k, c) in self.row(i, j) {
                    let v = m.get(*k, j) + &(xi * c);
                    m.set(*k, j, v);
                }
            }
        }
        m
    }

    fn find_noncommuting_pair(&self) -> Option<(usize, usize)> {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if self.row(i, j) != self.row(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn check_commutative(&self) -> Result<()> {
        match self.find_noncommuting_pair() {
            Some((i, j)) => Err(AlgebraError::NotCommutative(i, j)),
            None => Ok(()),
        }
    }

    /// Exhaustive two-sided identity check on basis vectors.
    pub fn check_unit(&self) -> Result<()> {
        for i in 0..self.dim {
            let e = self.basis(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(AlgebraError::BadUnit(i));
            }
        }
        Ok(())
    }

    /// Exhaustive associativity check on basis triples.
    pub fn check_associative(&self) -> Result<()> {
        let basis: Vec<Vector> = (0..self.dim).map(|i| self.basis(i)).collect();
        let pairs: Vec<Vec<Vector>> = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.mul(&basis[i], &basis[j])).collect())
            .collect();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let left = self.mul(&pairs[i][j], &basis[k]);
                    let right = self.mul(&basis[i], &pairs[j][k]);
                    if left != right {
                        return Err(AlgebraError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> TableJson {
        let mut constants = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut row: Vec<_> = self.row(i, j).to_vec();
                row.sort_by_key(|(k, _)| *k);
                for (k, c) in row {
                    constants.push((i, j, k, c.to_string()));
                }
            }
        }
        TableJson {
            field: self.field.spec(),
            dimension: self.dim,
            labels: self.labels.clone(),
            unit: self.unit.iter().map(|c| c.to_string()).collect(),
            constants,
        }
    }

    /// Reads a table; the field is built from the embedded descriptor.
    pub fn from_json(json: &TableJson) -> Result<Self> {
        let field = Field::from_spec(&json.field)?;
        if json.labels.len() != json.dimension {
            return Err(AlgebraError::InvalidTable(format!(
                "{} labels for dimension {}",
                json.labels.len(),
                json.dimension
            )));
        }
        let unit = json
            .unit
            .iter()
            .map(|c| field.parse(c))
            .collect::<Result<Vector, _>>()?;
        let constants = json
            .constants
            .iter()
            .map(|(i, j, k, c)| Ok((*i, *j, *k, field.parse(c)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_constants(&field, json.labels.clone(), unit, constants)
    }
}
