//! Dense exact linear algebra over a [`Field`].

use thiserror::Error;

use crate::field::{Field, FieldElement};

pub type Vector = Vec<FieldElement>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// Outcome of solving `m * x = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Vector),
    /// Consistent but rank deficient; `particular` sets free variables to 0.
    Underdetermined { particular: Vector, rank: usize },
    Inconsistent,
}

pub fn zeros(field: &Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn basis_vector(field: &Field, n: usize, i: usize) -> Vector {
    let mut v = zeros(field, n);
    v[i] = field.one();
    v
}

pub fn add(a: &[FieldElement], b: &[FieldElement]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[FieldElement], b: &[FieldElement]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &FieldElement, a: &[FieldElement]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

pub fn neg(a: &[FieldElement]) -> Vector {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero(a: &[FieldElement]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn dot(a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    let mut acc = a[0].field().zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

/// Row-major exact matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl std::fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ExactMatrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl ExactMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn scalar(field: &Field, n: usize, c: &FieldElement) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<FieldElement>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Shape("ragged rows".into()));
        }
        Ok(ExactMatrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: &Field, columns: &[Vector]) -> Result<Self, LinalgError> {
        let c = columns.len();
        let r = columns.first().map_or(0, |col| col.len());
        if columns.iter().any(|col| col.len() != r) {
            return Err(LinalgError::Shape("ragged columns".into()));
        }
        let mut m = Self::zeros(field, r, c);
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vector, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::Shape(format!(
                "vector of length {} for {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::Shape("cannot add matrices of different shape".into()));
        }
        Ok(ExactMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: add(&self.data, &other.data),
        })
    }

    pub fn scale(&self, c: &FieldElement) -> ExactMatrix {
        ExactMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: scale(c, &self.data),
        }
    }

    pub fn trace(&self) -> Result<FieldElement, LinalgError> {
        self.require_square()?;
        let mut acc = self.field.zero();
        for i in 0..self.rows {
            acc += self.get(i, i);
        }
        Ok(acc)
    }

    fn require_square(&self) -> Result<(), LinalgError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Exact determinant by Gaussian elimination.
    pub fn det(&self) -> Result<FieldElement, LinalgError> {
        self.require_square()?;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = self.field.one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Ok(self.field.zero());
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col].clone();
            det = &det * &p;
            let pinv = p.inv().expect("nonzero pivot");
            for r in col + 1..n {
                let factor = &a[r * n + col] * &pinv;
                if factor.is_zero() {
                    continue;
                }
                for j in col + 1..n {
                    let upd = &factor * &a[col * n + j];
                    if !upd.is_zero() {
                        a[r * n + j] = &a[r * n + j] - &upd;
                    }
                }
            }
        }
        Ok(det)
    }

    /// Reduced row echelon form; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for j in c..cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..cols {
                    let upd = &factor * self.get(r, j);
                    if !upd.is_zero() {
                        let v = self.get(i, j) - &upd;
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Solves `self * x = rhs` exactly.
    pub fn solve(&self, rhs: &[FieldElement]) -> Result<Solution, LinalgError> {
        if rhs.len() != self.rows {
            return Err(LinalgError::Shape(format!(
                "right-hand side of length {} for {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let mut aug = Self::zeros(&self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(Solution::Inconsistent);
        }
        let mut x = zeros(&self.field, self.cols);
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols).clone();
        }
        if pivots.len() == self.cols {
            Ok(Solution::Unique(x))
        } else {
            Ok(Solution::Underdetermined {
                particular: x,
                rank: pivots.len(),
            })
        }
    }

    /// Inverse, or `None` when singular.
    pub fn inverse(&self) -> Result<Option<ExactMatrix>, LinalgError> {
        self.require_square()?;
        let n = self.rows;
        let mut aug = Self::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Ok(None);
        }
        let mut inv = Self::zeros(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Ok(Some(inv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: &[&[i64]]) -> ExactMatrix {
        let q = Field::rationals();
        ExactMatrix::from_rows(
            &q,
            rows.iter().map(|r| r.iter().map(|&x| q.from_i64(x)).collect()).collect(),
        )
        .unwrap()
    }

    fn qv(xs: &[&str]) -> Vector {
        let q = Field::rationals();
        xs.iter().map(|x| q.parse(x).unwrap()).collect()
    }

    #[test]
    fn determinants() {
        let q = Field::rationals();
        assert!(ExactMatrix::identity(&q, 3).det().unwrap().is_one());
        assert_eq!(qm(&[&[0, 1], &[1, 0]]).det().unwrap(), q.from_i64(-1));
        assert_eq!(qm(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]).det().unwrap(), q.from_i64(6));
        assert_eq!(
            qm(&[&[1, 2, 3]]).det(),
            Err(LinalgError::NotSquare { rows: 1, cols: 3 })
        );
    }

    #[test]
    fn solving() {
        let q = Field::rationals();
        let v = qv(&["3", "-1/2"]);
        assert_eq!(
            ExactMatrix::identity(&q, 2).solve(&v).unwrap(),
            Solution::Unique(v.clone())
        );
        assert_eq!(qm(&[&[1, 1], &[0, 0]]).solve(&qv(&["1", "1"])).unwrap(), Solution::Inconsistent);
        assert_eq!(
            qm(&[&[2, 0], &[0, 5]]).solve(&qv(&["1", "1"])).unwrap(),
            Solution::Unique(qv(&["1/2", "1/5"]))
        );
        assert!(matches!(
            qm(&[&[1, 1], &[2, 2]]).solve(&qv(&["1", "2"])).unwrap(),
            Solution::Underdetermined { rank: 1, .. }
        ));
    }

    #[test]
    fn inverse_roundtrip() {
        let q = Field::rationals();
        let m = qm(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = m.inverse().unwrap().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), ExactMatrix::identity(&q, 3));
        assert!(qm(&[&[1, 2], &[2, 4]]).inverse().unwrap().is_none());
    }
}
