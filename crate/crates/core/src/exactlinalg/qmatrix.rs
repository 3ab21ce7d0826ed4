use std::fmt;

use super::LinalgError;
use crate::exactnum::QSqrt2;

/// Dense matrix over Q(sqrt 2), row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<QSqrt2>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![QSqrt2::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, QSqrt2::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<QSqrt2>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Ragged);
        }
        Ok(QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Diagonal matrix; handy in tests.
    pub fn diag(d: &[QSqrt2]) -> Self {
        let mut m = QMatrix::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &QSqrt2 {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: QSqrt2) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<QSqrt2> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<QSqrt2> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<QSqrt2>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, c: &QSqrt2) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &QMatrix) -> Result<QMatrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch);
        }
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = QSqrt2::zero();
                for k in 0..self.cols {
                    acc += &(self.get(i, k) * rhs.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[QSqrt2]) -> Result<Vec<QSqrt2>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch);
        }
        Ok((0..self.rows).map(|i| dot(&self.row(i), v)).collect())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Leading `k x k` block.
    pub fn leading(&self, k: usize) -> QMatrix {
        let mut m = QMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        m
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Exact determinant by fraction-field Gaussian elimination.
    pub fn det(&self) -> Result<QSqrt2, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare);
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = QSqrt2::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(QSqrt2::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det *= &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) * &inv;
                for j in c..n {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<QMatrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare);
        }
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, QSqrt2::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        let mut inv = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// `B^T H B` where the columns of `B` are `basis`.
    pub fn restrict_quadratic_form(&self, basis: &[Vec<QSqrt2>]) -> Result<QMatrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare);
        }
        if basis.iter().any(|b| b.len() != self.rows) {
            return Err(LinalgError::DimensionMismatch);
        }
        let k = basis.len();
        let hb: Vec<Vec<QSqrt2>> = basis.iter().map(|b| self.mul_vec(b)).collect::<Result<_, _>>()?;
        let mut out = QMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                out.set(i, j, dot(&basis[i], &hb[j]));
            }
        }
        Ok(out)
    }

    pub fn leading_principal_minors(&self) -> Result<Vec<QSqrt2>, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare);
        }
        (1..=self.rows).map(|k| self.leading(k).det()).collect()
    }

    /// Sylvester's criterion: `(-1)^k * minor_k > 0` for every leading
    /// principal minor.
    pub fn is_negative_definite(&self) -> Result<bool, LinalgError> {
        if !self.is_symmetric() {
            return Err(LinalgError::NotSymmetric);
        }
        let minors = self.leading_principal_minors()?;
        Ok(minors.iter().enumerate().all(|(i, m)| {
            let k = i + 1;
            if k % 2 == 1 {
                m.is_negative()
            } else {
                m.is_positive()
            }
        }))
    }
}

pub fn dot(a: &[QSqrt2], b: &[QSqrt2]) -> QSqrt2 {
    a.iter().zip(b).fold(QSqrt2::zero(), |acc, (x, y)| &acc + &(x * y))
}

/// Basis of `{v : r . v = 0 for every r in rows}` over Q(sqrt 2), one vector
/// per free column of the reduced row echelon form.
pub fn kernel_basis(rows: &[Vec<QSqrt2>], dim: usize) -> Result<Vec<Vec<QSqrt2>>, LinalgError> {
    if rows.iter().any(|r| r.len() != dim) {
        return Err(LinalgError::DimensionMismatch);
    }
    if rows.is_empty() {
        return Ok((0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { QSqrt2::one() } else { QSqrt2::zero() })
                    .collect()
            })
            .collect());
    }
    let m = QMatrix::from_rows(rows.to_vec())?;
    let (r, pivots) = m.rref();
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    Ok(free
        .iter()
        .map(|&f| {
            let mut v = vec![QSqrt2::zero(); dim];
            v[f] = QSqrt2::one();
            for (pi, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(pi, f);
            }
            v
        })
        .collect())
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
