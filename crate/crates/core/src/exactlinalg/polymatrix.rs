use super::laplace::{memoized_det, DetRing};
use super::{LinalgError, QMatrix};
use crate::exactnum::QSqrt2;
use crate::mvpoly::MvPoly;

impl DetRing for MvPoly {
    fn zero_like(&self) -> Self {
        MvPoly::zero(self.nvars())
    }

    fn is_zero(&self) -> bool {
        MvPoly::is_zero(self)
    }

    fn add_product(&mut self, a: &Self, b: &Self, negate: bool) {
        for (ma, ca) in a.terms() {
            let ca = if negate { -ca } else { ca.clone() };
            for (mb, cb) in b.terms() {
                self.add_term(ma.mul(mb), &(&ca * cb));
            }
        }
    }
}

/// Dense matrix of polynomials sharing one variable count.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    data: Vec<MvPoly>,
}

impl PolyMatrix {
    pub fn from_rows(rows: Vec<Vec<MvPoly>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Ragged);
        }
        let nvars = rows[0][0].nvars();
        if rows.iter().flatten().any(|p| p.nvars() != nvars) {
            return Err(LinalgError::DimensionMismatch);
        }
        Ok(PolyMatrix {
            rows: r,
            cols: c,
            nvars,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            MvPoly::constant(nvars, QSqrt2::one())
                        } else {
                            MvPoly::zero(nvars)
                        }
                    })
                    .collect()
            })
            .collect();
        PolyMatrix::from_rows(rows).expect("square")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &MvPoly {
        &self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> &[MvPoly] {
        &self.data
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn map(&self, f: impl Fn(&MvPoly) -> MvPoly) -> PolyMatrix {
        let data: Vec<MvPoly> = self.data.iter().map(f).collect();
        let nvars = data.first().map_or(self.nvars, MvPoly::nvars);
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars,
            data,
        }
    }

    pub fn eval(&self, point: &[QSqrt2]) -> QMatrix {
        let rows = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).eval(point)).collect())
            .collect();
        QMatrix::from_rows(rows).expect("rectangular")
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix, LinalgError> {
        if self.cols != rhs.rows || self.nvars != rhs.nvars {
            return Err(LinalgError::DimensionMismatch);
        }
        let rows = (0..self.rows)
            .map(|i| {
                (0..rhs.cols)
                    .map(|j| {
                        let mut acc = MvPoly::zero(self.nvars);
                        for k in 0..self.cols {
                            acc.add_product(self.get(i, k), rhs.get(k, j), false);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        PolyMatrix::from_rows(rows)
    }

    pub fn scale(&self, p: &MvPoly) -> PolyMatrix {
        self.map(|e| e * p)
    }

    /// Row vector times matrix times column vector, with constant vectors.
    pub fn bilinear(&self, left: &[QSqrt2], right: &[QSqrt2]) -> Result<MvPoly, LinalgError> {
        if left.len() != self.rows || right.len() != self.cols {
            return Err(LinalgError::DimensionMismatch);
        }
        let mut acc = MvPoly::zero(self.nvars);
        for (i, l) in left.iter().enumerate() {
            for (j, r) in right.iter().enumerate() {
                let c = l * r;
                if !c.is_zero() {
                    acc = &acc + &self.get(i, j).scale(&c);
                }
            }
        }
        Ok(acc)
    }

    fn minor_matrix(&self, skip_row: usize, skip_col: usize) -> Vec<MvPoly> {
        let mut out = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != skip_row) {
            for j in (0..self.cols).filter(|&j| j != skip_col) {
                out.push(self.get(i, j).clone());
            }
        }
        out
    }

    /// Exact polynomial determinant by memoized Laplace expansion.
    pub fn det_poly(&self) -> Result<MvPoly, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare);
        }
        Ok(memoized_det(self.rows, &self.data))
    }

    /// Transpose of the cofactor matrix, so `M * adj(M) = det(M) * I`.
    pub fn adjugate_poly(&self) -> Result<PolyMatrix, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare);
        }
        let n = self.rows;
        if n == 1 {
            return Ok(PolyMatrix::identity(1, self.nvars));
        }
        let mut rows = vec![vec![MvPoly::zero(self.nvars); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                // adj[i][j] = (-1)^(i+j) * det(M without row j, column i)
                let minor = memoized_det(n - 1, &self.minor_matrix(j, i));
                *slot = if (i + j) % 2 == 0 { minor } else { -&minor };
            }
        }
        PolyMatrix::from_rows(rows)
    }
}
