//! Dense matrices over a cyclotomic field.

use serde::Serialize;

use crate::cyclotomic::CycNum;
use crate::error::ArithError;

#[derive(Clone, PartialEq, Eq)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    order: u32,
    data: Vec<CycNum>,
}

impl std::fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "CycMatrix {}x{} over Q(zeta_{}):", self.rows, self.cols, self.order)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl CycMatrix {
    pub fn zeros(order: u32, rows: usize, cols: usize) -> Self {
        CycMatrix { rows, cols, order, data: vec![CycNum::zero(order); rows * cols] }
    }

    pub fn identity(order: u32, n: usize) -> Self {
        let mut m = Self::zeros(order, n, n);
        for i in 0..n {
            m[(i, i)] = CycNum::one(order);
        }
        m
    }

    pub fn from_rows(order: u32, rows: Vec<Vec<CycNum>>) -> Result<Self, ArithError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(ArithError::Shape("ragged rows".into()));
        }
        if rows.iter().flatten().any(|x| x.order() != order) {
            return Err(ArithError::Shape(format!("entry not in Q(zeta_{order})")));
        }
        Ok(CycMatrix { rows: r, cols: c, order, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_ints(order: u32, rows: &[Vec<i64>]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&x| CycNum::from_int(order, x)).collect()).collect();
        Self::from_rows(order, rows).expect("integer rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn row(&self, r: usize) -> &[CycNum] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<CycNum>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.order, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &CycNum) -> Self {
        CycMatrix { data: self.data.iter().map(|x| x * s).collect(), ..self.clone() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ArithError> {
        if self.cols != other.rows {
            return Err(ArithError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.order != other.order {
            return Err(ArithError::OrderMismatch { left: self.order, right: other.order });
        }
        let mut out = Self::zeros(self.order, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self, ArithError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&CycNum, &CycNum) -> CycNum) -> Result<Self, ArithError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(ArithError::Shape(format!(
                "cannot combine {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.order != other.order {
            return Err(ArithError::OrderMismatch { left: self.order, right: other.order });
        }
        Ok(CycMatrix { data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(), ..self.clone() })
    }

    /// Kronecker product, `self` indexing the more significant factor.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.order, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = &other[(k, l)];
                        if !b.is_zero() {
                            out[(i * other.rows + k, j * other.cols + l)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Result<Self, ArithError> {
        if !self.is_square() {
            return Err(ArithError::Shape("power of a non-square matrix".into()));
        }
        let mut result = Self::identity(self.order, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Row echelon form by Gaussian elimination over the field; returns (echelon, rank, det sign/scale).
    fn eliminate(&self) -> (Self, usize, CycNum) {
        let mut m = self.clone();
        let mut det = CycNum::one(self.order);
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                det = CycNum::zero(self.order);
                continue;
            };
            if p != rank {
                m.swap_rows(p, rank);
                det = -det;
            }
            let pivot = m[(rank, col)].clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for r in rank + 1..m.rows {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = &m[(r, col)] * &inv;
                for c in col..m.cols {
                    if !m[(rank, c)].is_zero() {
                        let delta = &factor * &m[(rank, c)];
                        m[(r, c)] = &m[(r, c)] - &delta;
                    }
                }
            }
            rank += 1;
        }
        (m, rank, det)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.eliminate().1
    }

    pub fn det(&self) -> Result<CycNum, ArithError> {
        if !self.is_square() {
            return Err(ArithError::Shape("determinant of a non-square matrix".into()));
        }
        if self.rows == 0 {
            return Ok(CycNum::one(self.order));
        }
        let (_, rank, det) = self.eliminate();
        Ok(if rank < self.rows { CycNum::zero(self.order) } else { det })
    }

    pub fn inverse(&self) -> Result<Self, ArithError> {
        if !self.is_square() {
            return Err(ArithError::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(self.order, n);
        for col in 0..n {
            let p = (col..n).find(|&r| !a[(r, col)].is_zero()).ok_or(ArithError::Singular)?;
            a.swap_rows(p, col);
            inv.swap_rows(p, col);
            let pinv = a[(col, col)].inv()?;
            for c in 0..n {
                a[(col, c)] = &a[(col, c)] * &pinv;
                inv[(col, c)] = &inv[(col, c)] * &pinv;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for c in 0..n {
                    if !a[(col, c)].is_zero() {
                        a[(r, c)] = &a[(r, c)] - &(&f * &a[(col, c)]);
                    }
                    if !inv[(col, c)].is_zero() {
                        inv[(r, c)] = &inv[(r, c)] - &(&f * &inv[(col, c)]);
                    }
                }
            }
        }
        Ok(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.order, self.rows)
    }

    pub fn map(&self, f: impl Fn(&CycNum) -> CycNum) -> Self {
        CycMatrix { data: self.data.iter().map(f).collect(), ..self.clone() }
    }

    pub fn entries(&self) -> &[CycNum] {
        &self.data
    }
}

/// Serialized as a list of rows.
impl Serialize for CycMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl std::ops::Index<(usize, usize)> for CycMatrix {
    type Output = CycNum;
    fn index(&self, (r, c): (usize, usize)) -> &CycNum {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CycMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut CycNum {
        &mut self.data[r * self.cols + c]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_det() {
        let m = CycMatrix::from_ints(16, &[vec![2, 1], vec![1, 1]]);
        assert_eq!(m.det().unwrap(), CycNum::from_int(16, 1));
        assert!(m.mul(&m.inverse().unwrap()).unwrap().is_identity());
        let s = CycMatrix::from_ints(16, &[vec![1, 2], vec![2, 4]]);
        assert_eq!(s.rank(), 1);
        assert!(s.det().unwrap().is_zero());
        assert_eq!(s.inverse(), Err(ArithError::Singular));
    }

    #[test]
    fn det_with_row_swaps() {
        let m = CycMatrix::from_ints(16, &[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 3]]);
        assert_eq!(m.det().unwrap(), CycNum::from_int(16, -3));
    }

    #[test]
    fn kron_shape() {
        let a = CycMatrix::identity(16, 2);
        let b = CycMatrix::from_ints(16, &[vec![1, 2, 3]]);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (2, 6));
        assert_eq!(k[(1, 5)], CycNum::from_int(16, 3));
    }
}
