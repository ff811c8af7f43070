//! Exact dense matrices and row reduction over cyclotomic scalars.

use crate::cyclo::CycNum;
use crate::error::Error;

/// Row-major matrix over `CycNum`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CMat {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<CycNum>,
}

impl CMat {
    pub fn new(rows: usize, cols: usize, a: Vec<CycNum>) -> Self {
        assert_eq!(a.len(), rows * cols);
        CMat { rows, cols, a }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> CycNum) -> Self {
        let mut a = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                a.push(f(i, j));
            }
        }
        CMat { rows, cols, a }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { CycNum::one() } else { CycNum::zero() })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, a: vec![CycNum::zero(); rows * cols] }
    }

    pub fn at(&self, i: usize, j: usize) -> &CycNum {
        &self.a[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycNum) {
        self.a[i * self.cols + j] = v;
    }

    pub fn matmul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows);
        CMat::from_fn(self.rows, other.cols, |i, j| {
            let mut s = CycNum::zero();
            for k in 0..self.cols {
                let x = self.at(i, k);
                if !x.is_zero() {
                    s = s.add(&x.mul(other.at(k, j)));
                }
            }
            s
        })
    }

    pub fn apply(&self, v: &[CycNum]) -> Vec<CycNum> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = CycNum::zero();
                for k in 0..self.cols {
                    let x = self.at(i, k);
                    if !x.is_zero() && !v[k].is_zero() {
                        s = s.add(&x.mul(&v[k]));
                    }
                }
                s
            })
            .collect()
    }

    pub fn transpose(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn scale(&self, c: &CycNum) -> CMat {
        CMat {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().map(|x| x.mul(c)).collect(),
        }
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMat {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().zip(other.a.iter()).map(|(x, y)| x.add(y)).collect(),
        }
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        self.add(&other.scale(&CycNum::from_i64(-1)))
    }

    pub fn det(&self) -> CycNum {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m: Vec<Vec<CycNum>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut det = CycNum::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
                return CycNum::zero();
            };
            if p != c {
                m.swap(c, p);
                det = det.neg();
            }
            let pivot = m[c][c].clone();
            det = det.mul(&pivot);
            let inv = pivot.inverse().expect("nonzero pivot");
            for i in c + 1..n {
                if m[i][c].is_zero() {
                    continue;
                }
                let f = m[i][c].mul(&inv);
                for j in c..n {
                    let t = f.mul(&m[c][j]);
                    m[i][j] = m[i][j].sub(&t);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<CMat, Error> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m: Vec<Vec<CycNum>> = (0..n)
            .map(|i| {
                let mut row: Vec<CycNum> = (0..n).map(|j| self.at(i, j).clone()).collect();
                row.extend((0..n).map(|j| {
                    if i == j {
                        CycNum::one()
                    } else {
                        CycNum::zero()
                    }
                }));
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n)
                .find(|&i| !m[i][c].is_zero())
                .ok_or_else(|| Error::NotRepresentable("singular matrix".into()))?;
            m.swap(c, p);
            let inv = m[c][c].inverse()?;
            for j in 0..2 * n {
                m[c][j] = m[c][j].mul(&inv);
            }
            for i in 0..n {
                if i != c && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in c..2 * n {
                        let t = f.mul(&m[c][j]);
                        m[i][j] = m[i][j].sub(&t);
                    }
                }
            }
        }
        Ok(CMat::from_fn(n, n, |i, j| m[i][n + j].clone()))
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Vec<Vec<CycNum>>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inverse().expect("pivot nonzero");
        for j in 0..cols {
            m[r][j] = m[r][j].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = f.mul(&m[r][j]);
                    m[i][j] = m[i][j].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<CycNum>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of the right kernel `{x : M x = 0}`, deterministic order.
pub fn kernel(rows: &[Vec<CycNum>]) -> Vec<Vec<CycNum>> {
    if rows.is_empty() {
        return vec![];
    }
    let cols = rows[0].len();
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![CycNum::zero(); cols];
        v[free] = CycNum::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = m[i][free].neg();
        }
        basis.push(v);
    }
    basis
}

/// Column space basis image of a matrix (as row-reduced columns), i.e. a basis
/// of `span{columns}`, deterministic.
pub fn column_space(mat: &CMat) -> Vec<Vec<CycNum>> {
    let mut rows: Vec<Vec<CycNum>> = (0..mat.cols)
        .map(|j| (0..mat.rows).map(|i| mat.at(i, j).clone()).collect())
        .collect();
    let pivots = rref(&mut rows);
    rows.truncate(pivots.len());
    rows
}

/// Solve `sum_j x_j col_j = rhs`; `None` when inconsistent or underdetermined.
pub fn solve_in_span(cols: &[Vec<CycNum>], rhs: &[CycNum]) -> Option<Vec<CycNum>> {
    let rows = rhs.len();
    let ncols = cols.len();
    let mut m: Vec<Vec<CycNum>> = (0..rows)
        .map(|i| {
            let mut row: Vec<CycNum> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&ncols) {
        return None; // inconsistent
    }
    if pivots.len() != ncols {
        return None;
    }
    Some((0..ncols).map(|j| m[j][ncols].clone()).collect())
}
