//! Dense matrices over an exact scalar type.
//!
//! A `rows × cols` matrix is an arrow `cols → rows`: composition `A ; B` is
//! the product `B · A`. Zero-dimensional shapes are ordinary values.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::num::{Int, Pid, Rat, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatError {
    #[error("{op}: dimension mismatch between {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{op}: expected a square matrix, got {shape:?}")]
    NotSquare {
        op: &'static str,
        shape: (usize, usize),
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type MatZ = Matrix<Int>;
pub type MatQ = Matrix<Rat>;

impl<T: Scalar> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(
            data.len(),
            rows * cols,
            "entry count must equal rows * cols"
        );
        Matrix { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors; `cols` is needed for the 0-row case.
    pub fn from_rows(cols: usize, rows: &[Vec<T>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        Matrix::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    /// Permutation matrix sending input wire `j` to output wire `perm[j]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        Matrix::from_fn(n, n, |i, j| if perm[j] == i { T::one() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|x| x.clone() * k.clone())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, MatError> {
        if self.cols != rhs.rows {
            return Err(MatError::DimensionMismatch {
                op: "mul",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| {
                acc + self.get(i, k).clone() * rhs.get(k, j).clone()
            })
        }))
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>, MatError> {
        if self.cols != v.len() {
            return Err(MatError::DimensionMismatch {
                op: "mul_vec",
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, MatError> {
        if self.shape() != rhs.shape() {
            return Err(MatError::DimensionMismatch {
                op: "add",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).clone() + rhs.get(i, j).clone()
        }))
    }

    /// `(A | B)`: side-by-side, arrow `n + m → z`.
    pub fn hstack(&self, rhs: &Self) -> Result<Self, MatError> {
        if self.rows != rhs.rows {
            return Err(MatError::DimensionMismatch {
                op: "hstack",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(Matrix::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs.get(i, j - self.cols).clone()
            }
        }))
    }

    /// `(C / D)`: stacked, arrow `r → n + m`.
    pub fn vstack(&self, rhs: &Self) -> Result<Self, MatError> {
        if self.cols != rhs.cols {
            return Err(MatError::DimensionMismatch {
                op: "vstack",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Ok(Matrix {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        })
    }

    /// Block diagonal sum, the monoidal product of `Mat`.
    pub fn direct_sum(&self, rhs: &Self) -> Self {
        Matrix::from_fn(self.rows + rhs.rows, self.cols + rhs.cols, |i, j| {
            match (i < self.rows, j < self.cols) {
                (true, true) => self.get(i, j).clone(),
                (false, false) => rhs.get(i - self.rows, j - self.cols).clone(),
                _ => T::zero(),
            }
        })
    }

    pub fn select_rows(&self, range: std::ops::Range<usize>) -> Self {
        Matrix::from_fn(range.len(), self.cols, |i, j| {
            self.get(range.start + i, j).clone()
        })
    }

    pub fn select_cols(&self, range: std::ops::Range<usize>) -> Self {
        Matrix::from_fn(self.rows, range.len(), |i, j| {
            self.get(i, range.start + j).clone()
        })
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `C_dst += k * C_src`.
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, k: &T) {
        for i in 0..self.rows {
            let v = self.get(i, dst).clone() + k.clone() * self.get(i, src).clone();
            self.set(i, dst, v);
        }
    }

    pub(crate) fn scale_col(&mut self, j: usize, k: &T) {
        for i in 0..self.rows {
            let v = self.get(i, j).clone() * k.clone();
            self.set(i, j, v);
        }
    }

    /// Replaces columns `a`, `b` by `(s*C_a + t*C_b, u*C_a + v*C_b)`.
    pub(crate) fn combine_cols(&mut self, a: usize, b: usize, s: &T, t: &T, u: &T, v: &T) {
        for i in 0..self.rows {
            let x = self.get(i, a).clone();
            let y = self.get(i, b).clone();
            self.set(i, a, s.clone() * x.clone() + t.clone() * y.clone());
            self.set(i, b, u.clone() * x + v.clone() * y);
        }
    }

    /// Renders in the matrix file format: a `ROWS COLS` header followed by
    /// one line per row.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        if self.cols == 0 {
            return out;
        }
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(Scalar::render).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses exactly one matrix; trailing content is an error.
    pub fn parse(text: &str) -> Result<Self, MatError> {
        let mut all = Matrix::parse_many(text)?;
        match all.len() {
            1 => Ok(all.pop().unwrap()),
            n => Err(MatError::Parse {
                line: 0,
                msg: format!("expected exactly one matrix, found {n}"),
            }),
        }
    }

    /// Parses a sequence of matrices written back to back.
    pub fn parse_many(text: &str) -> Result<Vec<Self>, MatError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let mut out = Vec::new();
        while let Some((lineno, header)) = lines.next() {
            let dims: Vec<&str> = header.split_whitespace().collect();
            let parse_dim = |s: &str| {
                s.parse::<usize>().map_err(|_| MatError::Parse {
                    line: lineno,
                    msg: format!("bad dimension {s:?}"),
                })
            };
            if dims.len() != 2 {
                return Err(MatError::Parse {
                    line: lineno,
                    msg: "header must be \"ROWS COLS\"".into(),
                });
            }
            let (rows, cols) = (parse_dim(dims[0])?, parse_dim(dims[1])?);
            let mut data = Vec::with_capacity(rows * cols);
            // n×0 matrices carry no data lines
            let data_lines = if cols == 0 { 0 } else { rows };
            for _ in 0..data_lines {
                let (ln, line) = lines.next().ok_or(MatError::Parse {
                    line: lineno,
                    msg: format!("expected {rows} data rows"),
                })?;
                let fields: Vec<&str> = line.split_whitespace().collect();
                if fields.len() != cols {
                    return Err(MatError::Parse {
                        line: ln,
                        msg: format!("expected {cols} entries, found {}", fields.len()),
                    });
                }
                for f in fields {
                    data.push(f.parse::<T>().map_err(|_| MatError::Parse {
                        line: ln,
                        msg: format!("bad entry {f:?}"),
                    })?);
                }
            }
            out.push(Matrix { rows, cols, data });
        }
        Ok(out)
    }

    /// `{"rows", "cols", "entries": [["p", "q"], ...]}` (row-major).
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Json {
            rows: usize,
            cols: usize,
            entries: Vec<[String; 2]>,
        }
        let entries = self
            .data
            .iter()
            .map(|x| {
                let s = x.render();
                match s.split_once('/') {
                    Some((p, q)) => [p.to_string(), q.to_string()],
                    None => [s, "1".to_string()],
                }
            })
            .collect();
        serde_json::to_value(Json {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
        .expect("matrix serializes")
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[T]> = (0..self.rows)
            .map(|i| &self.data[i * self.cols..(i + 1) * self.cols])
            .collect();
        write!(f, "Matrix{}x{}{:?}", self.rows, self.cols, rows)
    }
}

impl<R: Pid> Matrix<R> {
    /// Reinterprets the entries in the field of fractions.
    pub fn embed(&self) -> Matrix<R::Fraction> {
        self.map(Pid::embed)
    }
}

impl MatZ {
    /// Convenience constructor from small integers.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Matrix::from_vec(rows, cols, entries.iter().map(|&x| Int::from(x)).collect())
    }
}

impl MatQ {
    /// Returns the integer matrix when every entry is integral.
    pub fn to_integer(&self) -> Option<MatZ> {
        if self.data.iter().all(|x| x.is_integer()) {
            Some(self.map(|x| x.to_integer()))
        } else {
            None
        }
    }
}

/// Inverse of a permutation given as an image list.
pub fn invert_permutation(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (j, &p) in perm.iter().enumerate() {
        inv[p] = j;
    }
    inv
}
