//! Linear algebra over a field and linear relations.
//!
//! A [`Subspace`] is stored as its reduced row echelon basis, so equal
//! subspaces have identical representations. A [`LinRel`] `n → m` is a
//! subspace of `F^n × F^m` with the left boundary occupying the first `n`
//! coordinates.
//!
//! The bridge to integer spans and cospans lives at the bottom: [`phi`]
//! (joint image of a span), [`psi`] (equalizer of a cospan), and the
//! canonical way back, [`rel_to_span`] / [`rel_to_cospan`].

use std::fmt;

use num_traits::{Signed, Zero};
use serde_json::json;
use thiserror::Error;

use crate::matrix::{MatError, Matrix};
use crate::num::{clear_denominators, Field, Int, Rat};
use crate::span::{pushout, CospanZ, SpanZ};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelError {
    #[error("boundary mismatch: {0}")]
    Boundary(String),
    #[error("vector of length {found} in ambient dimension {expected}")]
    Length { expected: usize, found: usize },
    #[error(transparent)]
    Matrix(#[from] MatError),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Reduced row echelon form and rank.
///
/// The returned matrix has the same shape as the input; its first `rank`
/// rows are the nonzero rows.
pub fn rref<F: Field>(a: &Matrix<F>) -> (Matrix<F>, usize) {
    let mut m = a.clone();
    let (rows, cols) = m.shape();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        m.swap_rows(rank, p);
        let inv = F::one() / m.get(rank, c).clone();
        for j in 0..cols {
            let v = m.get(rank, j).clone() * inv.clone();
            m.set(rank, j, v);
        }
        for i in 0..rows {
            if i == rank || m.get(i, c).is_zero() {
                continue;
            }
            let factor = m.get(i, c).clone();
            for j in 0..cols {
                let v = m.get(i, j).clone() - factor.clone() * m.get(rank, j).clone();
                m.set(i, j, v);
            }
        }
        rank += 1;
    }
    (m, rank)
}

pub fn rank<F: Field>(a: &Matrix<F>) -> usize {
    rref(a).1
}

/// Pivot column of each row of a matrix in RREF.
fn pivots<F: Field>(r: &Matrix<F>, rank: usize) -> Vec<usize> {
    (0..rank)
        .map(|i| {
            (0..r.cols())
                .find(|&j| !r.get(i, j).is_zero())
                .expect("nonzero row")
        })
        .collect()
}

/// A subspace of `F^d` in canonical (RREF) form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace<F = Rat> {
    basis: Matrix<F>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            basis: Matrix::zeros(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            basis: Matrix::identity(ambient),
        }
    }

    /// The span of the rows of `m`.
    pub fn row_space(m: &Matrix<F>) -> Self {
        let (r, rank) = rref(m);
        Subspace {
            basis: r.select_rows(0..rank),
        }
    }

    /// The span of the columns of `m`.
    pub fn column_space(m: &Matrix<F>) -> Self {
        Subspace::row_space(&m.transpose())
    }

    pub fn from_generators(vectors: &[Vec<F>], ambient: usize) -> Result<Self, RelError> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(RelError::Length {
                expected: ambient,
                found: v.len(),
            });
        }
        Ok(Subspace::row_space(&Matrix::from_rows(ambient, vectors)))
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// RREF basis, one vector per row.
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        pivots(&self.basis, self.dim())
    }

    pub fn contains(&self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.ambient());
        solve(&self.basis.transpose(), v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient() == other.ambient()
            && (0..self.dim()).all(|i| other.contains(self.basis.row(i)))
    }

    /// Columns `range` of every vector.
    pub fn project(&self, range: std::ops::Range<usize>) -> Self {
        Subspace::row_space(&self.basis.select_cols(range))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("dim {}, rank {}\n", self.ambient(), self.dim());
        for i in 0..self.dim() {
            let row: Vec<String> = self.basis.row(i).iter().map(|x| x.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Inverse of [`Subspace::to_text`]; the rows are re-canonicalized.
    pub fn parse(text: &str) -> Result<Self, RelError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, header) = lines.next().ok_or(RelError::Parse {
            line: 0,
            msg: "empty input".into(),
        })?;
        let bad = |line: usize, msg: &str| RelError::Parse {
            line,
            msg: msg.to_string(),
        };
        let (d, r) = header
            .strip_prefix("dim ")
            .and_then(|rest| rest.split_once(", rank "))
            .ok_or_else(|| bad(ln, "header must be \"dim D, rank R\""))?;
        let d: usize = d.trim().parse().map_err(|_| bad(ln, "bad dimension"))?;
        let r: usize = r.trim().parse().map_err(|_| bad(ln, "bad rank"))?;
        let mut rows = Vec::with_capacity(r);
        for _ in 0..r {
            let (ln, line) = lines.next().ok_or_else(|| bad(ln, "missing basis rows"))?;
            let row: Result<Vec<F>, _> = line.split_whitespace().map(str::parse::<F>).collect();
            let row = row.map_err(|_| bad(ln, "bad entry"))?;
            if row.len() != d {
                return Err(bad(ln, "wrong row length"));
            }
            rows.push(row);
        }
        Subspace::from_generators(&rows, d)
    }
}

/// A linear relation `n → m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinRel<F = Rat> {
    n: usize,
    m: usize,
    space: Subspace<F>,
}

impl<F: Field> LinRel<F> {
    pub fn new(n: usize, m: usize, space: Subspace<F>) -> Result<Self, RelError> {
        if space.ambient() != n + m {
            return Err(RelError::Boundary(format!(
                "subspace of dimension {} cannot be a relation {n} → {m}",
                space.ambient()
            )));
        }
        Ok(LinRel { n, m, space })
    }

    pub fn source(&self) -> usize {
        self.n
    }

    pub fn target(&self) -> usize {
        self.m
    }

    pub fn space(&self) -> &Subspace<F> {
        &self.space
    }

    /// `{(x, x)}`.
    pub fn identity(n: usize) -> Self {
        LinRel::graph(&Matrix::identity(n))
    }

    /// `{(x, a·x)}` for `a: m×n`.
    pub fn graph(a: &Matrix<F>) -> Self {
        let gens = Matrix::identity(a.cols())
            .hstack(&a.transpose())
            .expect("shapes agree");
        LinRel {
            n: a.cols(),
            m: a.rows(),
            space: Subspace::row_space(&gens),
        }
    }

    /// `{((x, y), (y, x))}` on `n + m → m + n`.
    pub fn symmetry(n: usize, m: usize) -> Self {
        let perm: Vec<usize> = (0..n).map(|i| m + i).chain(0..m).collect();
        LinRel::graph(&Matrix::permutation(&perm))
    }

    pub fn full(n: usize, m: usize) -> Self {
        LinRel {
            n,
            m,
            space: Subspace::full(n + m),
        }
    }

    pub fn zero(n: usize, m: usize) -> Self {
        LinRel {
            n,
            m,
            space: Subspace::zero(n + m),
        }
    }

    pub fn converse(&self) -> Self {
        let b = self.space.basis();
        let swapped = b
            .select_cols(self.n..self.n + self.m)
            .hstack(&b.select_cols(0..self.n))
            .expect("same row count");
        LinRel {
            n: self.m,
            m: self.n,
            space: Subspace::row_space(&swapped),
        }
    }

    /// Direct sum; coordinates ordered `(x1, x2, y1, y2)`.
    pub fn tensor(&self, other: &Self) -> Self {
        let (n1, m1, n2, m2) = (self.n, self.m, other.n, other.m);
        let width = n1 + n2 + m1 + m2;
        let mut rows = Vec::with_capacity(self.space.dim() + other.space.dim());
        for v in self.space.basis().row_vecs() {
            let mut row = vec![F::zero(); width];
            row[..n1].clone_from_slice(&v[..n1]);
            row[n1 + n2..n1 + n2 + m1].clone_from_slice(&v[n1..]);
            rows.push(row);
        }
        for v in other.space.basis().row_vecs() {
            let mut row = vec![F::zero(); width];
            row[n1..n1 + n2].clone_from_slice(&v[..n2]);
            row[n1 + n2 + m1..].clone_from_slice(&v[n2..]);
            rows.push(row);
        }
        LinRel {
            n: n1 + n2,
            m: m1 + m2,
            space: Subspace::row_space(&Matrix::from_rows(width, &rows)),
        }
    }

    /// Relational composite `{(x, z) : ∃y. (x, y) ∈ self ∧ (y, z) ∈ other}`.
    pub fn compose(&self, other: &Self) -> Result<Self, RelError> {
        if self.m != other.n {
            return Err(RelError::Boundary(format!(
                "cannot compose {} → {} with {} → {}",
                self.n, self.m, other.n, other.m
            )));
        }
        let z = self.m;
        let v = self.space.basis().transpose(); // (n + z) × a
        let w = other.space.basis().transpose(); // (z + m) × b
        let v_mid = v.select_rows(self.n..self.n + z);
        let w_mid = w.select_rows(0..z);
        // coefficient pairs (α, β) meeting in the middle: V_mid α = W_mid β
        let meet = kernel(&v_mid.hstack(&w_mid.neg())?);
        let a = v.cols();
        let alphas = meet.basis().select_cols(0..a).transpose();
        let betas = meet.basis().select_cols(a..meet.ambient()).transpose();
        let left = v.select_rows(0..self.n).mul(&alphas)?;
        let right = w.select_rows(z..z + other.m).mul(&betas)?;
        let gens = left.vstack(&right)?;
        Ok(LinRel {
            n: self.n,
            m: other.m,
            space: Subspace::column_space(&gens),
        })
    }

    /// Text form: `dim d, rank r` header then RREF rows.
    pub fn to_text(&self) -> String {
        format!(
            "# relation {} -> {}\n{}",
            self.n,
            self.m,
            self.space.to_text()
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        let basis: Vec<Vec<String>> = self
            .space
            .basis()
            .row_vecs()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect();
        json!({ "n": self.n, "m": self.m, "basis": basis })
    }
}

impl<F: Field> fmt::Display for LinRel<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Canonical kernel `{x : a·x = 0}`.
pub fn kernel<F: Field>(a: &Matrix<F>) -> Subspace<F> {
    let (r, rank) = rref(a);
    let piv = pivots(&r, rank);
    let n = a.cols();
    let free: Vec<usize> = (0..n).filter(|j| !piv.contains(j)).collect();
    let gens: Vec<Vec<F>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![F::zero(); n];
            v[f] = F::one();
            for (i, &p) in piv.iter().enumerate() {
                v[p] = -r.get(i, f).clone();
            }
            v
        })
        .collect();
    Subspace::row_space(&Matrix::from_rows(n, &gens))
}

/// Some exact solution of `a·x = b`, or `None` when inconsistent.
pub fn solve<F: Field>(a: &Matrix<F>, b: &[F]) -> Option<Vec<F>> {
    assert_eq!(
        b.len(),
        a.rows(),
        "right-hand side length must equal row count"
    );
    let aug = a
        .hstack(&Matrix::from_columns(a.rows(), &[b.to_vec()]))
        .expect("same row count");
    let (r, rank) = rref(&aug);
    let piv = pivots(&r, rank);
    if piv.last() == Some(&a.cols()) {
        return None;
    }
    let mut x = vec![F::zero(); a.cols()];
    for (i, &p) in piv.iter().enumerate() {
        x[p] = r.get(i, a.cols()).clone();
    }
    Some(x)
}

pub fn inverse<F: Field>(a: &Matrix<F>) -> Result<Option<Matrix<F>>, MatError> {
    if !a.is_square() {
        return Err(MatError::NotSquare {
            op: "inverse",
            shape: a.shape(),
        });
    }
    let n = a.rows();
    let (r, rank) = rref(&a.hstack(&Matrix::identity(n))?);
    if rank < n || (0..n).any(|i| !r.get(i, i).is_one()) {
        return Ok(None);
    }
    Ok(Some(r.select_cols(n..2 * n)))
}

/// `Φ`: the subspace `{(A z, B z)}` jointly spanned by the legs of a span.
pub fn phi(s: &SpanZ) -> LinRel {
    LinRel {
        n: s.source(),
        m: s.target(),
        space: Subspace::column_space(&s.stacked().embed()),
    }
}

/// `Ψ`: the subspace `{(x, y) : A x = B y}` of a cospan.
pub fn psi(c: &CospanZ) -> LinRel {
    let joint = c
        .left
        .hstack(&c.right.neg())
        .expect("cospan legs share the apex");
    LinRel {
        n: c.source(),
        m: c.target(),
        space: kernel(&joint.embed()),
    }
}

/// Primitive integer vector on the line spanned by `v` (leading entry
/// positive when `v`'s is).
pub fn primitive(v: &[Rat]) -> Vec<Int> {
    clear_denominators(v).0
}

/// Canonical span with minimal apex whose [`phi`] is `r`: the RREF basis
/// vectors, scaled to primitive integer vectors, become the columns.
pub fn rel_to_span(r: &LinRel) -> SpanZ {
    let cols: Vec<Vec<Int>> = r
        .space
        .basis()
        .row_vecs()
        .iter()
        .map(|v| primitive(v))
        .collect();
    let stacked = Matrix::from_columns(r.n + r.m, &cols);
    SpanZ {
        left: stacked.select_rows(0..r.n),
        right: stacked.select_rows(r.n..r.n + r.m),
    }
}

/// A cospan whose [`psi`] is `r`: the integer pushout of [`rel_to_span`].
pub fn rel_to_cospan(r: &LinRel) -> CospanZ {
    let s = rel_to_span(r);
    let (p, q) = pushout(&s.left, &s.right).expect("span legs share the apex");
    CospanZ { left: p, right: q }
}

/// The five kinds of subspace of `ℚ × ℚ`, viewed as relations `1 → 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Line {
    Full,
    Zero,
    /// `{(x, 0)}`
    XAxis,
    /// `{(0, y)}`
    YAxis,
    /// `span{(k1, k2)}`, `k1 > 0`, `k2 != 0`, coprime: the slope `k2/k1`.
    Slope {
        k1: Int,
        k2: Int,
    },
}

impl Line {
    /// The rational the relation stands for, where it stands for one.
    pub fn value(&self) -> Option<Rat> {
        match self {
            Line::XAxis => Some(Rat::zero()),
            Line::Slope { k1, k2 } => Some(Rat::new(k2.clone(), k1.clone())),
            _ => None,
        }
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Line::Full => write!(f, "full"),
            Line::Zero => write!(f, "zero"),
            Line::XAxis => write!(f, "x_axis"),
            Line::YAxis => write!(f, "y_axis"),
            Line::Slope { k1, k2 } => write!(f, "line({k1}, {k2})"),
        }
    }
}

pub fn classify_1_1(r: &LinRel) -> Result<Line, RelError> {
    if (r.n, r.m) != (1, 1) {
        return Err(RelError::Boundary(format!(
            "classification needs a relation 1 → 1, got {} → {}",
            r.n, r.m
        )));
    }
    Ok(match r.space.dim() {
        0 => Line::Zero,
        2 => Line::Full,
        _ => {
            let v = r.space.basis().row(0);
            if v[1].is_zero() {
                Line::XAxis
            } else if v[0].is_zero() {
                Line::YAxis
            } else {
                let w = primitive(v);
                debug_assert!(w[0].is_positive());
                Line::Slope {
                    k1: w[0].clone(),
                    k2: w[1].clone(),
                }
            }
        }
    })
}
