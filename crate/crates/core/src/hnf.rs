//! Column-style Hermite normal form over a PID and what falls out of it:
//! kernels, integer solving, determinants.
//!
//! A matrix is in HNF when its first `r` columns vanish and every later
//! column `i` has a nonzero entry in some row `f(i)` with only zeros below,
//! `f` strictly increasing. [`hnf`] additionally returns the *reduced*
//! representative: pivots are canonical (positive over ℤ) and every entry to
//! the right of a pivot, in the pivot's row, is a canonical residue modulo
//! that pivot. The reduced form is unique in each column-equivalence class.

use crate::matrix::{MatError, Matrix};
use crate::num::Pid;

/// The data `(r, f)` witnessing that a matrix is in HNF.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnfShape {
    /// Number of leading zero columns.
    pub zero_cols: usize,
    /// `pivot_rows[k]` is the (0-based) pivot row of column `zero_cols + k`.
    pub pivot_rows: Vec<usize>,
}

impl HnfShape {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnfResult<R> {
    pub h: Matrix<R>,
    /// Unimodular with `h = a · u`.
    pub u: Matrix<R>,
    pub shape: HnfShape,
}

/// Checks the three HNF conditions and returns the unique `(r, f)` if they
/// hold.
///
/// The pivot row of a nonzero column is forced to be its lowest nonzero
/// entry, and the zero columns must form a prefix.
pub fn is_hnf<R: Pid>(a: &Matrix<R>) -> Option<HnfShape> {
    let lowest_nonzero = |j: usize| (0..a.rows()).rev().find(|&i| !a.get(i, j).is_zero());
    let zero_cols = (0..a.cols())
        .take_while(|&j| lowest_nonzero(j).is_none())
        .count();
    let mut pivot_rows = Vec::with_capacity(a.cols() - zero_cols);
    for j in zero_cols..a.cols() {
        let row = lowest_nonzero(j)?;
        if pivot_rows.last().is_some_and(|&prev| prev >= row) {
            return None;
        }
        pivot_rows.push(row);
    }
    let shape = HnfShape {
        zero_cols,
        pivot_rows,
    };
    debug_assert!(satisfies_triangular_lemma(a, &shape));
    Some(shape)
}

/// In a matrix in HNF, the pivot row of column `i` is zero left of `i`.
pub fn satisfies_triangular_lemma<R: Pid>(a: &Matrix<R>, shape: &HnfShape) -> bool {
    shape.pivot_rows.iter().enumerate().all(|(k, &row)| {
        let col = shape.zero_cols + k;
        (0..col).all(|j| a.get(row, j).is_zero())
    })
}

/// HNF plus canonical pivots and reduced entries right of each pivot.
pub fn is_canonical_hnf<R: Pid>(a: &Matrix<R>) -> bool {
    let Some(shape) = is_hnf(a) else {
        return false;
    };
    shape.pivot_rows.iter().enumerate().all(|(k, &row)| {
        let col = shape.zero_cols + k;
        let pivot = a.get(row, col);
        if !pivot.canonical_unit().is_one() {
            return false;
        }
        (col + 1..a.cols()).all(|j| a.get(row, j).residue_quotient(pivot).is_zero())
    })
}

/// Reduced Hermite normal form by unimodular column operations.
///
/// Rows are processed bottom-up; each row's entries among the still-free
/// columns are gcd-combined into the rightmost free column, which then
/// becomes a pivot column.
pub fn hnf<R: Pid>(a: &Matrix<R>) -> HnfResult<R> {
    let (m, n) = a.shape();
    let mut h = a.clone();
    let mut u = Matrix::identity(n);
    // columns 0..free are not yet pivots
    let mut free = n;
    let mut pivot_rows = Vec::new();

    for i in (0..m).rev() {
        if free == 0 {
            break;
        }
        let p = free - 1;
        for j in (0..p).rev() {
            let b = h.get(i, j).clone();
            if b.is_zero() {
                continue;
            }
            let a_ip = h.get(i, p).clone();
            let (g, s, t) = R::xgcd(&a_ip, &b);
            // (C_p, C_j) <- (s C_p + t C_j, -(b/g) C_p + (a/g) C_j); det = 1
            let bg = -b.div_exact(&g);
            let ag = a_ip.div_exact(&g);
            h.combine_cols(p, j, &s, &t, &bg, &ag);
            u.combine_cols(p, j, &s, &t, &bg, &ag);
            debug_assert!(h.get(i, j).is_zero());
        }
        let pivot = h.get(i, p).clone();
        if pivot.is_zero() {
            continue;
        }
        let unit = pivot.canonical_unit();
        if !unit.is_one() {
            h.scale_col(p, &unit);
            u.scale_col(p, &unit);
        }
        let pivot = h.get(i, p).clone();
        for j in free..n {
            let q = h.get(i, j).residue_quotient(&pivot);
            if !q.is_zero() {
                h.add_col_multiple(j, p, &-q.clone());
                u.add_col_multiple(j, p, &-q);
            }
        }
        pivot_rows.push(i);
        free -= 1;
    }
    pivot_rows.reverse();
    let shape = HnfShape {
        zero_cols: free,
        pivot_rows,
    };
    debug_assert_eq!(is_hnf(&h).as_ref(), Some(&shape));
    HnfResult { h, u, shape }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det<R: Pid>(a: &Matrix<R>) -> Result<R, MatError> {
    if !a.is_square() {
        return Err(MatError::NotSquare {
            op: "det",
            shape: a.shape(),
        });
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut sign = R::one();
    let mut prev = R::one();
    for k in 0..n {
        if m.get(k, k).is_zero() {
            match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                Some(i) => {
                    m.swap_rows(k, i);
                    sign = -sign;
                }
                None => return Ok(R::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m.get(k, k).clone() * m.get(i, j).clone()
                    - m.get(i, k).clone() * m.get(k, j).clone();
                m.set(i, j, v.div_exact(&prev));
            }
            m.set(i, k, R::zero());
        }
        prev = m.get(k, k).clone();
    }
    if n == 0 {
        return Ok(R::one());
    }
    Ok(sign * m.get(n - 1, n - 1).clone())
}

pub fn is_unimodular<R: Pid>(u: &Matrix<R>) -> bool {
    u.is_square() && det(u).map(|d| d.is_unit()).unwrap_or(false)
}

/// A basis of the kernel module `{x : a·x = 0}` as the columns of a
/// `cols × (cols - rank)` matrix; each column's first nonzero entry is
/// canonical (positive over ℤ).
pub fn kernel_basis<R: Pid>(a: &Matrix<R>) -> Matrix<R> {
    let res = hnf(a);
    let mut k = res.u.select_cols(0..res.shape.zero_cols);
    for j in 0..k.cols() {
        if let Some(i) = (0..k.rows()).find(|&i| !k.get(i, j).is_zero()) {
            let unit = k.get(i, j).canonical_unit();
            if !unit.is_one() {
                k.scale_col(j, &unit);
            }
        }
    }
    k
}

/// Some `x` with `a·x = b` over the ring, or `None`.
pub fn solve<R: Pid>(a: &Matrix<R>, b: &[R]) -> Option<Vec<R>> {
    assert_eq!(
        b.len(),
        a.rows(),
        "right-hand side length must equal row count"
    );
    let res = hnf(a);
    let HnfShape {
        zero_cols,
        pivot_rows,
    } = &res.shape;
    // solve h·y = b by back-substitution on pivot columns, highest first
    let mut y = vec![R::zero(); a.cols()];
    let mut residual = b.to_vec();
    for (k, &row) in pivot_rows.iter().enumerate().rev() {
        let col = zero_cols + k;
        let pivot = res.h.get(row, col);
        let q = residual[row].clone().div_rem_check(pivot)?;
        for (i, r) in residual.iter_mut().enumerate() {
            *r = r.clone() - res.h.get(i, col).clone() * q.clone();
        }
        y[col] = q;
    }
    if residual.iter().any(|r| !r.is_zero()) {
        return None;
    }
    Some(res.u.mul_vec(&y).expect("u is cols × cols"))
}

trait ExactQuotient: Sized {
    fn div_rem_check(self, d: &Self) -> Option<Self>;
}

impl<R: Pid> ExactQuotient for R {
    fn div_rem_check(self, d: &Self) -> Option<Self> {
        let q = self.residue_quotient(d);
        if (self - q.clone() * d.clone()).is_zero() {
            Some(q)
        } else {
            None
        }
    }
}

/// Rank of an integer matrix (its number of HNF pivots).
pub fn rank<R: Pid>(a: &Matrix<R>) -> usize {
    hnf(a).shape.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::MatZ;
    use crate::num::Int;

    fn int(x: i64) -> Int {
        Int::from(x)
    }

    #[test]
    fn reference_example_is_hnf() {
        let a = MatZ::from_i64(
            5,
            4,
            &[0, 0, 2, -1, 0, 4, 1, -3, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 3],
        );
        let shape = is_hnf(&a).unwrap();
        assert_eq!(shape.zero_cols, 1);
        // f = {2 ↦ 2, 3 ↦ 3, 4 ↦ 5} in 1-based indices
        assert_eq!(shape.pivot_rows, vec![1, 2, 4]);
        assert!(satisfies_triangular_lemma(&a, &shape));
        // the 1 and -3 right of the pivot 4 are not reduced
        assert!(!is_canonical_hnf(&a));
    }

    #[test]
    fn is_hnf_trivial_cases() {
        let z = MatZ::zeros(3, 3);
        assert_eq!(
            is_hnf(&z),
            Some(HnfShape {
                zero_cols: 3,
                pivot_rows: vec![]
            })
        );
        assert_eq!(
            is_hnf(&MatZ::identity(2)),
            Some(HnfShape {
                zero_cols: 0,
                pivot_rows: vec![0, 1]
            })
        );
        // zero column after a nonzero one
        assert_eq!(is_hnf(&MatZ::from_i64(1, 2, &[1, 0])), None);
        // pivots not increasing
        assert_eq!(is_hnf(&MatZ::from_i64(2, 2, &[0, 1, 1, 0])), None);
    }

    #[test]
    fn hnf_examples() {
        let z = MatZ::zeros(2, 3);
        let r = hnf(&z);
        assert_eq!(r.h, z);
        assert_eq!(r.u, MatZ::identity(3));

        let i3 = MatZ::identity(3);
        let r = hnf(&i3);
        assert_eq!(r.h, i3);
        assert_eq!(r.u, i3);

        // (2 -1): hand column reduction C1 <- C1 + 2 C2 gives (0 -1), then
        // negate C2 for a positive pivot: (0 1)
        let a = MatZ::from_i64(1, 2, &[2, -1]);
        let r = hnf(&a);
        assert_eq!(r.h, MatZ::from_i64(1, 2, &[0, 1]));
        assert_eq!(a.mul(&r.u).unwrap(), r.h);
        assert!(is_unimodular(&r.u));
        assert_eq!(r.shape.zero_cols, 1);
    }

    #[test]
    fn canonical_form_of_reference_example() {
        let a = MatZ::from_i64(
            5,
            4,
            &[0, 0, 2, -1, 0, 4, 1, -3, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 3],
        );
        let r = hnf(&a);
        assert!(is_canonical_hnf(&r.h));
        assert_eq!(a.mul(&r.u).unwrap(), r.h);
        assert_eq!(is_hnf(&r.h).unwrap().pivot_rows, vec![1, 2, 4]);
    }

    #[test]
    fn determinants() {
        assert_eq!(det(&MatZ::identity(4)).unwrap(), int(1));
        assert_eq!(det(&MatZ::from_i64(2, 2, &[0, 1, 1, 0])).unwrap(), int(-1));
        assert_eq!(det(&MatZ::from_i64(2, 2, &[2, 1, 0, 3])).unwrap(), int(6));
        assert_eq!(det(&MatZ::identity(0)).unwrap(), int(1));
        assert_eq!(
            det(&MatZ::from_i64(3, 3, &[2, -3, 1, 2, 0, -1, 1, 4, 5])).unwrap(),
            int(49)
        );
        assert!(det(&MatZ::zeros(2, 3)).is_err());
    }

    #[test]
    fn unimodularity() {
        assert!(is_unimodular(&MatZ::identity(3)));
        assert!(is_unimodular(&MatZ::from_i64(2, 2, &[1, 5, 0, 1])));
        assert!(!is_unimodular(&MatZ::from_i64(2, 2, &[2, 0, 0, 1])));
        assert!(!is_unimodular(&MatZ::zeros(1, 2)));
    }

    #[test]
    fn kernel_examples() {
        let a = MatZ::from_i64(1, 2, &[2, -1]);
        let k = kernel_basis(&a);
        assert_eq!(k, MatZ::from_i64(2, 1, &[1, 2]));
        // brute-force oracle: every kernel point in the box is a multiple of (1, 2)
        for x in -5i64..=5 {
            for y in -5i64..=5 {
                if 2 * x - y == 0 {
                    assert_eq!(y, 2 * x);
                }
            }
        }

        assert_eq!(kernel_basis(&MatZ::identity(3)).shape(), (3, 0));
        let k = kernel_basis(&MatZ::zeros(1, 2));
        assert_eq!(k.shape(), (2, 2));
        assert!(is_unimodular(&k));
    }

    #[test]
    fn solve_examples() {
        let a = MatZ::from_i64(1, 1, &[2]);
        assert_eq!(solve(&a, &[int(4)]), Some(vec![int(2)]));
        assert_eq!(solve(&a, &[int(3)]), None);
        let a = MatZ::from_i64(1, 2, &[2, -1]);
        let x = solve(&a, &[int(1)]).unwrap();
        assert_eq!(&int(2) * &x[0] - &x[1], int(1));
        // over-determined, consistent and inconsistent
        let a = MatZ::from_i64(2, 1, &[2, 4]);
        assert_eq!(solve(&a, &[int(6), int(12)]), Some(vec![int(3)]));
        assert_eq!(solve(&a, &[int(6), int(13)]), None);
        // 0-column system
        assert_eq!(solve(&MatZ::zeros(2, 0), &[int(0), int(0)]), Some(vec![]));
        assert_eq!(solve(&MatZ::zeros(1, 0), &[int(1)]), None);
    }
}
