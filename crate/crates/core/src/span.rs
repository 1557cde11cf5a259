//! Spans and cospans of matrices over a PID.
//!
//! A span `n ← z → m` stores its legs as matrices `left: n×z` and
//! `right: m×z`; a cospan `n → z ← m` stores `left: z×n` and `right: z×m`.
//! Spans compose by pullback, cospans by pushout. Both are only meaningful
//! up to recoordinatization of the middle object, see [`span_iso`] and
//! [`cospan_iso`].

use crate::hnf::{hnf, kernel_basis};
use crate::matrix::{MatError, Matrix};
use crate::num::{Int, Pid};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span<R = Int> {
    pub left: Matrix<R>,
    pub right: Matrix<R>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cospan<R = Int> {
    pub left: Matrix<R>,
    pub right: Matrix<R>,
}

pub type SpanZ = Span<Int>;
pub type CospanZ = Cospan<Int>;

impl<R: Pid> Span<R> {
    pub fn new(left: Matrix<R>, right: Matrix<R>) -> Result<Self, MatError> {
        if left.cols() != right.cols() {
            return Err(MatError::DimensionMismatch {
                op: "span",
                left: left.shape(),
                right: right.shape(),
            });
        }
        Ok(Span { left, right })
    }

    /// Left boundary.
    pub fn source(&self) -> usize {
        self.left.rows()
    }

    /// Right boundary.
    pub fn target(&self) -> usize {
        self.right.rows()
    }

    pub fn apex(&self) -> usize {
        self.left.cols()
    }

    pub fn identity(n: usize) -> Self {
        Span {
            left: Matrix::identity(n),
            right: Matrix::identity(n),
        }
    }

    /// `(id, a)`: the span image of the arrow `a`.
    pub fn graph(a: &Matrix<R>) -> Self {
        Span {
            left: Matrix::identity(a.cols()),
            right: a.clone(),
        }
    }

    /// `(a, id)`: the span image of `a` read in the opposite category.
    pub fn cograph(a: &Matrix<R>) -> Self {
        Span {
            left: a.clone(),
            right: Matrix::identity(a.cols()),
        }
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Span {
            left: self.left.direct_sum(&other.left),
            right: self.right.direct_sum(&other.right),
        }
    }

    /// Recoordinatizes the middle object by `u` (`z×z`).
    pub fn reindex(&self, u: &Matrix<R>) -> Result<Self, MatError> {
        Ok(Span {
            left: self.left.mul(u)?,
            right: self.right.mul(u)?,
        })
    }

    /// The cospan of transposed legs.
    pub fn transpose(&self) -> Cospan<R> {
        Cospan {
            left: self.left.transpose(),
            right: self.right.transpose(),
        }
    }

    /// `(left / right)`, the joint map out of the middle object.
    pub fn stacked(&self) -> Matrix<R> {
        self.left.vstack(&self.right).expect("legs share the apex")
    }
}

impl<R: Pid> Cospan<R> {
    pub fn new(left: Matrix<R>, right: Matrix<R>) -> Result<Self, MatError> {
        if left.rows() != right.rows() {
            return Err(MatError::DimensionMismatch {
                op: "cospan",
                left: left.shape(),
                right: right.shape(),
            });
        }
        Ok(Cospan { left, right })
    }

    pub fn source(&self) -> usize {
        self.left.cols()
    }

    pub fn target(&self) -> usize {
        self.right.cols()
    }

    pub fn apex(&self) -> usize {
        self.left.rows()
    }

    pub fn identity(n: usize) -> Self {
        Cospan {
            left: Matrix::identity(n),
            right: Matrix::identity(n),
        }
    }

    /// `(a, id)`.
    pub fn graph(a: &Matrix<R>) -> Self {
        Cospan {
            left: a.clone(),
            right: Matrix::identity(a.rows()),
        }
    }

    /// `(id, a)`.
    pub fn cograph(a: &Matrix<R>) -> Self {
        Cospan {
            left: Matrix::identity(a.rows()),
            right: a.clone(),
        }
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Cospan {
            left: self.left.direct_sum(&other.left),
            right: self.right.direct_sum(&other.right),
        }
    }

    /// Recoordinatizes the middle object by `u` (`z×z`).
    pub fn reindex(&self, u: &Matrix<R>) -> Result<Self, MatError> {
        Ok(Cospan {
            left: u.mul(&self.left)?,
            right: u.mul(&self.right)?,
        })
    }

    pub fn transpose(&self) -> Span<R> {
        Span {
            left: self.left.transpose(),
            right: self.right.transpose(),
        }
    }
}

/// Pullback of `f: n → z` and `g: m → z`: legs `p: r → n`, `q: r → m` with
/// `f·p = g·q`, read off a kernel basis of `(f | -g)`.
pub fn pullback<R: Pid>(f: &Matrix<R>, g: &Matrix<R>) -> Result<(Matrix<R>, Matrix<R>), MatError> {
    let joint = f
        .hstack(&g.neg())
        .map_err(|_| MatError::DimensionMismatch {
            op: "pullback",
            left: f.shape(),
            right: g.shape(),
        })?;
    let k = kernel_basis(&joint);
    let n = f.cols();
    Ok((k.select_rows(0..n), k.select_rows(n..k.rows())))
}

/// Pushout of `f: z → n` and `g: z → m`, as transposed pullback of the
/// transposes: legs `p: n → r`, `q: m → r` with `p·f = q·g`.
pub fn pushout<R: Pid>(f: &Matrix<R>, g: &Matrix<R>) -> Result<(Matrix<R>, Matrix<R>), MatError> {
    if f.cols() != g.cols() {
        return Err(MatError::DimensionMismatch {
            op: "pushout",
            left: f.shape(),
            right: g.shape(),
        });
    }
    let (p, q) = pullback(&f.transpose(), &g.transpose())?;
    Ok((p.transpose(), q.transpose()))
}

/// Whether one unimodular `U` carries `s1` onto `s2`; decided by comparing
/// the reduced HNFs of the stacked legs.
pub fn span_iso<R: Pid>(s1: &Span<R>, s2: &Span<R>) -> bool {
    s1.source() == s2.source()
        && s1.target() == s2.target()
        && s1.apex() == s2.apex()
        && hnf(&s1.stacked()).h == hnf(&s2.stacked()).h
}

pub fn cospan_iso<R: Pid>(c1: &Cospan<R>, c2: &Cospan<R>) -> bool {
    span_iso(&c1.transpose(), &c2.transpose())
}

/// `s1 ; s2`, with apex the pullback of `s1.right` and `s2.left`.
pub fn span_compose<R: Pid>(s1: &Span<R>, s2: &Span<R>) -> Result<Span<R>, MatError> {
    if s1.target() != s2.source() {
        return Err(MatError::DimensionMismatch {
            op: "span_compose",
            left: (s1.source(), s1.target()),
            right: (s2.source(), s2.target()),
        });
    }
    let (p, q) = pullback(&s1.right, &s2.left)?;
    Ok(Span {
        left: s1.left.mul(&p)?,
        right: s2.right.mul(&q)?,
    })
}

/// `c1 ; c2`, with apex the pushout of `c1.right` and `c2.left`.
pub fn cospan_compose<R: Pid>(c1: &Cospan<R>, c2: &Cospan<R>) -> Result<Cospan<R>, MatError> {
    if c1.target() != c2.source() {
        return Err(MatError::DimensionMismatch {
            op: "cospan_compose",
            left: (c1.source(), c1.target()),
            right: (c2.source(), c2.target()),
        });
    }
    let (p, q) = pushout(&c1.right, &c2.left)?;
    Ok(Cospan {
        left: p.mul(&c1.left)?,
        right: q.mul(&c2.right)?,
    })
}

/// `κ1(a) = (id, a)`.
pub fn kappa1<R: Pid>(a: &Matrix<R>) -> Span<R> {
    Span::graph(a)
}

/// `κ2(a) = (a, id)`, for `a` an arrow of the opposite category.
pub fn kappa2<R: Pid>(a: &Matrix<R>) -> Span<R> {
    Span::cograph(a)
}

/// `ι1(a) = (a, id)`.
pub fn iota1<R: Pid>(a: &Matrix<R>) -> Cospan<R> {
    Cospan::graph(a)
}

/// `ι2(a) = (id, a)`, for `a` an arrow of the opposite category.
pub fn iota2<R: Pid>(a: &Matrix<R>) -> Cospan<R> {
    Cospan::cograph(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hnf::solve;
    use crate::matrix::MatZ;

    fn m(rows: usize, cols: usize, e: &[i64]) -> MatZ {
        MatZ::from_i64(rows, cols, e)
    }

    #[test]
    fn pullback_of_unit_and_addition() {
        // 0 → 1 and (1 1): 2 → 1
        let (p, q) = pullback(&MatZ::zeros(1, 0), &m(1, 2, &[1, 1])).unwrap();
        assert_eq!(p.shape(), (0, 1));
        assert_eq!(q, m(2, 1, &[1, -1]));
    }

    #[test]
    fn pullback_of_identities() {
        for n in 0..4 {
            let (p, q) = pullback(&MatZ::identity(n), &MatZ::identity(n)).unwrap();
            assert_eq!(p, MatZ::identity(n));
            assert_eq!(q, MatZ::identity(n));
        }
    }

    #[test]
    fn pullback_of_scalars() {
        let (p, q) = pullback(&m(1, 1, &[2]), &m(1, 1, &[3])).unwrap();
        assert_eq!((p.clone(), q.clone()), (m(1, 1, &[3]), m(1, 1, &[2])));
        // oracle: kernel of (2 -3) in a box is exactly the multiples of (3, 2)
        for x in -9i64..=9 {
            for y in -9i64..=9 {
                if 2 * x == 3 * y {
                    let t = x / 3;
                    assert_eq!((x, y), (3 * t, 2 * t));
                    assert!(solve(&p.vstack(&q).unwrap(), &[x.into(), y.into()]).is_some());
                }
            }
        }
    }

    #[test]
    fn pushout_examples() {
        for n in 0..3 {
            let (p, q) = pushout(&MatZ::identity(n), &MatZ::identity(n)).unwrap();
            assert_eq!((p, q), (MatZ::identity(n), MatZ::identity(n)));
        }
        let (p, q) = pushout(&m(1, 1, &[3]), &m(1, 1, &[2])).unwrap();
        assert_eq!((p, q), (m(1, 1, &[2]), m(1, 1, &[3])));

        // f: 1 → 0, g = (1, -1)ᵀ: 1 → 2; transpose of the unit/addition pullback
        let f = MatZ::zeros(0, 1);
        let g = m(2, 1, &[1, -1]);
        let (p, q) = pushout(&f, &g).unwrap();
        let (pt, qt) = pullback(&f.transpose(), &g.transpose()).unwrap();
        assert_eq!((p.transpose(), q.transpose()), (pt, qt));
        assert_eq!(p.shape(), (1, 0));
        assert_eq!(q, m(1, 2, &[1, 1]));
        assert_eq!(p.mul(&f).unwrap(), q.mul(&g).unwrap());
    }

    #[test]
    fn mismatched_legs() {
        assert!(pullback(&MatZ::zeros(1, 1), &MatZ::zeros(2, 1)).is_err());
        assert!(pushout(&MatZ::zeros(1, 1), &MatZ::zeros(1, 2)).is_err());
        assert!(Span::new(MatZ::zeros(1, 1), MatZ::zeros(1, 2)).is_err());
        assert!(Cospan::new(MatZ::zeros(1, 1), MatZ::zeros(2, 1)).is_err());
        let s = Span::graph(&m(1, 1, &[2]));
        let t = Span::graph(&MatZ::zeros(1, 2));
        assert!(span_compose(&s, &t).is_err());
    }

    #[test]
    fn iso_examples() {
        let s = Span::new(m(2, 2, &[1, 2, 0, 3]), m(1, 2, &[4, 5])).unwrap();
        let u = m(2, 2, &[1, 5, 0, 1]);
        assert!(span_iso(&s, &s.reindex(&u).unwrap()));
        let a = Span::graph(&m(1, 1, &[2]));
        let b = Span::graph(&m(1, 1, &[3]));
        assert!(!span_iso(&a, &b));
        let wide = Span::new(m(1, 2, &[1, 0]), m(1, 2, &[2, 0])).unwrap();
        assert!(!span_iso(&a, &wide));

        let c = Cospan::new(m(2, 1, &[1, 2]), m(2, 2, &[0, 1, 3, 1])).unwrap();
        assert!(cospan_iso(&c, &c));
        assert!(cospan_iso(&c, &c.reindex(&m(2, 2, &[0, 1, 1, 0])).unwrap()));
        assert!(!cospan_iso(
            &Cospan::graph(&m(1, 1, &[2])),
            &Cospan::graph(&m(1, 1, &[3]))
        ));
    }

    #[test]
    fn span_composition_examples() {
        let s = Span::new(m(2, 1, &[1, 2]), m(1, 1, &[3])).unwrap();
        assert!(span_iso(&span_compose(&Span::identity(2), &s).unwrap(), &s));
        assert!(span_iso(&span_compose(&s, &Span::identity(1)).unwrap(), &s));

        let a = m(2, 2, &[1, 2, 3, 4]);
        let b = m(1, 2, &[5, -1]);
        let composed = span_compose(&Span::graph(&a), &Span::graph(&b)).unwrap();
        assert!(span_iso(&composed, &Span::graph(&b.mul(&a).unwrap())));

        let composed =
            span_compose(&Span::graph(&m(1, 1, &[2])), &Span::cograph(&m(1, 1, &[3]))).unwrap();
        let expected = Span::new(m(1, 1, &[3]), m(1, 1, &[2])).unwrap();
        assert!(span_iso(&composed, &expected));
    }

    #[test]
    fn cospan_composition_examples() {
        let c = Cospan::new(m(1, 2, &[1, 2]), m(1, 1, &[3])).unwrap();
        assert!(cospan_iso(
            &cospan_compose(&Cospan::identity(2), &c).unwrap(),
            &c
        ));
        assert!(cospan_iso(
            &cospan_compose(&c, &Cospan::identity(1)).unwrap(),
            &c
        ));

        // (a, id) ; (b, id) ≅ (b·a, id)
        let a = m(2, 2, &[1, 2, 3, 4]);
        let b = m(1, 2, &[5, -1]);
        let composed = cospan_compose(&Cospan::graph(&a), &Cospan::graph(&b)).unwrap();
        assert!(cospan_iso(&composed, &Cospan::graph(&b.mul(&a).unwrap())));

        // dual of the scalar span example
        let composed = cospan_compose(
            &Cospan::cograph(&m(1, 1, &[3])),
            &Cospan::graph(&m(1, 1, &[2])),
        )
        .unwrap();
        let expected = Cospan::new(m(1, 1, &[2]), m(1, 1, &[3])).unwrap();
        assert!(cospan_iso(&composed, &expected));
    }
}
