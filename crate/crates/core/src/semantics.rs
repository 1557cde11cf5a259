//! Evaluators from circuits to linear relations, spans and cospans, plus
//! semantic equality and the span/cospan normal forms.

use std::fmt;

use thiserror::Error;

use crate::circuit::{matrix_to_circuit, Circuit, Gen, Interface, TypeError};
use crate::linrel::{classify_1_1, rel_to_cospan, rel_to_span, LinRel, Line};
use crate::matrix::{MatQ, MatZ};
use crate::num::Int;
use crate::span::{cospan_compose, iota1, iota2, kappa1, kappa2, span_compose, CospanZ, SpanZ};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error("not a matrix: {0}")]
    NotAMatrix(String),
    #[error("expected a circuit 1->1, got {0}")]
    NotEndo(Interface),
}

fn swap_matrix() -> MatZ {
    MatZ::permutation(&[1, 0])
}

/// The relation denoted by a circuit.
pub fn sem_rel(c: &Circuit) -> Result<LinRel, SemError> {
    c.typecheck()?;
    Ok(eval_rel(c))
}

fn eval_rel(c: &Circuit) -> LinRel {
    match c {
        Circuit::Gen(g) => {
            let r = LinRel::graph(&g.matrix().embed());
            if g.is_co() {
                r.converse()
            } else {
                r
            }
        }
        Circuit::Id(n) => LinRel::identity(*n),
        Circuit::Sym => LinRel::symmetry(1, 1),
        Circuit::Seq(a, b) => eval_rel(a)
            .compose(&eval_rel(b))
            .expect("typechecked circuit composes"),
        Circuit::Tensor(a, b) => eval_rel(a).tensor(&eval_rel(b)),
    }
}

/// Evaluation into integer spans: generators by `κ1`, mirrored generators
/// by `κ2`, composition by pullback.
pub fn sem_span(c: &Circuit) -> Result<SpanZ, SemError> {
    c.typecheck()?;
    Ok(eval_span(c))
}

fn eval_span(c: &Circuit) -> SpanZ {
    match c {
        Circuit::Gen(g) if g.is_co() => kappa2(&g.matrix()),
        Circuit::Gen(g) => kappa1(&g.matrix()),
        Circuit::Id(n) => SpanZ::identity(*n),
        Circuit::Sym => kappa1(&swap_matrix()),
        Circuit::Seq(a, b) => {
            span_compose(&eval_span(a), &eval_span(b)).expect("typechecked circuit composes")
        }
        Circuit::Tensor(a, b) => eval_span(a).tensor(&eval_span(b)),
    }
}

/// Evaluation into integer cospans: generators by `ι1`, mirrored generators
/// by `ι2`, composition by pushout.
pub fn sem_cospan(c: &Circuit) -> Result<CospanZ, SemError> {
    c.typecheck()?;
    Ok(eval_cospan(c))
}

fn eval_cospan(c: &Circuit) -> CospanZ {
    match c {
        Circuit::Gen(g) if g.is_co() => iota2(&g.matrix()),
        Circuit::Gen(g) => iota1(&g.matrix()),
        Circuit::Id(n) => CospanZ::identity(*n),
        Circuit::Sym => iota1(&swap_matrix()),
        Circuit::Seq(a, b) => {
            cospan_compose(&eval_cospan(a), &eval_cospan(b)).expect("typechecked circuit composes")
        }
        Circuit::Tensor(a, b) => eval_cospan(a).tensor(&eval_cospan(b)),
    }
}

pub fn tra_span_to_cospan(s: &SpanZ) -> CospanZ {
    s.transpose()
}

/// Outcome of comparing two circuits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    Unequal,
    InterfaceMismatch(Interface, Interface),
    IllTyped(TypeError),
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Equal => write!(f, "equal"),
            Verdict::Unequal => write!(f, "unequal: the circuits denote different relations"),
            Verdict::InterfaceMismatch(a, b) => write!(f, "unequal: interfaces {a} and {b} differ"),
            Verdict::IllTyped(e) => write!(f, "unequal: {e}"),
        }
    }
}

pub fn compare(c1: &Circuit, c2: &Circuit) -> Verdict {
    let (i1, i2) = match (c1.typecheck(), c2.typecheck()) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return Verdict::IllTyped(e),
    };
    if i1 != i2 {
        return Verdict::InterfaceMismatch(i1, i2);
    }
    if eval_rel(c1) == eval_rel(c2) {
        Verdict::Equal
    } else {
        Verdict::Unequal
    }
}

/// Whether two circuits denote the same relation.
pub fn equal_ih(c1: &Circuit, c2: &Circuit) -> bool {
    compare(c1, c2).is_equal()
}

/// `mirror(A) ; B` for the canonical span `(A, B)` of the circuit's relation.
pub fn normal_form(c: &Circuit) -> Result<Circuit, SemError> {
    let s = rel_to_span(&sem_rel(c)?);
    Ok(matrix_to_circuit(&s.left)
        .mirror()
        .then(matrix_to_circuit(&s.right)))
}

/// `P ; mirror(Q)` for the cospan `(P, Q)` of the circuit's relation.
pub fn cospan_form(c: &Circuit) -> Result<Circuit, SemError> {
    let k = rel_to_cospan(&sem_rel(c)?);
    Ok(matrix_to_circuit(&k.left).then(matrix_to_circuit(&k.right).mirror()))
}

/// The integer matrix whose graph the circuit denotes.
pub fn circuit_to_matrix(c: &Circuit) -> Result<MatZ, SemError> {
    let r = sem_rel(c)?;
    let (n, m) = (r.source(), r.target());
    let basis = r.space().basis();
    if basis.rows() != n || r.space().pivot_columns() != (0..n).collect::<Vec<_>>() {
        return Err(SemError::NotAMatrix(format!(
            "the relation {n}->{m} is not the graph of a function"
        )));
    }
    // the RREF basis is (I | Aᵀ)
    let a: MatQ = basis.select_cols(n..n + m).transpose();
    a.to_integer()
        .ok_or_else(|| SemError::NotAMatrix("the relation has non-integer coefficients".into()))
}

/// `coamp(q) ; amp(p)`, the circuit for the fraction `p/q`.
pub fn frac(p: impl Into<Int>, q: impl Into<Int>) -> Circuit {
    Circuit::coamp(q).then(Circuit::amp(p))
}

/// `x * y` as circuits `1 → 1`.
pub fn frac_mul(x: Circuit, y: Circuit) -> Circuit {
    x.then(y)
}

/// `x + y` as circuits `1 → 1`.
pub fn frac_add(x: Circuit, y: Circuit) -> Circuit {
    Circuit::dup().then(x.beside(y)).then(Circuit::add())
}

/// Which subspace of `ℚ × ℚ` a circuit `1 → 1` denotes.
pub fn classify(c: &Circuit) -> Result<Line, SemError> {
    let i = c.typecheck()?;
    if i != Interface::new(1, 1) {
        return Err(SemError::NotEndo(i));
    }
    Ok(classify_1_1(&eval_rel(c)).expect("relation is 1->1"))
}

/// Canonical representative of each kind of subspace of `ℚ × ℚ`.
pub fn line_circuit(l: &Line) -> Circuit {
    match l {
        Line::Full => Circuit::del().then(Circuit::codel()),
        Line::Zero => Circuit::cozero().then(Circuit::zero()),
        Line::XAxis => Circuit::del().then(Circuit::zero()),
        Line::YAxis => Circuit::cozero().then(Circuit::codel()),
        Line::Slope { k1, k2 } => frac(k2.clone(), k1.clone()),
    }
}

impl Gen {
    /// The relation of a single generator.
    pub fn relation(&self) -> LinRel {
        eval_rel(&Circuit::Gen(self.clone()))
    }
}
