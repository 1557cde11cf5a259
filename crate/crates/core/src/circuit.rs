//! String-diagram terms over the twelve generators, with a small textual
//! syntax.
//!
//! ```text
//! circuit := term { ";" term }      sequential composition, loosest
//! term    := factor { "*" factor }  monoidal product
//! factor  := atom | "(" circuit ")"
//! atom    := id [ "(" nat ")" ] | sym | add | zero | dup | del
//!          | coadd | cozero | codup | codel | amp(int) | coamp(int) | neg
//! ```
//!
//! `add`/`zero` are the white monoid, `dup`/`del` the black comonoid,
//! `amp(k)` the scalar `k`, and the `co` versions their mirror images.

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::matrix::MatZ;
use crate::num::{parse_int, Int};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Gen {
    /// 2 → 1
    Add,
    /// 0 → 1
    Zero,
    /// 1 → 2
    Dup,
    /// 1 → 0
    Del,
    /// 1 → 1
    Amp(Int),
    /// 1 → 2
    CoAdd,
    /// 1 → 0
    CoZero,
    /// 2 → 1
    CoDup,
    /// 0 → 1
    CoDel,
    /// 1 → 1
    CoAmp(Int),
}

impl Gen {
    pub fn interface(&self) -> Interface {
        let (a, c) = match self {
            Gen::Add | Gen::CoDup => (2, 1),
            Gen::Zero | Gen::CoDel => (0, 1),
            Gen::Dup | Gen::CoAdd => (1, 2),
            Gen::Del | Gen::CoZero => (1, 0),
            Gen::Amp(_) | Gen::CoAmp(_) => (1, 1),
        };
        Interface::new(a, c)
    }

    /// Whether this is one of the mirrored generators.
    pub fn is_co(&self) -> bool {
        matches!(
            self,
            Gen::CoAdd | Gen::CoZero | Gen::CoDup | Gen::CoDel | Gen::CoAmp(_)
        )
    }

    /// The same picture reflected left-to-right (the converse relation).
    pub fn mirror(&self) -> Gen {
        match self {
            Gen::Add => Gen::CoAdd,
            Gen::Zero => Gen::CoZero,
            Gen::Dup => Gen::CoDup,
            Gen::Del => Gen::CoDel,
            Gen::Amp(k) => Gen::CoAmp(k.clone()),
            Gen::CoAdd => Gen::Add,
            Gen::CoZero => Gen::Zero,
            Gen::CoDup => Gen::Dup,
            Gen::CoDel => Gen::Del,
            Gen::CoAmp(k) => Gen::Amp(k.clone()),
        }
    }

    /// The other color, same orientation.
    pub fn negative(&self) -> Gen {
        match self {
            Gen::Del => Gen::CoZero,
            Gen::CoZero => Gen::Del,
            Gen::CoDel => Gen::Zero,
            Gen::Zero => Gen::CoDel,
            Gen::Add => Gen::CoDup,
            Gen::CoDup => Gen::Add,
            Gen::CoAdd => Gen::Dup,
            Gen::Dup => Gen::CoAdd,
            Gen::Amp(k) => Gen::CoAmp(k.clone()),
            Gen::CoAmp(k) => Gen::Amp(k.clone()),
        }
    }

    /// Integer matrix of the generator, or of its mirror image for the `co`
    /// generators (so `coadd` yields `(1 1)` just like `add`).
    pub fn matrix(&self) -> MatZ {
        match self {
            Gen::Add | Gen::CoAdd => MatZ::from_i64(1, 2, &[1, 1]),
            Gen::Zero | Gen::CoZero => MatZ::zeros(1, 0),
            Gen::Dup | Gen::CoDup => MatZ::from_i64(2, 1, &[1, 1]),
            Gen::Del | Gen::CoDel => MatZ::zeros(0, 1),
            Gen::Amp(k) | Gen::CoAmp(k) => MatZ::from_vec(1, 1, vec![k.clone()]),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interface {
    pub arity: usize,
    pub coarity: usize,
}

impl Interface {
    pub fn new(arity: usize, coarity: usize) -> Self {
        Interface { arity, coarity }
    }
}

impl fmt::Display for Interface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.arity, self.coarity)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Circuit {
    Gen(Gen),
    Id(usize),
    /// The symmetry `2 → 2` crossing two wires.
    Sym,
    Seq(Box<Circuit>, Box<Circuit>),
    Tensor(Box<Circuit>, Box<Circuit>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("type error in `{term}`: left side ends in {left}, right side starts from {right}")]
pub struct TypeError {
    pub term: String,
    pub left: Interface,
    pub right: Interface,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: unexpected {found}, expected {expected}")]
    Unexpected {
        line: usize,
        col: usize,
        found: String,
        expected: &'static str,
    },
    #[error("{line}:{col}: unknown atom `{name}`")]
    UnknownAtom {
        line: usize,
        col: usize,
        name: String,
    },
}

impl Circuit {
    pub fn gen(g: Gen) -> Self {
        Circuit::Gen(g)
    }

    pub fn add() -> Self {
        Circuit::Gen(Gen::Add)
    }

    pub fn zero() -> Self {
        Circuit::Gen(Gen::Zero)
    }

    pub fn dup() -> Self {
        Circuit::Gen(Gen::Dup)
    }

    pub fn del() -> Self {
        Circuit::Gen(Gen::Del)
    }

    pub fn coadd() -> Self {
        Circuit::Gen(Gen::CoAdd)
    }

    pub fn cozero() -> Self {
        Circuit::Gen(Gen::CoZero)
    }

    pub fn codup() -> Self {
        Circuit::Gen(Gen::CoDup)
    }

    pub fn codel() -> Self {
        Circuit::Gen(Gen::CoDel)
    }

    pub fn amp(k: impl Into<Int>) -> Self {
        Circuit::Gen(Gen::Amp(k.into()))
    }

    pub fn coamp(k: impl Into<Int>) -> Self {
        Circuit::Gen(Gen::CoAmp(k.into()))
    }

    /// The antipode `amp(-1)`.
    pub fn neg() -> Self {
        Circuit::amp(-1)
    }

    pub fn id(n: usize) -> Self {
        Circuit::Id(n)
    }

    pub fn then(self, next: Circuit) -> Self {
        Circuit::Seq(Box::new(self), Box::new(next))
    }

    pub fn beside(self, below: Circuit) -> Self {
        Circuit::Tensor(Box::new(self), Box::new(below))
    }

    /// Left-associated sequential composite; `None` for an empty list.
    pub fn seq_all(parts: impl IntoIterator<Item = Circuit>) -> Option<Circuit> {
        parts.into_iter().reduce(Circuit::then)
    }

    /// Left-associated monoidal product; `id(0)` for an empty list.
    pub fn tensor_all(parts: impl IntoIterator<Item = Circuit>) -> Circuit {
        parts
            .into_iter()
            .reduce(Circuit::beside)
            .unwrap_or(Circuit::Id(0))
    }

    /// Canonical adjacent-transposition network sending input wire `j` to
    /// output wire `perm[j]`.
    pub fn perm(perm: &[usize]) -> Circuit {
        Circuit::seq_all(permutation_layers(perm)).unwrap_or(Circuit::Id(perm.len()))
    }

    pub fn typecheck(&self) -> Result<Interface, TypeError> {
        match self {
            Circuit::Gen(g) => Ok(g.interface()),
            Circuit::Id(n) => Ok(Interface::new(*n, *n)),
            Circuit::Sym => Ok(Interface::new(2, 2)),
            Circuit::Seq(a, b) => {
                let ia = a.typecheck()?;
                let ib = b.typecheck()?;
                if ia.coarity != ib.arity {
                    return Err(TypeError {
                        term: self.to_string(),
                        left: ia,
                        right: ib,
                    });
                }
                Ok(Interface::new(ia.arity, ib.coarity))
            }
            Circuit::Tensor(a, b) => {
                let ia = a.typecheck()?;
                let ib = b.typecheck()?;
                Ok(Interface::new(ia.arity + ib.arity, ia.coarity + ib.coarity))
            }
        }
    }

    /// Left-right reflection: every generator becomes its converse and
    /// sequential composites reverse.
    pub fn mirror(&self) -> Circuit {
        match self {
            Circuit::Gen(g) => Circuit::Gen(g.mirror()),
            Circuit::Id(n) => Circuit::Id(*n),
            Circuit::Sym => Circuit::Sym,
            Circuit::Seq(a, b) => b.mirror().then(a.mirror()),
            Circuit::Tensor(a, b) => a.mirror().beside(b.mirror()),
        }
    }

    /// Photographic negative: swaps the two colors, keeps orientation.
    pub fn pn(&self) -> Circuit {
        match self {
            Circuit::Gen(g) => Circuit::Gen(g.negative()),
            Circuit::Id(n) => Circuit::Id(*n),
            Circuit::Sym => Circuit::Sym,
            Circuit::Seq(a, b) => a.pn().then(b.pn()),
            Circuit::Tensor(a, b) => a.pn().beside(b.pn()),
        }
    }

    /// Rewrites every scalar into `add`, `zero`, `dup`, `del` and the
    /// antipode (and their mirror images).
    pub fn desugar_scalars(&self) -> Circuit {
        match self {
            Circuit::Gen(Gen::Amp(k)) => desugar_amp(k),
            Circuit::Gen(Gen::CoAmp(k)) => desugar_amp(k).mirror(),
            Circuit::Gen(_) | Circuit::Id(_) | Circuit::Sym => self.clone(),
            Circuit::Seq(a, b) => a.desugar_scalars().then(b.desugar_scalars()),
            Circuit::Tensor(a, b) => a.desugar_scalars().beside(b.desugar_scalars()),
        }
    }

    /// Number of generator and symmetry nodes.
    pub fn size(&self) -> usize {
        match self {
            Circuit::Gen(_) | Circuit::Sym => 1,
            Circuit::Id(_) => 0,
            Circuit::Seq(a, b) | Circuit::Tensor(a, b) => a.size() + b.size(),
        }
    }

    pub fn parse(text: &str) -> Result<Circuit, ParseError> {
        let tokens = lex(text)?;
        let mut p = Parser { tokens, pos: 0 };
        let c = p.circuit()?;
        match p.peek() {
            Token { kind: Tok::End, .. } => Ok(c),
            t => Err(t.unexpected("`;`, `*` or end of input")),
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, level: u8) -> fmt::Result {
        match self {
            Circuit::Gen(g) => match g {
                Gen::Add => f.write_str("add"),
                Gen::Zero => f.write_str("zero"),
                Gen::Dup => f.write_str("dup"),
                Gen::Del => f.write_str("del"),
                Gen::Amp(k) => write!(f, "amp({k})"),
                Gen::CoAdd => f.write_str("coadd"),
                Gen::CoZero => f.write_str("cozero"),
                Gen::CoDup => f.write_str("codup"),
                Gen::CoDel => f.write_str("codel"),
                Gen::CoAmp(k) => write!(f, "coamp({k})"),
            },
            Circuit::Id(1) => f.write_str("id"),
            Circuit::Id(n) => write!(f, "id({n})"),
            Circuit::Sym => f.write_str("sym"),
            Circuit::Seq(a, b) => {
                if level > 0 {
                    f.write_str("(")?;
                }
                a.fmt_at(f, 0)?;
                f.write_str(" ; ")?;
                b.fmt_at(f, 1)?;
                if level > 0 {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Circuit::Tensor(a, b) => {
                if level > 1 {
                    f.write_str("(")?;
                }
                a.fmt_at(f, 1)?;
                f.write_str(" * ")?;
                b.fmt_at(f, 2)?;
                if level > 1 {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

impl std::str::FromStr for Circuit {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Circuit::parse(s)
    }
}

// ---------------------------------------------------------------------------
// lexer / parser

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(String),
    LParen,
    RParen,
    Semi,
    Star,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    kind: Tok,
    line: usize,
    col: usize,
}

impl Token {
    fn describe(&self) -> String {
        match &self.kind {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(s) => format!("integer {s}"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Star => "`*`".into(),
            Tok::End => "end of input".into(),
        }
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        ParseError::Unexpected {
            line: self.line,
            col: self.col,
            found: self.describe(),
            expected,
        }
    }
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (lno, col) = (li + 1, i + 1);
            let single = |kind| Token {
                kind,
                line: lno,
                col,
            };
            match c {
                '#' => break,
                c if c.is_whitespace() => i += 1,
                '(' => {
                    out.push(single(Tok::LParen));
                    i += 1;
                }
                ')' => {
                    out.push(single(Tok::RParen));
                    i += 1;
                }
                ';' => {
                    out.push(single(Tok::Semi));
                    i += 1;
                }
                '*' => {
                    out.push(single(Tok::Star));
                    i += 1;
                }
                '-' | '+' | '0'..='9' => {
                    let start = i;
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let lit: String = chars[start..i].iter().collect();
                    if lit == "-" || lit == "+" {
                        return Err(ParseError::Unexpected {
                            line: lno,
                            col,
                            found: format!("`{lit}`"),
                            expected: "a digit after the sign",
                        });
                    }
                    out.push(single(Tok::Int(lit)));
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let start = i;
                    while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    out.push(single(Tok::Ident(chars[start..i].iter().collect())));
                }
                other => {
                    return Err(ParseError::Unexpected {
                        line: lno,
                        col,
                        found: format!("character {other:?}"),
                        expected: "a circuit",
                    })
                }
            }
        }
    }
    let (line, col) = text
        .lines()
        .enumerate()
        .last()
        .map(|(i, l)| (i + 1, l.chars().count() + 1))
        .unwrap_or((1, 1));
    out.push(Token {
        kind: Tok::End,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.kind != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, kind: Tok, expected: &'static str) -> Result<(), ParseError> {
        let t = self.next();
        if t.kind == kind {
            Ok(())
        } else {
            Err(t.unexpected(expected))
        }
    }

    fn circuit(&mut self) -> Result<Circuit, ParseError> {
        let mut c = self.term()?;
        while self.peek().kind == Tok::Semi {
            self.next();
            c = c.then(self.term()?);
        }
        Ok(c)
    }

    fn term(&mut self) -> Result<Circuit, ParseError> {
        let mut c = self.factor()?;
        while self.peek().kind == Tok::Star {
            self.next();
            c = c.beside(self.factor()?);
        }
        Ok(c)
    }

    fn factor(&mut self) -> Result<Circuit, ParseError> {
        let t = self.next();
        match t.kind {
            Tok::LParen => {
                let c = self.circuit()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(c)
            }
            Tok::Ident(ref name) => self.atom(name, &t),
            _ => Err(t.unexpected("a generator or `(`")),
        }
    }

    fn int_arg(&mut self) -> Result<Int, ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        let t = self.next();
        let Tok::Int(ref lit) = t.kind else {
            return Err(t.unexpected("an integer"));
        };
        let k = parse_int(lit).map_err(|_| t.unexpected("an integer"))?;
        self.expect(Tok::RParen, "`)`")?;
        Ok(k)
    }

    fn atom(&mut self, name: &str, at: &Token) -> Result<Circuit, ParseError> {
        Ok(match name {
            "id" => {
                if self.peek().kind != Tok::LParen {
                    return Ok(Circuit::Id(1));
                }
                let k = self.int_arg()?;
                if k.is_negative() {
                    return Err(at.unexpected("a natural number width for `id`"));
                }
                let n = usize::try_from(k).map_err(|_| at.unexpected("a small width for `id`"))?;
                Circuit::Id(n)
            }
            "sym" => Circuit::Sym,
            "add" => Circuit::add(),
            "zero" => Circuit::zero(),
            "dup" => Circuit::dup(),
            "del" => Circuit::del(),
            "coadd" => Circuit::coadd(),
            "cozero" => Circuit::cozero(),
            "codup" => Circuit::codup(),
            "codel" => Circuit::codel(),
            "neg" => Circuit::neg(),
            "amp" => Circuit::Gen(Gen::Amp(self.int_arg()?)),
            "coamp" => Circuit::Gen(Gen::CoAmp(self.int_arg()?)),
            _ => {
                return Err(ParseError::UnknownAtom {
                    line: at.line,
                    col: at.col,
                    name: name.to_string(),
                })
            }
        })
    }
}

// ---------------------------------------------------------------------------
// matrix form

/// `1 → k` copy tree, left-associated.
pub fn fanout(k: usize) -> Circuit {
    match k {
        0 => Circuit::del(),
        1 => Circuit::Id(1),
        2 => Circuit::dup(),
        _ => fanout(k - 1).then(layer_of(vec![Circuit::dup(), Circuit::Id(k - 2)])),
    }
}

/// `k → 1` addition tree, left-associated.
pub fn add_tree(k: usize) -> Circuit {
    match k {
        0 => Circuit::zero(),
        1 => Circuit::Id(1),
        2 => Circuit::add(),
        _ => layer_of(vec![Circuit::add(), Circuit::Id(k - 2)]).then(add_tree(k - 1)),
    }
}

fn desugar_amp(k: &Int) -> Circuit {
    if k.is_zero() {
        Circuit::del().then(Circuit::zero())
    } else if k.is_one() {
        Circuit::Id(1)
    } else if *k == -Int::one() {
        Circuit::neg()
    } else if k.is_negative() {
        Circuit::neg().then(desugar_amp(&-k))
    } else {
        let n = usize::try_from(k).expect("scalar too large to unfold");
        fanout(n).then(add_tree(n))
    }
}

/// Merges adjacent identities and drops empty ones.
fn normalize_blocks(blocks: Vec<Circuit>) -> Vec<Circuit> {
    let mut out: Vec<Circuit> = Vec::with_capacity(blocks.len());
    for b in blocks {
        match (out.last_mut(), b) {
            (_, Circuit::Id(0)) => {}
            (Some(Circuit::Id(n)), Circuit::Id(m)) => *n += m,
            (_, b) => out.push(b),
        }
    }
    out
}

fn layer_of(blocks: Vec<Circuit>) -> Circuit {
    Circuit::tensor_all(normalize_blocks(blocks))
}

/// `None` when the blocks amount to an identity.
fn nontrivial_layer(blocks: Vec<Circuit>) -> Option<Circuit> {
    let blocks = normalize_blocks(blocks);
    if blocks.iter().all(|b| matches!(b, Circuit::Id(_))) {
        None
    } else {
        Some(Circuit::tensor_all(blocks))
    }
}

fn permutation_layers(perm: &[usize]) -> Vec<Circuit> {
    let width = perm.len();
    let mut current = perm.to_vec();
    let mut layers = Vec::new();
    loop {
        let mut swapped = false;
        for p in 0..width.saturating_sub(1) {
            if current[p] > current[p + 1] {
                current.swap(p, p + 1);
                layers.push(layer_of(vec![
                    Circuit::Id(p),
                    Circuit::Sym,
                    Circuit::Id(width - p - 2),
                ]));
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    layers
}

/// The circuit in matrix form for `a: m×n` (an arrow `n → m`): copy each
/// input as many times as its column has nonzero entries, scale each copy,
/// route copies to their rows, and add them up.
pub fn matrix_to_circuit(a: &MatZ) -> Circuit {
    let (m, n) = a.shape();
    // wires in column-major order
    let mut wires: Vec<(usize, usize)> = Vec::new();
    let mut fan = Vec::with_capacity(n);
    for j in 0..n {
        let before = wires.len();
        wires.extend((0..m).filter(|&i| !a.get(i, j).is_zero()).map(|i| (i, j)));
        fan.push(fanout(wires.len() - before));
    }
    let scalars = wires
        .iter()
        .map(|&(i, j)| {
            let k = a.get(i, j);
            if k.is_one() {
                Circuit::Id(1)
            } else {
                Circuit::amp(k.clone())
            }
        })
        .collect();
    let mut row_major: Vec<usize> = (0..wires.len()).collect();
    row_major.sort_by_key(|&w| wires[w]);
    let mut target = vec![0; wires.len()];
    for (pos, &w) in row_major.iter().enumerate() {
        target[w] = pos;
    }
    let sums = (0..m)
        .map(|i| add_tree(wires.iter().filter(|w| w.0 == i).count()))
        .collect();

    let mut layers = Vec::new();
    layers.extend(nontrivial_layer(fan));
    layers.extend(nontrivial_layer(scalars));
    layers.extend(permutation_layers(&target));
    layers.extend(nontrivial_layer(sums));
    Circuit::seq_all(layers).unwrap_or(Circuit::Id(n))
}
