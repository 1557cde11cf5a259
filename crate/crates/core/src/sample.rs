//! Seeded random generators for matrices, spans, relations and circuits.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{add_tree, fanout, Circuit, Interface};
use crate::linrel::{LinRel, Subspace};
use crate::matrix::{MatQ, MatZ, Matrix};
use crate::num::{Int, Rat};
use crate::span::{CospanZ, SpanZ};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn nonzero(&mut self, bound: i64) -> i64 {
        loop {
            let k = self.int(-bound, bound);
            if k != 0 {
                return k;
            }
        }
    }

    pub fn dim(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    /// Entries uniform in `[-bound, bound]`.
    pub fn matrix(&mut self, rows: usize, cols: usize, bound: i64) -> MatZ {
        Matrix::from_fn(rows, cols, |_, _| Int::from(self.int(-bound, bound)))
    }

    /// Like [`Sampler::matrix`], but with roughly a `zeros` fraction of
    /// entries set to zero, which makes rank deficiency common.
    pub fn sparse_matrix(&mut self, rows: usize, cols: usize, bound: i64, zeros: f64) -> MatZ {
        Matrix::from_fn(rows, cols, |_, _| {
            if self.rng.gen_bool(zeros) {
                Int::from(0)
            } else {
                Int::from(self.int(-bound, bound))
            }
        })
    }

    pub fn rat_matrix(&mut self, rows: usize, cols: usize, bound: i64) -> MatQ {
        Matrix::from_fn(rows, cols, |_, _| {
            Rat::new(
                self.int(-bound, bound).into(),
                self.int(1, bound.max(1)).into(),
            )
        })
    }

    /// Product of at most `steps` elementary matrices: swaps, negations and
    /// shears by small multiples.
    pub fn unimodular(&mut self, n: usize, steps: usize) -> MatZ {
        let mut u = MatZ::identity(n);
        if n == 0 {
            return u;
        }
        let count = self.rng.gen_range(0..=steps);
        for _ in 0..count {
            let i = self.rng.gen_range(0..n);
            let j = self.rng.gen_range(0..n);
            let e = match self.rng.gen_range(0..3) {
                0 => {
                    let mut perm: Vec<usize> = (0..n).collect();
                    perm.swap(i, j);
                    MatZ::permutation(&perm)
                }
                1 => {
                    let mut e = MatZ::identity(n);
                    e.set(i, i, Int::from(-1));
                    e
                }
                _ => {
                    let mut e = MatZ::identity(n);
                    if i != j {
                        e.set(i, j, Int::from(self.nonzero(3)));
                    }
                    e
                }
            };
            u = u.mul(&e).expect("square");
        }
        u
    }

    pub fn span(&mut self, n: usize, m: usize, apex: usize, bound: i64) -> SpanZ {
        SpanZ::new(self.matrix(n, apex, bound), self.matrix(m, apex, bound)).expect("legs agree")
    }

    pub fn cospan(&mut self, n: usize, m: usize, apex: usize, bound: i64) -> CospanZ {
        CospanZ::new(self.matrix(apex, n, bound), self.matrix(apex, m, bound)).expect("legs agree")
    }

    pub fn relation(&mut self, n: usize, m: usize, bound: i64) -> LinRel {
        let k = self.dim(0, n + m + 1);
        let g = self.sparse_matrix(k, n + m, bound, 0.3).embed();
        LinRel::new(n, m, Subspace::row_space(&g)).expect("ambient agrees")
    }

    /// A nonzero denominator and numerator, both within `bound`.
    pub fn fraction(&mut self, bound: i64) -> (i64, i64) {
        (self.int(-bound, bound), self.nonzero(bound))
    }

    fn atom(&mut self, max_arity: usize, kmax: i64) -> Circuit {
        let mut pool = vec![Circuit::zero(), Circuit::codel(), Circuit::Id(0)];
        if max_arity >= 1 {
            let k = self.int(-kmax, kmax);
            let l = self.int(-kmax, kmax);
            pool.extend([
                Circuit::dup(),
                Circuit::del(),
                Circuit::coadd(),
                Circuit::cozero(),
                Circuit::amp(k),
                Circuit::coamp(l),
                Circuit::Id(1),
            ]);
        }
        if max_arity >= 2 {
            pool.extend([Circuit::add(), Circuit::codup(), Circuit::Sym]);
        }
        pool.choose(&mut self.rng)
            .expect("pool is nonempty")
            .clone()
    }

    /// One layer of atoms side by side consuming exactly `arity` wires.
    fn layer(&mut self, arity: usize, kmax: i64, width: usize) -> Circuit {
        let mut blocks = Vec::new();
        let mut left = arity;
        let mut out = 0usize;
        loop {
            let a = if left == 0 {
                if blocks.is_empty() || (out < width && self.coin(0.2)) {
                    self.atom(0, kmax)
                } else {
                    break;
                }
            } else if out >= width {
                // contract when the layer is getting wide
                [
                    Circuit::del(),
                    Circuit::cozero(),
                    Circuit::add(),
                    Circuit::codup(),
                ]
                .choose(&mut self.rng)
                .expect("nonempty")
                .clone()
            } else {
                self.atom(left, kmax)
            };
            let i = a.typecheck().expect("atoms typecheck");
            if i.arity > left {
                continue;
            }
            left -= i.arity;
            out += i.coarity;
            blocks.push(a);
        }
        Circuit::tensor_all(blocks)
    }

    /// A well-typed circuit with the given arity, of nesting depth at most
    /// `depth`, scalars within `kmax`, and no intermediate boundary wider than
    /// `width` (when the arity itself allows it).
    pub fn circuit_from(&mut self, arity: usize, depth: usize, kmax: i64, width: usize) -> Circuit {
        if depth == 0 || self.coin(0.25) {
            return self.layer(arity, kmax, width);
        }
        if arity >= 2 && self.coin(0.35) {
            let split = self.rng.gen_range(0..=arity);
            let a = self.circuit_from(split, depth - 1, kmax, width / 2 + 1);
            let b = self.circuit_from(arity - split, depth - 1, kmax, width / 2 + 1);
            return a.beside(b);
        }
        let first = self.circuit_from(arity, depth - 1, kmax, width);
        let mid = first
            .typecheck()
            .expect("generated circuits typecheck")
            .coarity;
        let second = self.circuit_from(mid, depth - 1, kmax, width);
        first.then(second)
    }

    /// A random circuit with small random arity.
    pub fn circuit(&mut self, depth: usize, kmax: i64) -> Circuit {
        let arity = self.dim(0, 3);
        self.circuit_from(arity, depth, kmax, 4)
    }

    /// Random `k → 1` merge followed by a `1 → t` split, in either color.
    fn adapter(&mut self, k: usize, t: usize) -> Circuit {
        let merge = match k {
            0 if self.coin(0.5) => Circuit::codel(),
            _ if self.coin(0.5) => add_tree(k),
            _ => fanout(k).mirror(),
        };
        let split = match t {
            0 if self.coin(0.5) => Circuit::cozero(),
            _ if self.coin(0.5) => fanout(t),
            _ => add_tree(t).mirror(),
        };
        merge.then(split)
    }

    /// A random circuit with exactly the given interface.
    pub fn circuit_with(&mut self, iface: Interface, depth: usize, kmax: i64) -> Circuit {
        let c = self.circuit_from(iface.arity, depth, kmax, 4);
        let out = c.typecheck().expect("generated circuits typecheck").coarity;
        if out == iface.coarity && self.coin(0.5) {
            c
        } else {
            c.then(self.adapter(out, iface.coarity))
        }
    }

    /// A circuit denoting the same relation as `c`, obtained by a few
    /// meaning-preserving syntactic edits.
    pub fn mutate(&mut self, c: &Circuit) -> Circuit {
        let mut out = c.clone();
        for _ in 0..self.rng.gen_range(1..=3) {
            out = self.mutate_once(&out);
        }
        out
    }

    fn identity_gadget(&mut self) -> Circuit {
        let l = self.nonzero(5);
        match self.rng.gen_range(0..6) {
            0 => Circuit::amp(l).then(Circuit::coamp(l)),
            1 => Circuit::coamp(l).then(Circuit::amp(l)),
            2 => Circuit::coadd().then(Circuit::add()),
            3 => Circuit::dup().then(Circuit::codup()),
            4 => Circuit::neg().then(Circuit::neg()),
            _ => Circuit::amp(1),
        }
    }

    fn mutate_once(&mut self, c: &Circuit) -> Circuit {
        let i = c.typecheck().expect("mutating a well-typed circuit");
        match self.rng.gen_range(0..6) {
            0 => Circuit::Id(i.arity).then(c.clone()),
            1 => c.clone().then(Circuit::Id(i.coarity)),
            2 => c.clone().beside(Circuit::Id(0)),
            3 if i.coarity > 0 => {
                let at = self.rng.gen_range(0..i.coarity);
                let gadget = Circuit::tensor_all([
                    Circuit::Id(at),
                    self.identity_gadget(),
                    Circuit::Id(i.coarity - at - 1),
                ]);
                c.clone().then(gadget)
            }
            4 => reassociate(c),
            _ => self.rewrite_generator(c),
        }
    }

    /// Replaces one generator occurrence by an equal composite.
    fn rewrite_generator(&mut self, c: &Circuit) -> Circuit {
        let n = count_gens(c);
        if n == 0 {
            return c.clone();
        }
        let target = self.rng.gen_range(0..n);
        let mut seen = 0;
        rewrite_nth(c, target, &mut seen, &mut self.rng)
    }
}

fn count_gens(c: &Circuit) -> usize {
    match c {
        Circuit::Gen(_) | Circuit::Sym => 1,
        Circuit::Id(_) => 0,
        Circuit::Seq(a, b) | Circuit::Tensor(a, b) => count_gens(a) + count_gens(b),
    }
}

fn rewrite_nth(c: &Circuit, target: usize, seen: &mut usize, rng: &mut ChaCha8Rng) -> Circuit {
    use crate::circuit::Gen;
    match c {
        Circuit::Gen(_) | Circuit::Sym => {
            let here = *seen == target;
            *seen += 1;
            if !here {
                return c.clone();
            }
            match c {
                Circuit::Gen(Gen::Add) => Circuit::Sym.then(Circuit::add()),
                Circuit::Gen(Gen::Dup) => Circuit::dup().then(Circuit::Sym),
                Circuit::Gen(Gen::CoAdd) => Circuit::coadd().then(Circuit::Sym),
                Circuit::Gen(Gen::CoDup) => Circuit::Sym.then(Circuit::codup()),
                Circuit::Gen(Gen::Amp(_)) if rng.gen_bool(0.5) => c.desugar_scalars(),
                Circuit::Gen(Gen::Amp(k)) => Circuit::dup()
                    .then(Circuit::amp(k.clone()).beside(Circuit::amp(0)))
                    .then(Circuit::add()),
                Circuit::Gen(Gen::Del) => Circuit::amp(rng.gen_range(1..=4)).then(Circuit::del()),
                Circuit::Gen(Gen::Zero) => Circuit::zero().then(Circuit::amp(rng.gen_range(1..=4))),
                Circuit::Sym => Circuit::Sym.then(Circuit::Sym).then(Circuit::Sym),
                other => other
                    .clone()
                    .then(Circuit::Id(other.typecheck().expect("typed").coarity)),
            }
        }
        Circuit::Id(_) => c.clone(),
        Circuit::Seq(a, b) => {
            let a = rewrite_nth(a, target, seen, rng);
            let b = rewrite_nth(b, target, seen, rng);
            a.then(b)
        }
        Circuit::Tensor(a, b) => {
            let a = rewrite_nth(a, target, seen, rng);
            let b = rewrite_nth(b, target, seen, rng);
            a.beside(b)
        }
    }
}

/// Rotates the outermost binary node if it nests another of the same kind.
fn reassociate(c: &Circuit) -> Circuit {
    match c {
        Circuit::Seq(a, b) => match a.as_ref() {
            Circuit::Seq(x, y) => (**x).clone().then((**y).clone().then((**b).clone())),
            _ => match b.as_ref() {
                Circuit::Seq(x, y) => (**a).clone().then((**x).clone()).then((**y).clone()),
                _ => c.clone(),
            },
        },
        Circuit::Tensor(a, b) => match a.as_ref() {
            Circuit::Tensor(x, y) => (**x).clone().beside((**y).clone().beside((**b).clone())),
            _ => match b.as_ref() {
                Circuit::Tensor(x, y) => (**a).clone().beside((**x).clone()).beside((**y).clone()),
                _ => c.clone(),
            },
        },
        _ => c.clone(),
    }
}
