use ihz::linrel::{inverse, kernel, phi, psi, rel_to_cospan, rel_to_span, solve, LinRel, Subspace};
use ihz::sample::Sampler;
use ihz::span::{pushout, span_iso};
use ihz::{MatQ, Matrix, Rat};

#[test]
fn canonical_subspaces() {
    let mut s = Sampler::new(51);
    for _ in 0..500 {
        let amb = s.dim(0, 5);
        let rows = s.dim(0, 5);
        let g = s.rat_matrix(rows, amb, 4);
        let v = Subspace::row_space(&g);
        assert_eq!(
            Subspace::from_generators(&v.basis().row_vecs(), amb).unwrap(),
            v
        );
        let rows2 = s.dim(0, 5);
        let w = Subspace::row_space(&s.rat_matrix(rows2, amb, 1));
        let contained = |a: &Subspace, b: &Subspace| {
            // every basis row of a solves b's generator system
            a.basis()
                .row_vecs()
                .iter()
                .all(|x| solve(&b.basis().transpose(), x).is_some())
        };
        let double = contained(&v, &w) && contained(&w, &v);
        assert_eq!(v == w, double);
        assert_eq!(v.is_subspace_of(&w), contained(&v, &w));
        assert_eq!(Subspace::parse(&v.to_text()).unwrap(), v);
    }
}

#[test]
fn relation_round_trips() {
    let mut s = Sampler::new(52);
    for _ in 0..300 {
        let (n, m) = (s.dim(0, 3), s.dim(0, 3));
        let r = s.relation(n, m, 4);
        let sp = rel_to_span(&r);
        assert_eq!(sp.apex(), r.space().dim());
        assert_eq!(phi(&sp), r);
        assert_eq!(psi(&rel_to_cospan(&r)), r);
    }
}

#[test]
fn converse_reverses_composition() {
    let mut s = Sampler::new(53);
    for _ in 0..200 {
        let (n, k, m) = (s.dim(0, 3), s.dim(0, 3), s.dim(0, 3));
        let v = s.relation(n, k, 3);
        let w = s.relation(k, m, 3);
        let lhs = v.compose(&w).unwrap().converse();
        let rhs = w.converse().compose(&v.converse()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(v.converse().converse(), v);
    }
}

#[test]
fn composition_is_a_category() {
    let mut s = Sampler::new(54);
    for _ in 0..150 {
        let d: Vec<usize> = (0..4).map(|_| s.dim(0, 3)).collect();
        let a = s.relation(d[0], d[1], 3);
        let b = s.relation(d[1], d[2], 3);
        let c = s.relation(d[2], d[3], 3);
        let l = a.compose(&b).unwrap().compose(&c).unwrap();
        let r = a.compose(&b.compose(&c).unwrap()).unwrap();
        assert_eq!(l, r);
        assert_eq!(LinRel::identity(d[0]).compose(&a).unwrap(), a);
        assert_eq!(a.compose(&LinRel::identity(d[1])).unwrap(), a);
    }
}

#[test]
fn isomorphic_spans_denote_the_same_relation() {
    let mut s = Sampler::new(55);
    for _ in 0..200 {
        let (n, m, z) = (s.dim(0, 3), s.dim(0, 3), s.dim(0, 4));
        let a = s.span(n, m, z, 4);
        let b = a.reindex(&s.unimodular(z, 10)).unwrap();
        assert!(span_iso(&a, &b));
        assert_eq!(phi(&a), phi(&b));
    }
}

/// For ℚ-maps `f`, `g` out of a common source and their pushout legs
/// `p`, `q`, every `(v, w)` with `p·v = q·w` is `(f·u, g·u)` for some `u`.
#[test]
fn rational_pushouts_are_jointly_solvable() {
    let mut s = Sampler::new(56);
    for _ in 0..150 {
        let (n, m, z) = (s.dim(0, 3), s.dim(0, 3), s.dim(0, 3));
        let f = s.matrix(n, z, 4);
        let g = s.matrix(m, z, 4);
        let (p, q) = pushout(&f, &g).unwrap();
        let joint = p.hstack(&q.neg()).unwrap().embed();
        let stacked: MatQ = f.vstack(&g).unwrap().embed();
        for vw in kernel(&joint).basis().row_vecs() {
            let scale = Rat::new(s.int(-5, 5).into(), s.int(1, 5).into());
            let vw: Vec<Rat> = vw.iter().map(|x| x * &scale).collect();
            assert!(solve(&stacked, &vw).is_some());
        }
    }
}

#[test]
fn inverse_semantics_of_unimodular_matrices() {
    let mut s = Sampler::new(57);
    for _ in 0..100 {
        let n = s.dim(0, 5);
        let u = s.unimodular(n, 10).embed();
        let inv = inverse(&u).unwrap().unwrap();
        assert_eq!(u.mul(&inv).unwrap(), Matrix::identity(n));
        assert_eq!(LinRel::graph(&u).converse(), LinRel::graph(&inv));
    }
}

#[test]
fn tensor_is_functorial() {
    let mut s = Sampler::new(58);
    for _ in 0..100 {
        let d: Vec<usize> = (0..6).map(|_| s.dim(0, 2)).collect();
        let (a, b) = (s.relation(d[0], d[1], 3), s.relation(d[1], d[2], 3));
        let (c, e) = (s.relation(d[3], d[4], 3), s.relation(d[4], d[5], 3));
        let lhs = a.tensor(&c).compose(&b.tensor(&e)).unwrap();
        let rhs = a.compose(&b).unwrap().tensor(&c.compose(&e).unwrap());
        assert_eq!(lhs, rhs);
    }
}
