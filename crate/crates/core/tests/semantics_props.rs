use proptest::prelude::*;

use ihz::circuit::{Circuit, Interface};
use ihz::linrel::{phi, psi};
use ihz::sample::Sampler;
use ihz::semantics::{
    classify, compare, cospan_form, equal_ih, frac, frac_add, frac_mul, normal_form, sem_cospan,
    sem_rel, sem_span, tra_span_to_cospan, Verdict,
};
use ihz::span::cospan_iso;
use ihz::Rat;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn rear_faces_commute(seed in any::<u64>()) {
        let c = Sampler::new(seed).circuit(6, 5);
        let r = sem_rel(&c).unwrap();
        prop_assert_eq!(phi(&sem_span(&c).unwrap()), r.clone());
        prop_assert_eq!(psi(&sem_cospan(&c).unwrap()), r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn cospans_are_transposed_negative_spans(seed in any::<u64>()) {
        let c = Sampler::new(seed).circuit(6, 5);
        let t = tra_span_to_cospan(&sem_span(&c.pn()).unwrap());
        prop_assert!(cospan_iso(&sem_cospan(&c).unwrap(), &t));
    }

    #[test]
    fn normal_forms_are_sound_and_idempotent(seed in any::<u64>()) {
        let c = Sampler::new(seed).circuit(5, 5);
        let n = normal_form(&c).unwrap();
        prop_assert_eq!(sem_rel(&n).unwrap(), sem_rel(&c).unwrap());
        prop_assert_eq!(normal_form(&n).unwrap(), n);
        let k = cospan_form(&c).unwrap();
        prop_assert!(equal_ih(&k, &c));
    }

    #[test]
    fn mutated_circuits_share_a_normal_form(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let c = s.circuit(5, 4);
        let m = s.mutate(&c);
        prop_assert!(equal_ih(&c, &m));
        prop_assert_eq!(normal_form(&c).unwrap(), normal_form(&m).unwrap());
    }

    #[test]
    fn normal_forms_decide_equality(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let iface = Interface::new(s.dim(0, 2), s.dim(0, 2));
        let (a, b) = (s.circuit_with(iface, 2, 2), s.circuit_with(iface, 2, 2));
        let same = sem_rel(&a).unwrap() == sem_rel(&b).unwrap();
        prop_assert_eq!(same, equal_ih(&a, &b));
        prop_assert_eq!(same, normal_form(&a).unwrap() == normal_form(&b).unwrap());
    }

    #[test]
    fn fractions_multiply_and_add(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let ((p, q), (r, t)) = (s.fraction(20), s.fraction(20));
        let x = Rat::new(p.into(), q.into());
        let y = Rat::new(r.into(), t.into());
        let mul = frac_mul(frac(p, q), frac(r, t));
        prop_assert_eq!(sem_rel(&mul).unwrap(), sem_rel(&frac(p * r, q * t)).unwrap());
        prop_assert_eq!(classify(&mul).unwrap().value(), Some(&x * &y));
        let add = frac_add(frac(p, q), frac(r, t));
        prop_assert_eq!(sem_rel(&add).unwrap(), sem_rel(&frac(p * t + r * q, q * t)).unwrap());
        prop_assert_eq!(classify(&add).unwrap().value(), Some(x + y));
    }
}

#[test]
fn comparison_reports_reasons() {
    let p = |s: &str| Circuit::parse(s).unwrap();
    assert_eq!(
        compare(&p("add ; dup"), &p("dup * dup ; id * sym * id ; add * add")),
        Verdict::Equal
    );
    assert_eq!(compare(&p("amp(2)"), &p("amp(3)")), Verdict::Unequal);
    assert!(matches!(
        compare(&p("add"), &p("dup")),
        Verdict::InterfaceMismatch(..)
    ));
    assert!(matches!(
        compare(&p("id"), &p("dup ; dup")),
        Verdict::IllTyped(_)
    ));
}
