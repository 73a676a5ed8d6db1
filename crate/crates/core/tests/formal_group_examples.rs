mod common;

use common::*;
use fgl_core::formal_group::*;
use fgl_core::hopf::HopfElement;
use fgl_core::Error;

fn h(alg: &std::sync::Arc<fgl_core::hopf::HopfAlgebra>, src: &str) -> HopfElement {
    HopfElement::from_tensor(el(alg, 1, src)).unwrap()
}

#[test]
fn axioms_of_simple_laws() {
    let triv = algebra("trivial", 8);
    let r = check_axioms(&law(&triv, 6, "X + Y")).unwrap();
    assert!(r.passed());
    assert_eq!(r.certified_through, 6);
    assert!(check_axioms(&law(&triv, 6, "X + Y + X·Y")).unwrap().passed());

    let q = qt(1, 8);
    assert!(check_axioms(&law(&q, 6, "2t⊗t + X + Y")).unwrap().passed());
}

#[test]
fn non_cocycle_constant_breaks_associativity() {
    let q = qt(1, 8);
    let r = check_axioms(&law(&q, 4, "t⊗t^2 + X + Y")).unwrap();
    assert!(!r.passed());
    let d = r.defect(Axiom::Associativity).expect("associativity defect");
    assert_eq!(d.to_string(), "2(t⊗t⊗t)");

    let sym = law(&q, 4, "t^2⊗t - t⊗t^2 + X + Y");
    let r = check_axioms(&sym).unwrap();
    assert_eq!(r.defect(Axiom::Associativity).unwrap().to_string(), "-4(t⊗t⊗t)");
}

#[test]
fn unit_and_symmetry_failures() {
    let q = qt(1, 8);
    let r = check_axioms(&law(&q, 4, "X + Y + (t⊗1)X·Y")).unwrap();
    assert!(r.defect(Axiom::Symmetry).is_some());
    let r = check_axioms(&law(&q, 4, "X + 2Y")).unwrap();
    assert!(r.defect(Axiom::UnitLeft).is_some() || r.defect(Axiom::UnitRight).is_some());
}

#[test]
fn invariant_differentials() {
    let triv = algebra("trivial", 8);
    let w = invariant_differential(&law(&triv, 6, "X + Y + X·Y")).unwrap();
    assert_eq!(w.to_string(), "1 + x");

    let q = qt(1, 8);
    let w = invariant_differential(&law(&q, 6, "2t⊗t + X + Y")).unwrap();
    assert_eq!(w.to_string(), "1");

    let f = law(&q, 2, "X + Y - (1⊗t)X^2 - 2(t⊗1 + 1⊗t)X·Y - (t⊗1)Y^2");
    let w = invariant_differential(&f).unwrap();
    assert_eq!(w.with_order(1).to_string(), "1 - 2t·x");
}

#[test]
fn logarithms() {
    let triv = algebra("trivial", 8);
    assert_eq!(logarithm(&law(&triv, 6, "X + Y")).unwrap().to_string(), "x");
    let g = logarithm(&law(&triv, 6, "X + Y + X·Y")).unwrap();
    assert_eq!(g.to_string(), "x - 1/2·x^2 + 1/3·x^3 - 1/4·x^4 + 1/5·x^5 - 1/6·x^6");
    let q = qt(1, 8);
    assert_eq!(logarithm(&law(&q, 6, "2t⊗t + X + Y")).unwrap().to_string(), "x");
}

#[test]
fn cocycle_extraction() {
    let triv = algebra("trivial", 8);
    let f = law(&triv, 6, "X + Y + X·Y");
    let g = logarithm(&f).unwrap();
    assert!(extract_cocycle(&f, &g).unwrap().is_zero());

    let q = qt(1, 8);
    let f = law(&q, 6, "2t⊗t + X + Y");
    let c = extract_cocycle(&f, &ser(&q, 1, 1, 6, "x")).unwrap();
    assert_eq!(c, el(&q, 2, "2t⊗t"));

    let g = ser(&q, 1, 1, 6, "x + t·x^2");
    let zero = el(&q, 2, "0");
    let f = reconstruct(&g, &zero, 6).unwrap();
    assert!(extract_cocycle(&f, &g).unwrap().is_zero());
}

#[test]
fn extraction_rejects_a_non_group() {
    let triv = algebra("trivial", 8);
    let f = law(&triv, 4, "X + Y + X^2·Y");
    let g = logarithm(&f).unwrap();
    assert!(matches!(extract_cocycle(&f, &g), Err(Error::ResidualNonConstant(_))));
}

#[test]
fn cocycle_checks() {
    let q = qt(1, 8);
    assert!(check_cocycle(&el(&q, 2, "0")).unwrap().passed());
    assert!(check_cocycle(&el(&q, 2, "2t⊗t")).unwrap().passed());

    let r = check_cocycle(&el(&q, 2, "t⊗t^2")).unwrap();
    assert!(!r.cobar_holds());
    assert_eq!(r.cobar_defect.to_string(), "2(t⊗t⊗t)");

    let r = check_cocycle(&el(&q, 2, "t⊗1")).unwrap();
    assert!(!r.counit_holds());
    assert_eq!(r.right_counit.to_string(), "t");
}

#[test]
fn additive_groups_from_cocycles() {
    let q = qt(1, 8);
    let f = additive_cocycle_group(&el(&q, 2, "0"), 5).unwrap();
    assert_eq!(f.series().to_string(), "X + Y");
    let f = additive_cocycle_group(&el(&q, 2, "2t⊗t"), 5).unwrap();
    assert!(check_axioms(&f).unwrap().passed());
    assert!(matches!(
        additive_cocycle_group(&el(&q, 2, "t⊗t^2"), 5),
        Err(Error::CocycleViolation(_))
    ));
}

#[test]
fn inverse_series_examples() {
    let triv = algebra("trivial", 8);
    assert_eq!(inverse_series(&law(&triv, 6, "X + Y")).unwrap().to_string(), "-x");
    let theta = inverse_series(&law(&triv, 6, "X + Y + X·Y")).unwrap();
    assert_eq!(theta.to_string(), "-x + x^2 - x^3 + x^4 - x^5 + x^6");

    let q = qt(1, 8);
    let f = law(&q, 6, "2t⊗t + X + Y");
    let theta = inverse_series(&f).unwrap();
    assert_eq!(theta.to_string(), "2t^2 - x");
    assert!(inverse_residual(&f, &theta).unwrap().is_zero());
}

#[test]
fn inverse_of_a_reconstructed_law() {
    let q = qt(1, 8);
    let f = reconstruct(&ser(&q, 1, 1, 5, "x + t·x^2"), &el(&q, 2, "2t⊗t"), 5).unwrap();
    let theta = inverse_series(&f).unwrap();
    let res = inverse_residual(&f, &theta).unwrap();
    assert!(res.truncated_to(f.order() as i64).is_zero(), "residual {res}");
}

#[test]
fn reconstruction_examples() {
    let q = qt(1, 8);
    let x = ser(&q, 1, 1, 6, "x");
    let f = reconstruct(&x, &el(&q, 2, "0"), 6).unwrap();
    assert_eq!(f.truncated().to_string(), "X + Y");
    let f = reconstruct(&x, &el(&q, 2, "2t⊗t"), 6).unwrap();
    assert_eq!(f.truncated().to_string(), "2(t⊗t) + X + Y");

    let g = ser(&q, 1, 1, 2, "x + t·x^2");
    let f = reconstruct(&g, &el(&q, 2, "0"), 2).unwrap();
    assert_eq!(f.order(), 2);
    let expected = ser(&q, 2, 2, 2, "X + Y - (1⊗t)X^2 - 2(t⊗1 + 1⊗t)X·Y - (t⊗1)Y^2");
    assert_agree(&f.truncated(), &expected, 2);
}

#[test]
fn reconstruction_rejects_bad_cocycles() {
    let q = qt(1, 8);
    let x = ser(&q, 1, 1, 4, "x");
    assert!(matches!(
        reconstruct(&x, &el(&q, 2, "t⊗t^2"), 4),
        Err(Error::CocycleViolation(_))
    ));
}

#[test]
fn log_equation_examples() {
    let triv = algebra("trivial", 8);
    let f = law(&triv, 6, "X + Y + X·Y");
    let g = logarithm(&f).unwrap();
    assert!(verify_log_equation(&f, &g, &el(&triv, 2, "0")).unwrap().holds());

    let q = qt(1, 8);
    let f = law(&q, 6, "2t⊗t + X + Y");
    let x = ser(&q, 1, 1, 6, "x");
    assert!(verify_log_equation(&f, &x, &el(&q, 2, "2t⊗t")).unwrap().holds());
    let a = verify_log_equation(&f, &x, &el(&q, 2, "0")).unwrap();
    assert!(!a.holds());
    assert_eq!(a.defect.to_string(), "2(t⊗t)");
    assert!(verify_differential_identity(&f).unwrap().holds());
}

#[test]
fn classical_specializations() {
    let triv = algebra("trivial", 8);
    let f = law(&triv, 6, "X + Y + X·Y");
    let g = logarithm(&f).unwrap();
    let s = specialize_classical(&f, &g).unwrap();
    assert!(s.holds());
    assert_eq!(s.law.to_string(), "X + Y + X·Y");
    assert_eq!(s.logarithm.to_string(), g.to_string());

    let q = qt(1, 8);
    let f = law(&q, 6, "2t⊗t + X + Y");
    let s = specialize_classical(&f, &ser(&q, 1, 1, 6, "x")).unwrap();
    assert!(s.holds());
    assert_eq!((s.law.to_string(), s.logarithm.to_string()), ("X + Y".into(), "x".into()));

    let g = ser(&q, 1, 1, 2, "x + t·x^2");
    let f = reconstruct(&g, &el(&q, 2, "0"), 2).unwrap();
    let s = specialize_classical(&f, &g).unwrap();
    assert!(s.holds());
    assert_eq!(s.law.with_order(2).to_string(), "X + Y");
    assert_eq!(s.logarithm.to_string(), "x");
}

#[test]
fn coboundaries() {
    let q = qt(1, 8);
    assert!(coboundary(&h(&q, "t")).unwrap().is_zero());
    assert_eq!(coboundary(&h(&q, "t^2")).unwrap().to_string(), "2(t⊗t)");
    assert_eq!(coboundary(&h(&q, "t^3")).unwrap().to_string(), "3t^2⊗t + 3t⊗t^2");
    assert_eq!(coboundary(&h(&q, "1 + t")), Err(Error::NotAugmented));
}
