mod common;

use common::*;
use fgl_core::hopf::SlotMap;
use fgl_core::series::{Precision, Series, SlotOp};
use fgl_core::Error;

#[test]
fn add_and_cancel() {
    let h = algebra("trivial", 8);
    let x = ser(&h, 1, 2, 4, "X");
    let y = ser(&h, 1, 2, 4, "Y");
    assert_eq!(x.add(&y).unwrap().to_string(), "X + Y");
    assert!(x.sub(&x).unwrap().is_zero());

    let q = qt(1, 8);
    let c = ser(&q, 2, 2, 4, "2t⊗t");
    let xy = ser(&q, 2, 2, 4, "X + Y");
    assert_eq!(c.add(&xy).unwrap().to_string(), "2(t⊗t) + X + Y");
}

#[test]
fn add_rejects_shape_mismatch() {
    let h = algebra("trivial", 8);
    let a = ser(&h, 1, 1, 4, "x");
    let b = ser(&h, 1, 1, 5, "x");
    assert!(matches!(a.add(&b), Err(Error::ShapeMismatch(_))));
    let c = ser(&h, 1, 2, 4, "X");
    assert!(matches!(a.mul(&c), Err(Error::ShapeMismatch(_))));
}

#[test]
fn products() {
    let h = algebra("trivial", 8);
    assert_eq!(ser(&h, 1, 2, 4, "X").mul(&ser(&h, 1, 2, 4, "Y")).unwrap().to_string(), "X·Y");

    let n = 7;
    let one_plus = ser(&h, 1, 1, n, "1 + x");
    let geo = ser(&h, 1, 1, n, "1 - x + x^2 - x^3 + x^4 - x^5 + x^6 - x^7");
    let p = one_plus.mul(&geo).unwrap();
    assert_eq!(p.to_string(), "1");

    let q = qt(1, 8);
    let a = ser(&q, 2, 2, 4, "(t⊗1)X");
    let b = ser(&q, 2, 2, 4, "(1⊗t)Y");
    assert_eq!(a.mul(&b).unwrap().to_string(), "(t⊗t)·X·Y");
}

#[test]
fn substitution_examples() {
    let h = algebra("trivial", 8);
    let f = ser(&h, 1, 1, 2, "x + x^2");
    let g = ser(&h, 1, 2, 2, "X + Y");
    let r = f.substitute(&[g]).unwrap();
    assert_eq!(r, ser(&h, 1, 2, 2, "X + Y + X^2 + 2X·Y + Y^2"));
    assert_eq!(r.to_string(), "X + Y + X^2 + 2·X·Y + Y^2");

    let q = qt(1, 8);
    let big = ser(&q, 2, 2, 5, "2t⊗t + X + Y + (t⊗1 + 1⊗t)X·Y");
    let id = ser(&q, 2, 1, 5, "x");
    assert_eq!(id.substitute(&[big.clone()]).unwrap(), big);
}

#[test]
fn substituting_a_nilpotent_constant() {
    // Squaring the constant 2t⊗t needs room for total degree 8.
    let q = qt(2, 8);
    let f = ser(&q, 2, 1, 3, "x + x^2");
    let c = ser(&q, 2, 1, 3, "2t⊗t");
    let r = f.substitute(&[c.clone()]).unwrap();
    assert_eq!(r.to_string(), "2t⊗t + 4t^2⊗t^2");

    // With total degree capped at 6 the square is truncated away.
    let q6 = qt(2, 6);
    let f6 = ser(&q6, 2, 1, 3, "x + x^2");
    let c6 = ser(&q6, 2, 1, 3, "2t⊗t");
    assert_eq!(f6.substitute(&[c6]).unwrap().to_string(), "2(t⊗t)");
}

#[test]
fn substitution_rejects_unit_constant() {
    let q = qt(1, 8);
    let f = ser(&q, 1, 1, 3, "x^2");
    let g = ser(&q, 1, 1, 3, "1 + x");
    assert_eq!(f.substitute(&[g]), Err(Error::NonNilpotentConstantTerm));
}

#[test]
fn derivatives() {
    let h = algebra("trivial", 8);
    let d = ser(&h, 1, 2, 4, "X·Y^2").derivative(1).unwrap();
    assert_eq!(d.to_string(), "2·X·Y");
    let d = ser(&h, 1, 2, 4, "X + Y + X·Y").derivative(1).unwrap();
    assert_eq!(d.to_string(), "1 + X");

    let q = qt(1, 8);
    assert!(ser(&q, 2, 2, 4, "2t⊗t").derivative(1).unwrap().is_zero());

    let truncated = ser(&h, 1, 1, 4, "x").with_precision(Precision::Through(4));
    assert_eq!(truncated.derivative(0).unwrap().exact_order(), 3);
}

#[test]
fn integrals() {
    let h = algebra("trivial", 8);
    assert_eq!(ser(&h, 1, 1, 6, "x^2").integrate(0).unwrap().to_string(), "1/3·x^3");
    assert_eq!(
        ser(&h, 1, 1, 6, "1 - x + x^2").integrate(0).unwrap().to_string(),
        "x - 1/2·x^2 + 1/3·x^3"
    );
    let q = qt(1, 8);
    assert_eq!(ser(&q, 1, 1, 6, "1 - 2t·x").integrate(0).unwrap().to_string(), "x - t·x^2");
}

#[test]
fn multiplicative_inverses() {
    let h = algebra("trivial", 8);
    let inv = ser(&h, 1, 1, 5, "1 + x").mul_inverse().unwrap();
    assert_eq!(inv.to_string(), "1 - x + x^2 - x^3 + x^4 - x^5");
    assert_eq!(inv.exact_order(), 5);
    let one = ser(&h, 1, 1, 5, "1").mul_inverse().unwrap();
    assert_eq!(one.to_string(), "1");
    assert_eq!(one.precision(), Precision::Complete);

    let q = qt(2, 6);
    let inv = ser(&q, 1, 1, 3, "1 + t").mul_inverse().unwrap();
    assert_eq!(inv.to_string(), "1 - t + t^2 - t^3");

    assert_eq!(ser(&h, 1, 1, 3, "2 + x").mul_inverse(), Err(Error::NonInvertibleConstantTerm));
}

#[test]
fn compositional_inverses() {
    let h = algebra("trivial", 8);
    assert_eq!(ser(&h, 1, 1, 6, "x").comp_inverse().unwrap().to_string(), "x");
    let inv = ser(&h, 1, 1, 6, "x + x^2").comp_inverse().unwrap();
    assert_eq!(inv.to_string(), "x - x^2 + 2·x^3 - 5·x^4 + 14·x^5 - 42·x^6");

    let q = qt(1, 8);
    let inv = ser(&q, 1, 1, 4, "x + t·x^2").comp_inverse().unwrap();
    assert_eq!(inv.to_string(), "x - t·x^2 + 2t^2·x^3 - 5t^3·x^4");

    assert_eq!(ser(&h, 1, 1, 3, "1 + x").comp_inverse(), Err(Error::NonZeroConstantTerm));
    assert_eq!(ser(&h, 1, 1, 3, "x^2").comp_inverse(), Err(Error::NonInvertibleConstantTerm));
}

#[test]
fn coefficient_maps() {
    let q = qt(1, 8);
    let g = ser(&q, 1, 1, 4, "x + t·x^2");
    let dg = g.map_slot(0, SlotMap::Coproduct).unwrap();
    assert_eq!(dg.to_string(), "x + (t⊗1 + 1⊗t)·x^2");

    let f = ser(&q, 2, 2, 4, "2t⊗t + X + Y");
    assert_eq!(f.scalar_part().unwrap().to_string(), "X + Y");
    let counit_both = f
        .map_coefficients(&[
            SlotOp::Apply { slot: 1, map: SlotMap::Counit },
            SlotOp::Apply { slot: 0, map: SlotMap::Counit },
        ]);
    assert!(counit_both.is_err(), "arity 0 is not representable");

    let txy = ser(&q, 2, 2, 4, "(t⊗t)X·Y");
    let lifted = txy.map_slot(0, SlotMap::Coproduct).unwrap();
    assert_eq!(lifted.to_string(), "(t⊗1⊗t + 1⊗t⊗t)·X·Y");
    assert!(matches!(
        txy.map_slot(2, SlotMap::Coproduct),
        Err(Error::ArityMismatch { .. })
    ));
}

#[test]
fn display_of_logarithm() {
    let h = algebra("trivial", 8);
    let g = ser(&h, 1, 1, 6, "1 + x").mul_inverse().unwrap().integrate(0).unwrap();
    assert_eq!(g.to_string(), "x - 1/2·x^2 + 1/3·x^3 - 1/4·x^4 + 1/5·x^5 - 1/6·x^6");
}

#[test]
fn embedding_and_permuting_variables() {
    let h = algebra("trivial", 8);
    let f = ser(&h, 1, 2, 4, "X + 2Y^2");
    assert_eq!(f.permute_vars(&[1, 0]).unwrap().to_string(), "Y + 2·X^2");
    assert_eq!(f.embed_vars(3, &[0, 2]).unwrap().to_string(), "X + 2·Z^2");
    assert!(Series::zero(&h, 1, 4, 2).is_err());
}

#[test]
fn truncation_lowers_precision() {
    let h = algebra("trivial", 8);
    let f = ser(&h, 1, 1, 3, "x + x^5");
    assert_eq!(f.precision(), Precision::Through(3));
    let g = ser(&h, 1, 1, 3, "x + x^3");
    assert_eq!(g.precision(), Precision::Complete);
    assert_eq!(g.mul(&g).unwrap().precision(), Precision::Through(3));
    assert_eq!(g.with_order(6).precision(), Precision::Complete);
}
