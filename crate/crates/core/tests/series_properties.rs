mod common;

use common::random::{rng, series, Constant};
use common::*;
use fgl_core::hopf::TensorElement;
use fgl_core::series::Series;
use proptest::prelude::*;

fn agree(a: &Series, b: &Series, min: i64) -> Result<(), TestCaseError> {
    let agr = a.compare(b).unwrap();
    prop_assert!(agr.through >= min, "only exact through {}", agr.through);
    prop_assert!(agr.holds(), "defect {} (through {})", agr.defect, agr.through);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn ring_laws(deg in 1u32..=2, arity in 1usize..=2, vars in 1usize..=3, seed: u64) {
        let alg = qt(deg, 5);
        let mut r = rng(seed);
        let mut s = || series(&mut r, &alg, arity, vars, 4, Constant::Nilpotent, false);
        let (a, b, c) = (s(), s(), s());
        agree(&a.mul(&b).unwrap(), &b.mul(&a).unwrap(), 4)?;
        agree(&a.mul(&b).unwrap().mul(&c).unwrap(), &a.mul(&b.mul(&c).unwrap()).unwrap(), 4)?;
        agree(
            &a.add(&b).unwrap().mul(&c).unwrap(),
            &a.mul(&c).unwrap().add(&b.mul(&c).unwrap()).unwrap(),
            4,
        )?;
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn substitution_is_associative(arity in 1usize..=2, nilpotent in any::<bool>(), seed: u64) {
        // deg t = 2 keeps at most two nonzero powers of a nilpotent constant,
        // so each substitution costs at most two exact orders.
        let alg = qt(if nilpotent { 2 } else { 1 }, 5);
        let mut r = rng(seed);
        let k = if nilpotent { Constant::Nilpotent } else { Constant::Zero };
        let f = series(&mut r, &alg, arity, 1, 5, Constant::One, false);
        let g = series(&mut r, &alg, arity, 1, 5, k, false);
        let h = series(&mut r, &alg, arity, 2, 5, k, false);
        let left = f.substitute(&[g.clone()]).unwrap().substitute(&[h.clone()]).unwrap();
        let right = f.substitute(&[g.substitute(&[h]).unwrap()]).unwrap();
        agree(&left, &right, if nilpotent { 1 } else { 5 })?;
    }

    #[test]
    fn substituting_variables_is_identity(vars in 1usize..=3, seed: u64) {
        let alg = qt(1, 6);
        let f = series(&mut rng(seed), &alg, 2, vars, 5, Constant::One, false);
        let xs: Vec<Series> =
            (0..vars).map(|v| Series::variable(&alg, 2, vars, 5, v).unwrap()).collect();
        prop_assert_eq!(f.substitute(&xs).unwrap(), f);
    }

    #[test]
    fn leibniz(vars in 1usize..=3, var in 0usize..3, seed: u64) {
        let alg = qt(1, 6);
        let mut r = rng(seed);
        let var = var % vars;
        let f = series(&mut r, &alg, 2, vars, 6, Constant::One, false);
        let g = series(&mut r, &alg, 2, vars, 6, Constant::Nilpotent, false);
        let lhs = f.mul(&g).unwrap().derivative(var).unwrap();
        let rhs = f
            .derivative(var).unwrap().mul(&g).unwrap()
            .add(&f.mul(&g.derivative(var).unwrap()).unwrap())
            .unwrap();
        let agr = lhs.compare(&rhs).unwrap();
        prop_assert!(agr.through >= 5);
        prop_assert!(agr.holds());
    }

    #[test]
    fn derivative_undoes_integral(vars in 1usize..=3, var in 0usize..3, seed: u64) {
        let alg = qt(2, 6);
        let var = var % vars;
        let f = series(&mut rng(seed), &alg, 1, vars, 6, Constant::One, false);
        let i = f.integrate(var).unwrap();
        prop_assert!(i.constant_term().is_zero());
        let back = i.derivative(var).unwrap();
        let agr = back.compare(&f).unwrap();
        prop_assert!(agr.through >= 5);
        prop_assert!(agr.holds());
    }

    #[test]
    fn multiplicative_inverse(deg in 1u32..=2, arity in 1usize..=3, vars in 1usize..=2, seed: u64) {
        let alg = qt(deg, 4);
        let f = series(&mut rng(seed), &alg, arity, vars, 5, Constant::One, false);
        let inv = f.mul_inverse().unwrap();
        let unit = TensorElement::unit(&alg, arity, rat(1, 1)).unwrap();
        let one = Series::constant(&unit, vars, 5).unwrap();
        agree(&f.mul(&inv).unwrap(), &one, 5)?;
    }

    #[test]
    fn compositional_inverse(deg in 1u32..=2, arity in 1usize..=2, seed: u64) {
        let alg = qt(deg, 5);
        let f = series(&mut rng(seed), &alg, arity, 1, 6, Constant::Zero, true);
        let h = f.comp_inverse().unwrap();
        let x = Series::variable(&alg, arity, 1, 6, 0).unwrap();
        agree(&f.substitute(&[h.clone()]).unwrap(), &x, 6)?;
        agree(&h.substitute(&[f]).unwrap(), &x, 6)?;
    }
}
