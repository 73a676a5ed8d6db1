//! Exhaustive check of the Hopf algebra axioms on the truncated basis.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use super::algebra::{HopfAlgebra, Monomial};
use super::tensor::{SlotMap, TensorElement};
use super::terms::Terms;
use crate::rational::Rational;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HopfAxiom {
    /// ε(1) = 1 and ε vanishes in positive degree.
    Connected,
    /// (Δ⊗id)Δ = (id⊗Δ)Δ.
    Coassociativity,
    /// (ε⊗id)Δ = id = (id⊗ε)Δ.
    Counit,
    /// μ(S⊗id)Δ = ηε = μ(id⊗S)Δ.
    Antipode,
    /// μ is commutative.
    Commutativity,
    /// Δ(mm') = Δ(m)Δ(m').
    CoproductMultiplicative,
    /// ε(mm') = ε(m)ε(m').
    CounitMultiplicative,
}

impl HopfAxiom {
    pub fn name(&self) -> &'static str {
        match self {
            HopfAxiom::Connected => "connected",
            HopfAxiom::Coassociativity => "coassociativity",
            HopfAxiom::Counit => "counit",
            HopfAxiom::Antipode => "antipode",
            HopfAxiom::Commutativity => "commutativity",
            HopfAxiom::CoproductMultiplicative => "coproduct-multiplicative",
            HopfAxiom::CounitMultiplicative => "counit-multiplicative",
        }
    }
}

impl fmt::Display for HopfAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// First failing axiom, with the monomial(s) it failed on and the defect
/// `lhs - rhs`.
#[derive(Clone, PartialEq, Debug)]
pub struct HopfFailure {
    pub axiom: HopfAxiom,
    pub monomial: Monomial,
    pub other: Option<Monomial>,
    pub defect: TensorElement,
}

#[derive(Clone, PartialEq, Debug)]
pub struct HopfReport {
    pub checked_monomials: usize,
    pub failure: Option<HopfFailure>,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks every axiom on every basis monomial (and every pair whose degrees
/// sum to at most the bound), stopping at the first failure.
pub fn verify_hopf_axioms(algebra: &Arc<HopfAlgebra>) -> HopfReport {
    let n = algebra.dimension();
    let report = |failure| HopfReport { checked_monomials: n, failure: Some(failure) };
    let basis = |i: usize| TensorElement::from_terms(
        algebra.clone(),
        1,
        Terms::single([i as u32, 0, 0], Rational::one()),
    );

    for i in 0..n {
        let mono = algebra.monomial_at(i as u32).clone();
        let fail = |axiom, defect: TensorElement| HopfFailure {
            axiom,
            monomial: mono.clone(),
            other: None,
            defect,
        };
        let m = basis(i);

        let expected = if i == 0 { Rational::one() } else { Rational::zero() };
        let eps = algebra.counit_of(i as u32).clone();
        if eps != expected {
            let defect = TensorElement::from_terms(algebra.clone(), 1, Terms::unit(eps - expected));
            return report(fail(HopfAxiom::Connected, defect));
        }

        let delta = m.apply_slot(0, SlotMap::Coproduct).expect("arity 1");
        let left = delta.apply_slot(0, SlotMap::Coproduct).expect("arity 2");
        let right = delta.apply_slot(1, SlotMap::Coproduct).expect("arity 2");
        if left != right {
            return report(fail(HopfAxiom::Coassociativity, left.sub(&right).expect("arity 3")));
        }

        for slot in [0, 1] {
            let c = delta.apply_slot(slot, SlotMap::Counit).expect("arity 2");
            if c != m {
                return report(fail(HopfAxiom::Counit, c.sub(&m).expect("arity 1")));
            }
        }

        let unit = TensorElement::from_terms(algebra.clone(), 1, Terms::unit(eps.clone()));
        for slot in [0, 1] {
            let s = delta
                .apply_slot(slot, SlotMap::Antipode)
                .and_then(|t| t.contract_mul(0))
                .expect("arity 2");
            if s != unit {
                return report(fail(HopfAxiom::Antipode, s.sub(&unit).expect("arity 1")));
            }
        }
    }

    for i in 0..n {
        for j in 0..n {
            let (di, dj) = (algebra.degree_of(i as u32), algebra.degree_of(j as u32));
            if di + dj > algebra.degree_bound() {
                continue;
            }
            let fail = |axiom, defect| HopfFailure {
                axiom,
                monomial: algebra.monomial_at(i as u32).clone(),
                other: Some(algebra.monomial_at(j as u32).clone()),
                defect,
            };
            let (a, b) = (basis(i), basis(j));
            let ab = a.mul(&b).expect("same algebra");
            let ba = b.mul(&a).expect("same algebra");
            if ab != ba {
                return report(fail(HopfAxiom::Commutativity, ab.sub(&ba).expect("arity 1")));
            }
            let d_ab = ab.apply_slot(0, SlotMap::Coproduct).expect("arity 1");
            let da = a.apply_slot(0, SlotMap::Coproduct).expect("arity 1");
            let db = b.apply_slot(0, SlotMap::Coproduct).expect("arity 1");
            let prod = da.mul(&db).expect("arity 2");
            if d_ab != prod {
                return report(fail(
                    HopfAxiom::CoproductMultiplicative,
                    d_ab.sub(&prod).expect("arity 2"),
                ));
            }
            let e_ab = ab.full_counit();
            let e_prod = algebra.counit_of(i as u32) * algebra.counit_of(j as u32);
            if e_ab != e_prod {
                let defect =
                    TensorElement::from_terms(algebra.clone(), 1, Terms::unit(e_ab - e_prod));
                return report(fail(HopfAxiom::CounitMultiplicative, defect));
            }
        }
    }

    HopfReport { checked_monomials: n, failure: None }
}

/// Convenience for tests: the monomials of `algebra` as tensor elements.
pub fn basis_elements(algebra: &Arc<HopfAlgebra>) -> Vec<TensorElement> {
    (0..algebra.dimension())
        .map(|i| {
            TensorElement::from_terms(
                algebra.clone(),
                1,
                Terms::single([i as u32, 0, 0], Rational::one()),
            )
        })
        .collect()
}
