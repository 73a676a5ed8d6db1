use alloc::boxed::Box;

use super::FormalGroupLaw;
use crate::error::Error;
use crate::hopf::{HopfElement, SlotMap, TensorElement};
use crate::series::Series;

/// Both cocycle conditions evaluated on an arity-2 element `c`.
#[derive(Clone, Debug, PartialEq)]
pub struct CocycleReport {
    /// (id⊗Δ)c + 1⊗c - (Δ⊗id)c - c⊗1.
    pub cobar_defect: TensorElement,
    /// (id⊗ε)c.
    pub right_counit: TensorElement,
    /// (ε⊗id)c.
    pub left_counit: TensorElement,
}

impl CocycleReport {
    pub fn cobar_holds(&self) -> bool {
        self.cobar_defect.is_zero()
    }

    pub fn counit_holds(&self) -> bool {
        self.right_counit.is_zero() && self.left_counit.is_zero()
    }

    pub fn passed(&self) -> bool {
        self.cobar_holds() && self.counit_holds()
    }
}

pub fn check_cocycle(c: &TensorElement) -> Result<CocycleReport, Error> {
    if c.arity() != 2 {
        return Err(Error::ArityMismatch { expected: 2, found: c.arity() });
    }
    let cobar_defect = c
        .apply_slot(1, SlotMap::Coproduct)?
        .add(&c.embed(3, &[1, 2])?)?
        .sub(&c.apply_slot(0, SlotMap::Coproduct)?)?
        .sub(&c.embed(3, &[0, 1])?)?;
    Ok(CocycleReport {
        cobar_defect,
        right_counit: c.apply_slot(1, SlotMap::Counit)?,
        left_counit: c.apply_slot(0, SlotMap::Counit)?,
    })
}

/// dh = Δh - h⊗1 - 1⊗h for `h` with ε(h) = 0.
pub fn coboundary(h: &HopfElement) -> Result<TensorElement, Error> {
    if !h.counit().is_zero() {
        return Err(Error::NotAugmented);
    }
    let t = h.as_tensor();
    h.comul().sub(&t.embed(2, &[0])?)?.sub(&t.embed(2, &[1])?)
}

/// The law `c + X + Y`, stored exactly at `order`.
pub fn additive_cocycle_group(c: &TensorElement, order: u32) -> Result<FormalGroupLaw, Error> {
    let report = check_cocycle(c)?;
    if !report.passed() {
        return Err(Error::CocycleViolation(Box::new(report)));
    }
    FormalGroupLaw::new(lemma_series(c, order)?)
}

/// `c + X + Y` without checking `c`.
pub(crate) fn lemma_series(c: &TensorElement, order: u32) -> Result<Series, Error> {
    let alg = c.algebra();
    Series::constant(c, 2, order)?
        .add(&Series::variable(alg, 2, 2, order, 0)?)?
        .add(&Series::variable(alg, 2, 2, order, 1)?)
}
