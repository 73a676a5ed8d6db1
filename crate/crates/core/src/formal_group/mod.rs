//! One-dimensional formal group laws over a Hopf algebra.
//!
//! A law is a two-variable series `F(X, Y)` with coefficients in H⊗H,
//! where `X = x⊗1` and `Y = 1⊗x`. Every law carries a nominal order `N`:
//! the order through which its axioms are claimed. The stored series may
//! run past `N`; those guard terms are what lets substitutions with a
//! nilpotent constant term stay exact through `N`.

mod cocycle;
mod generator;
mod inverse;
mod law;
mod logarithm;
mod reconstruct;

use alloc::sync::Arc;

pub use cocycle::{additive_cocycle_group, check_cocycle, coboundary, CocycleReport};
pub use generator::InstanceGenerator;
pub use inverse::{inverse_series, inverse_residual};
pub use law::{check_axioms, check_axioms_through, epsilon_tilde, Axiom, AxiomDefect, AxiomReport};
pub use logarithm::{
    extract_cocycle, invariant_differential, logarithm, specialize_classical,
    verify_differential_identity, verify_log_equation, ClassicalSpecialization,
};
pub use reconstruct::reconstruct;

use crate::error::Error;
use crate::hopf::HopfAlgebra;
use crate::series::Series;

#[derive(Clone, Debug, PartialEq)]
pub struct FormalGroupLaw {
    series: Series,
    order: u32,
}

impl FormalGroupLaw {
    /// A law whose nominal order is the storage order of `series`.
    pub fn new(series: Series) -> Result<Self, Error> {
        let order = series.order();
        FormalGroupLaw::with_order(series, order)
    }

    /// A law claimed through `order`, which may be below the storage order.
    pub fn with_order(series: Series, order: u32) -> Result<Self, Error> {
        if series.vars() != 2 {
            return Err(Error::ShapeMismatch(alloc::format!(
                "a group law has 2 variables, not {}",
                series.vars()
            )));
        }
        if series.arity() != 2 {
            return Err(Error::ArityMismatch { expected: 2, found: series.arity() });
        }
        if order > series.order() {
            return Err(Error::ShapeMismatch(alloc::format!(
                "nominal order {order} above storage order {}",
                series.order()
            )));
        }
        Ok(FormalGroupLaw { series, order })
    }

    pub fn series(&self) -> &Series {
        &self.series
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn algebra(&self) -> &Arc<HopfAlgebra> {
        self.series.algebra()
    }

    /// The series cut at the nominal order.
    pub fn truncated(&self) -> Series {
        self.series.with_order(self.order)
    }
}
