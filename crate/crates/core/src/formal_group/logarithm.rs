use alloc::boxed::Box;

use super::cocycle::check_cocycle;
use super::law::epsilon_tilde;
use super::FormalGroupLaw;
use crate::error::Error;
use crate::hopf::{SlotMap, TensorElement};
use crate::series::{Agreement, Series, SlotOp};

/// ω̃ = (id⊗ε̃) ∂F/∂Y.
pub fn invariant_differential(law: &FormalGroupLaw) -> Result<Series, Error> {
    epsilon_tilde(&law.series().derivative(1)?, 1)
}

/// g = ∫ dx/ω̃ with zero constant of integration.
pub fn logarithm(law: &FormalGroupLaw) -> Result<Series, Error> {
    invariant_differential(law)?.mul_inverse()?.integrate(0)
}

/// `g` read in variable `var` of two, with coefficients in slot `var`.
fn one_sided(g: &Series, var: usize, order: u32) -> Result<Series, Error> {
    g.with_order(order)
        .map_coefficients(&[SlotOp::Embed { arity: 2, slots: alloc::vec![var] }])?
        .embed_vars(2, &[var])
}

/// (Δg)(F(X, Y)).
fn lifted_log(law: &FormalGroupLaw, g: &Series) -> Result<Series, Error> {
    check_log_shape(g)?;
    g.map_slot(0, SlotMap::Coproduct)?.substitute(core::slice::from_ref(law.series()))
}

fn check_log_shape(g: &Series) -> Result<(), Error> {
    if g.vars() != 1 {
        return Err(Error::ShapeMismatch("a logarithm has one variable".into()));
    }
    if g.arity() != 1 {
        return Err(Error::ArityMismatch { expected: 1, found: g.arity() });
    }
    Ok(())
}

/// Recovers the cocycle `c` from `(Δg)(F) = c + g(X) + g(Y)`.
///
/// The whole difference `(Δg)(F) - g(X) - g(Y)` must be constant through
/// its exact order. Its ε̃-projections on either side are compared with `g`
/// independently, and `c` must have vanishing one-sided counits.
pub fn extract_cocycle(law: &FormalGroupLaw, g: &Series) -> Result<TensorElement, Error> {
    let lhs = lifted_log(law, g)?;
    let order = lhs.order();
    let diff = lhs.sub(&one_sided(g, 0, order)?)?.sub(&one_sided(g, 1, order)?)?;
    let through = diff.exact_order();
    if through < 0 {
        return Err(Error::TruncationInsufficient { required: 0, available: through });
    }
    let c = diff.constant_term();
    let residual = diff
        .truncated_to(through)
        .sub(&Series::constant(&c, 2, order)?)?;
    if !residual.is_zero() {
        return Err(Error::ResidualNonConstant(Box::new(residual)));
    }

    let report = check_cocycle(&c)?;
    let mut projections_agree = true;
    for var in [0, 1] {
        projections_agree &= epsilon_tilde(&lhs, var)?.compare(g)?.holds();
    }
    if !projections_agree || !report.counit_holds() {
        return Err(Error::CocycleViolation(Box::new(report)));
    }
    Ok(c)
}

/// Compares `(Δg)(F)` with `c + g(X) + g(Y)` through their common exact order.
pub fn verify_log_equation(
    law: &FormalGroupLaw,
    g: &Series,
    c: &TensorElement,
) -> Result<Agreement, Error> {
    if c.arity() != 2 {
        return Err(Error::ArityMismatch { expected: 2, found: c.arity() });
    }
    let lhs = lifted_log(law, g)?;
    let order = lhs.order();
    let rhs = Series::constant(c, 2, order)?
        .add(&one_sided(g, 0, order)?)?
        .add(&one_sided(g, 1, order)?)?;
    lhs.compare(&rhs)
}

/// Compares `(Δω̃)(F(X, Y))` with `∂F/∂Y · (1⊗ω̃)(Y)`.
pub fn verify_differential_identity(law: &FormalGroupLaw) -> Result<Agreement, Error> {
    let f = law.series();
    let omega = invariant_differential(law)?;
    let lhs = omega.map_slot(0, SlotMap::Coproduct)?.substitute(core::slice::from_ref(f))?;
    let rhs = f.derivative(1)?.mul(&one_sided(&omega, 1, f.order())?)?;
    lhs.compare(&rhs)
}

/// Images of a law and its logarithm under the counit.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalSpecialization {
    /// (ε⊗ε)F over the trivial algebra.
    pub law: Series,
    /// εg over the trivial algebra.
    pub logarithm: Series,
    /// εg(F_cl(X, Y)) against εg(X) + εg(Y).
    pub identity: Agreement,
}

impl ClassicalSpecialization {
    pub fn holds(&self) -> bool {
        self.identity.holds()
    }
}

pub fn specialize_classical(
    law: &FormalGroupLaw,
    g: &Series,
) -> Result<ClassicalSpecialization, Error> {
    check_log_shape(g)?;
    let f_cl = law.series().scalar_part()?;
    let g_cl = g.scalar_part()?.with_algebra_of(&f_cl)?;
    let lhs = g_cl.substitute(core::slice::from_ref(&f_cl))?;
    let order = lhs.order();
    let gx = g_cl.with_order(order).embed_vars(2, &[0])?;
    let gy = g_cl.with_order(order).embed_vars(2, &[1])?;
    let identity = lhs.compare(&gx.add(&gy)?)?;
    Ok(ClassicalSpecialization { law: f_cl, logarithm: g_cl, identity })
}
