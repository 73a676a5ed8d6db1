use alloc::boxed::Box;

use super::cocycle::check_cocycle;
use super::law::check_axioms;
use super::FormalGroupLaw;
use crate::error::Error;
use crate::hopf::{SlotMap, TensorElement};
use crate::series::{Series, SlotOp};

/// F = (Δg)⁻¹(c + g(X) + g(Y)), verified against the axioms before it is
/// returned.
///
/// Substituting a series whose constant term is `c` loses up to `K` orders
/// of exactness, `K` being the largest number of factors of `c` with a
/// nonzero product. When `g` is a complete polynomial the returned law
/// stores `2K` guard orders and certifies through `N`; the extra `K` keep
/// `logarithm(F)` exact far enough to reconstruct `F` from it again.
/// Otherwise the nominal order is lowered to what the data in `g` supports.
pub fn reconstruct(g: &Series, c: &TensorElement, order: u32) -> Result<FormalGroupLaw, Error> {
    if g.vars() != 1 {
        return Err(Error::ShapeMismatch("a logarithm has one variable".into()));
    }
    if g.arity() != 1 {
        return Err(Error::ArityMismatch { expected: 1, found: g.arity() });
    }
    if !g.constant_term().is_zero() {
        return Err(Error::NonZeroConstantTerm);
    }
    let report = check_cocycle(c)?;
    if !report.passed() {
        return Err(Error::CocycleViolation(Box::new(report)));
    }
    let guard = match c.nilpotency_index() {
        Some(n) => n.saturating_sub(1),
        None => return Err(Error::NonNilpotentConstantTerm),
    };

    // h is substituted into a series with constant term c, so it needs K
    // more orders than the result.
    let (h_order, f_order) = if g.precision().is_complete() {
        (order + 3 * guard, order + 2 * guard)
    } else {
        let top = g.exact_order().min(g.order() as i64) - guard as i64;
        if top < 1 {
            return Err(Error::TruncationInsufficient {
                required: order as i64 + guard as i64,
                available: g.exact_order(),
            });
        }
        (g.order(), top as u32)
    };
    let h = g.with_order(h_order).map_slot(0, SlotMap::Coproduct)?.comp_inverse()?;
    let g = g.with_order(f_order);
    let side = |var: usize| -> Result<Series, Error> {
        g.map_coefficients(&[SlotOp::Embed { arity: 2, slots: alloc::vec![var] }])?
            .embed_vars(2, &[var])
    };
    let sum = Series::constant(c, 2, f_order)?.add(&side(0)?)?.add(&side(1)?)?;
    let f = h.substitute(core::slice::from_ref(&sum))?;

    let exact = f.exact_order();
    let nominal = (order as i64).min(exact - guard as i64);
    if nominal < 1 {
        return Err(Error::TruncationInsufficient {
            required: order as i64 + guard as i64,
            available: exact,
        });
    }
    let stored = if f.precision().is_complete() && f.max_total() <= order as i64 {
        order
    } else {
        f_order.min(exact as u32)
    };
    let law = FormalGroupLaw::with_order(f.with_order(stored), nominal as u32)?;
    let report = check_axioms(&law)?;
    if !report.passed() {
        return Err(Error::AxiomViolation(Box::new(report)));
    }
    Ok(law)
}
