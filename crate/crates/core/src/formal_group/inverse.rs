use alloc::vec;

use super::FormalGroupLaw;
use crate::error::Error;
use crate::hopf::SlotMap;
use crate::series::{Precision, Series, SlotOp};

/// Newton steps before giving up; each step doubles the number of exact
/// filtration levels, and there are at most N + D + 1 of them.
const MAX_NEWTON_STEPS: usize = 64;

/// (μ∘(id⊗S))F as a two-variable series over H.
fn antipode_contraction(law: &FormalGroupLaw) -> Result<Series, Error> {
    law.series().map_coefficients(&[
        SlotOp::Apply { slot: 1, map: SlotMap::Antipode },
        SlotOp::Contract { slot: 0 },
    ])
}

/// ((μ∘(id⊗S))F)(x, Θ(x)); zero through its exact order iff Θ is an inverse.
pub fn inverse_residual(law: &FormalGroupLaw, theta: &Series) -> Result<Series, Error> {
    let p = antipode_contraction(law)?;
    let x = Series::variable(theta.algebra(), 1, 1, theta.order(), 0)?;
    p.substitute(&[x, theta.clone()])
}

/// The series Θ with ((μ∘(id⊗S))F)(x, Θ(x)) = 0.
///
/// For `F = c + X + Y` this is `-(μ∘(id⊗S))c - x`, checked against the
/// equation before it is returned. Otherwise Θ is found by Newton
/// iteration in the quotient where both truncations are exact.
pub fn inverse_series(law: &FormalGroupLaw) -> Result<Series, Error> {
    let f = law.series();
    let (alg, n) = (f.algebra(), f.order());
    let p = antipode_contraction(law)?;
    let x = Series::variable(alg, 1, 1, n, 0)?;

    let lemma_part = f
        .sub(&Series::variable(alg, 2, 2, n, 0)?)?
        .sub(&Series::variable(alg, 2, 2, n, 1)?)?;
    let theta = if lemma_part.max_total() <= 0 {
        let c = lemma_part.constant_term();
        let k = c.apply_slot(1, SlotMap::Antipode)?.contract_mul(0)?;
        Series::constant(&k, 1, n)?.add(&x)?.neg().with_precision(f.precision())
    } else {
        newton(&p, &x)?
    };

    let residual = p.substitute(&[x, theta.clone()])?;
    let through = residual.exact_order();
    let first_bad = residual.truncated_to(through).terms().first().map(|(e, _)| e[0] as i64);
    if let Some(order) = first_bad {
        return Err(Error::NoInverse { order });
    }
    let precision = match f.precision() {
        Precision::Complete if theta.precision().is_complete() => Precision::Complete,
        _ => Precision::Through(through),
    };
    Ok(theta.with_precision(precision))
}

fn newton(p: &Series, x: &Series) -> Result<Series, Error> {
    let (alg, n) = (p.algebra(), x.order());
    let dp = p.derivative(1)?.with_precision(Precision::Complete);
    let p = p.clone().with_precision(Precision::Complete);
    let mut theta = Series::zero(alg, 1, 1, n)?;
    for _ in 0..MAX_NEWTON_STEPS {
        let args = vec![x.clone(), theta.clone()];
        let r = p.substitute(&args).map_err(|_| Error::NoInverse { order: 0 })?;
        if r.is_zero() {
            return Ok(theta.with_precision(Precision::Through(n as i64)));
        }
        let d = dp.substitute(&args)?;
        let d_inv = d.mul_inverse().map_err(|_| Error::NoInverse { order: 0 })?;
        theta = theta.sub(&r.mul(&d_inv)?)?.with_precision(Precision::Complete);
    }
    let r = p.substitute(&[x.clone(), theta])?;
    let order = r.terms().first().map(|(e, _)| e[0] as i64).unwrap_or(0);
    Err(Error::NoInverse { order })
}
