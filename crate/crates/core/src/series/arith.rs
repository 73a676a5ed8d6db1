use alloc::vec;
use alloc::vec::Vec;

use super::{Layout, Precision, Series, MAX_VARS};
use crate::error::Error;
use crate::hopf::terms::{KeyAccumulator, Terms};
use crate::hopf::{same_algebra, HopfAlgebra, TensorElement};
use crate::rational::Rational;

/// Stand-in for "no limit" in precision arithmetic.
pub(crate) const UNBOUNDED: i64 = i64::MAX / 4;

/// A nonzero grid position: index, exponents, total order and the lowest
/// algebra degree among its terms.
struct Cell {
    index: usize,
    exps: [u32; MAX_VARS],
    total: u32,
    degree: u32,
}

fn cells(alg: &HopfAlgebra, layout: Layout, grid: &[Terms]) -> Vec<Cell> {
    let mut out: Vec<Cell> = grid
        .iter()
        .enumerate()
        .filter(|(_, t)| !t.is_zero())
        .map(|(i, t)| Cell {
            index: i,
            exps: layout.exps(i),
            total: layout.total(i),
            degree: t.min_degree(alg),
        })
        .collect();
    out.sort_by_key(|c| c.total);
    out
}

/// `Σ a_i · b_i` over pairs of grids of the same layout, truncated at order
/// N in the variables and at the degree bound in the algebra. Each output
/// position is summed on its own so that terms merge densely.
pub(crate) fn sum_of_products(
    alg: &HopfAlgebra,
    arity: usize,
    layout: Layout,
    pairs: &[(&[Terms], &[Terms])],
) -> Vec<Terms> {
    let bound = alg.degree_bound();
    let lefts: Vec<Vec<Cell>> = pairs.iter().map(|(a, _)| cells(alg, layout, a)).collect();
    let right_degrees: Vec<Vec<u32>> = pairs
        .iter()
        .map(|(_, b)| b.iter().map(|t| t.min_degree(alg)).collect())
        .collect();
    let mut acc = KeyAccumulator::new(alg, arity);
    let mut out = vec![Terms::zero(); layout.len()];
    for (k, slot) in out.iter_mut().enumerate() {
        let tk = layout.total(k);
        if tk > layout.order {
            continue;
        }
        let ek = layout.exps(k);
        let mut any = false;
        for (p, (a, b)) in pairs.iter().enumerate() {
            for cell in &lefts[p] {
                if cell.total > tk {
                    break;
                }
                if (0..layout.vars).any(|v| cell.exps[v] > ek[v]) {
                    continue;
                }
                // The index is linear in the exponents.
                let ib = k - cell.index;
                let db = right_degrees[p][ib];
                if db == u32::MAX || cell.degree + db > bound {
                    continue;
                }
                a[cell.index].mul_acc(&b[ib], alg, &mut acc);
                any = true;
            }
        }
        if any {
            *slot = acc.take();
        }
    }
    out
}

pub(crate) fn mul_raw(
    alg: &HopfAlgebra,
    arity: usize,
    layout: Layout,
    a: &[Terms],
    b: &[Terms],
) -> Vec<Terms> {
    sum_of_products(alg, arity, layout, &[(a, b)])
}

impl Series {
    pub(crate) fn check_compatible(&self, other: &Series) -> Result<(), Error> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: other.arity });
        }
        if self.layout != other.layout {
            return Err(Error::ShapeMismatch(alloc::format!(
                "{} variables at order {} against {} variables at order {}",
                self.layout.vars,
                self.layout.order,
                other.layout.vars,
                other.layout.order
            )));
        }
        Ok(())
    }

    /// Exact order as used in precision arithmetic: unbounded when complete.
    pub(crate) fn exact_limit(&self) -> i64 {
        match self.precision {
            Precision::Complete => UNBOUNDED,
            Precision::Through(n) => n,
        }
    }

    /// Lowest order known to carry a nonzero coefficient. If every exact
    /// coefficient vanishes this is one past the exact order.
    pub(crate) fn valuation(&self) -> i64 {
        let limit = self.exact_limit();
        self.nonzero_indices()
            .map(|i| self.layout.total(i) as i64)
            .filter(|&t| t <= limit)
            .min()
            .unwrap_or(limit.saturating_add(1).min(UNBOUNDED))
    }

    /// Precision of a product whose factors have the given exact limits and
    /// valuations; `complete_fits` says whether both factors are complete
    /// and their product is not cut off at order N.
    pub(crate) fn product_precision(
        limits: (i64, i64),
        vals: (i64, i64),
        complete_fits: bool,
        order: u32,
    ) -> Precision {
        let (ea, eb) = limits;
        let (va, vb) = vals;
        if ea == UNBOUNDED && eb == UNBOUNDED {
            return if complete_fits {
                Precision::Complete
            } else {
                Precision::Through(order as i64)
            };
        }
        let e = ea.saturating_add(vb).min(eb.saturating_add(va));
        Precision::Through(e.min(order as i64))
    }

    fn zip_with(&self, other: &Series, negate: bool) -> Result<Series, Error> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| if negate { a.sub(b) } else { a.add(b) })
            .collect();
        let precision = self.precision.meet(other.precision, self.layout.order);
        Ok(Series::from_raw(self.algebra.clone(), self.arity, self.layout, precision, coeffs))
    }

    pub fn add(&self, other: &Series) -> Result<Series, Error> {
        self.zip_with(other, false)
    }

    pub fn sub(&self, other: &Series) -> Result<Series, Error> {
        self.zip_with(other, true)
    }

    pub fn neg(&self) -> Series {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|c| *c = c.neg());
        out
    }

    pub fn scale(&self, r: &Rational) -> Series {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|c| *c = c.scale(r));
        out
    }

    /// Multiplies every coefficient by the constant `c`.
    pub fn scale_by(&self, c: &TensorElement) -> Result<Series, Error> {
        let k = Series::constant(c, self.layout.vars, self.layout.order)?;
        self.mul(&k)
    }

    pub fn mul(&self, other: &Series) -> Result<Series, Error> {
        self.check_compatible(other)?;
        let coeffs = mul_raw(&self.algebra, self.arity, self.layout, &self.coeffs, &other.coeffs);
        let fits = self.max_total() + other.max_total() <= self.layout.order as i64;
        let precision = Series::product_precision(
            (self.exact_limit(), other.exact_limit()),
            (self.valuation(), other.valuation()),
            fits,
            self.layout.order,
        );
        Ok(Series::from_raw(self.algebra.clone(), self.arity, self.layout, precision, coeffs))
    }

    pub fn pow(&self, n: u32) -> Result<Series, Error> {
        let one = TensorElement::unit(&self.algebra, self.arity, Rational::one())?;
        let mut acc = Series::constant(&one, self.layout.vars, self.layout.order)?;
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `1/f`, defined when the constant term has full counit 1. Then
    /// `f = 1 - u` with `u` in the ideal generated by the variables and the
    /// augmentation ideal, so the geometric series in `u` terminates.
    pub fn mul_inverse(&self) -> Result<Series, Error> {
        if !self.coeffs[0].unit_coeff().is_one() {
            return Err(Error::NonInvertibleConstantTerm);
        }
        let (alg, arity, layout) = (&self.algebra, self.arity, self.layout);

        let mut one = vec![Terms::zero(); layout.len()];
        one[0] = Terms::unit(Rational::one());
        let u: Vec<Terms> = self
            .coeffs
            .iter()
            .zip(&one)
            .map(|(f, e)| e.sub(f))
            .collect();

        let mut acc = one.clone();
        let mut power = one;
        loop {
            power = mul_raw(alg, arity, layout, &power, &u);
            if power.iter().all(Terms::is_zero) {
                break;
            }
            for (a, p) in acc.iter_mut().zip(&power) {
                a.add_assign(p);
            }
        }
        let coeffs = acc;
        let precision = match self.precision {
            Precision::Complete if self.max_total() <= 0 => Precision::Complete,
            p => Precision::Through(p.bound(layout.order)),
        };
        Ok(Series::from_raw(alg.clone(), arity, layout, precision, coeffs))
    }
}
