//! Truncated power series in up to three variables with coefficients in a
//! tensor power of the algebra.
//!
//! Storage is dense in the variables (an `(N+1)^v` grid indexed by exponent
//! vector, entries of total order above `N` always empty) and sparse in the
//! coefficients. Each series also records how far its coefficients are
//! known exactly, see [`Precision`].

mod arith;
mod calculus;
mod compose;
mod display;

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::hopf::terms::Terms;
use crate::hopf::{check_arity, same_algebra, AlgebraSpec, HopfAlgebra, SlotMap, TensorElement};
use crate::rational::Rational;

pub const MAX_VARS: usize = 3;

/// How much of a series is known exactly.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Precision {
    /// The stored terms are the whole series (a polynomial of order ≤ N).
    Complete,
    /// Coefficients of total order ≤ n are exact; higher ones are not
    /// known. `n` may be negative, in which case nothing is certified.
    Through(i64),
}

impl Precision {
    /// Highest total order at which stored coefficients are exact.
    pub fn bound(self, order: u32) -> i64 {
        match self {
            Precision::Complete => order as i64,
            Precision::Through(n) => n.min(order as i64),
        }
    }

    pub fn is_complete(self) -> bool {
        matches!(self, Precision::Complete)
    }

    pub(crate) fn meet(self, other: Precision, order: u32) -> Precision {
        match (self, other) {
            (Precision::Complete, Precision::Complete) => Precision::Complete,
            _ => Precision::Through(self.bound(order).min(other.bound(order))),
        }
    }
}

/// Coefficient-wise slot operation used by [`Series::map_coefficients`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SlotOp {
    Apply { slot: usize, map: SlotMap },
    /// μ on slots `slot` and `slot + 1`.
    Contract { slot: usize },
    Embed { arity: usize, slots: Vec<usize> },
    Permute(Vec<usize>),
}

impl SlotOp {
    pub fn apply(&self, t: &TensorElement) -> Result<TensorElement, Error> {
        match self {
            SlotOp::Apply { slot, map } => t.apply_slot(*slot, *map),
            SlotOp::Contract { slot } => t.contract_mul(*slot),
            SlotOp::Embed { arity, slots } => t.embed(*arity, slots),
            SlotOp::Permute(perm) => t.permute(perm),
        }
    }
}

/// Index arithmetic for the dense exponent grid.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) struct Layout {
    pub vars: usize,
    pub order: u32,
}

impl Layout {
    pub fn len(&self) -> usize {
        (self.order as usize + 1).pow(self.vars as u32)
    }

    pub fn stride(&self, var: usize) -> usize {
        (self.order as usize + 1).pow(var as u32)
    }

    pub fn index(&self, exps: &[u32]) -> usize {
        let base = self.order as usize + 1;
        exps.iter().rev().fold(0, |acc, &e| acc * base + e as usize)
    }

    pub fn exps(&self, mut index: usize) -> [u32; MAX_VARS] {
        let base = self.order as usize + 1;
        let mut e = [0; MAX_VARS];
        for slot in e.iter_mut().take(self.vars) {
            *slot = (index % base) as u32;
            index /= base;
        }
        e
    }

    pub fn total(&self, index: usize) -> u32 {
        self.exps(index).iter().sum()
    }

    /// Indices of all exponent vectors of total order ≤ N, in graded order.
    pub fn graded_indices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.len()).filter(|&i| self.total(i) <= self.order).collect();
        v.sort_by_key(|&i| {
            let e = self.exps(i);
            (self.total(i), core::cmp::Reverse(e))
        });
        v
    }
}

#[derive(Clone)]
pub struct Series {
    algebra: Arc<HopfAlgebra>,
    arity: usize,
    layout: Layout,
    precision: Precision,
    coeffs: Vec<Terms>,
}

impl PartialEq for Series {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity
            && self.layout == other.layout
            && self.precision == other.precision
            && self.coeffs == other.coeffs
            && same_algebra(&self.algebra, &other.algebra)
    }
}

impl core::fmt::Debug for Series {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "Series<v={}, k={}, N={}, {:?}>({})",
            self.layout.vars, self.arity, self.layout.order, self.precision, self
        )
    }
}

/// Result of comparing two series up to their common exact order.
#[derive(Clone, Debug, PartialEq)]
pub struct Agreement {
    /// `lhs - rhs`, restricted to orders ≤ `through`.
    pub defect: Series,
    pub through: i64,
}

impl Agreement {
    pub fn holds(&self) -> bool {
        self.defect.is_zero()
    }
}

impl Series {
    fn check_shape(algebra: &Arc<HopfAlgebra>, arity: usize, vars: usize) -> Result<(), Error> {
        let _ = algebra;
        check_arity(arity)?;
        if !(1..=MAX_VARS).contains(&vars) {
            return Err(Error::ShapeMismatch(alloc::format!("{vars} variables (1 to 3 allowed)")));
        }
        Ok(())
    }

    pub(crate) fn from_raw(
        algebra: Arc<HopfAlgebra>,
        arity: usize,
        layout: Layout,
        precision: Precision,
        coeffs: Vec<Terms>,
    ) -> Series {
        debug_assert_eq!(coeffs.len(), layout.len());
        let precision = match precision {
            Precision::Through(n) => Precision::Through(n.min(layout.order as i64)),
            p => p,
        };
        Series { algebra, arity, layout, precision, coeffs }
    }

    pub fn zero(
        algebra: &Arc<HopfAlgebra>,
        arity: usize,
        vars: usize,
        order: u32,
    ) -> Result<Series, Error> {
        Series::check_shape(algebra, arity, vars)?;
        let layout = Layout { vars, order };
        Ok(Series::from_raw(
            algebra.clone(),
            arity,
            layout,
            Precision::Complete,
            vec![Terms::zero(); layout.len()],
        ))
    }

    /// The constant series `value`.
    pub fn constant(value: &TensorElement, vars: usize, order: u32) -> Result<Series, Error> {
        let mut s = Series::zero(value.algebra(), value.arity(), vars, order)?;
        s.coeffs[0] = value.raw_terms().clone();
        Ok(s)
    }

    /// The variable `x_var` with coefficient 1⊗...⊗1.
    pub fn variable(
        algebra: &Arc<HopfAlgebra>,
        arity: usize,
        vars: usize,
        order: u32,
        var: usize,
    ) -> Result<Series, Error> {
        let mut s = Series::zero(algebra, arity, vars, order)?;
        if var >= vars {
            return Err(Error::ShapeMismatch(alloc::format!("variable {var} of {vars}")));
        }
        if order >= 1 {
            let mut e = [0; MAX_VARS];
            e[var] = 1;
            let i = s.layout.index(&e[..vars]);
            s.coeffs[i] = Terms::unit(Rational::one());
        } else {
            s.precision = Precision::Through(0);
        }
        Ok(s)
    }

    /// Builds a series from `(exponents, coefficient)` pairs. Terms of total
    /// order above `order` are dropped (and the precision lowered to
    /// `Through(order)` if that happens).
    pub fn from_terms(
        algebra: &Arc<HopfAlgebra>,
        arity: usize,
        vars: usize,
        order: u32,
        precision: Precision,
        terms: impl IntoIterator<Item = (Vec<u32>, TensorElement)>,
    ) -> Result<Series, Error> {
        let mut s = Series::zero(algebra, arity, vars, order)?;
        s.precision = precision;
        for (exps, c) in terms {
            if exps.len() != vars {
                return Err(Error::ShapeMismatch(alloc::format!(
                    "exponent vector of length {} for {vars} variables",
                    exps.len()
                )));
            }
            if !same_algebra(c.algebra(), algebra) {
                return Err(Error::AlgebraMismatch);
            }
            if c.arity() != arity {
                return Err(Error::ArityMismatch { expected: arity, found: c.arity() });
            }
            if exps.iter().sum::<u32>() > order {
                if !c.is_zero() {
                    s.precision = s.precision.meet(Precision::Through(order as i64), order);
                }
                continue;
            }
            let i = s.layout.index(&exps);
            s.coeffs[i].add_assign(c.raw_terms());
        }
        let precision = s.precision;
        Ok(s.with_precision(precision))
    }

    pub fn algebra(&self) -> &Arc<HopfAlgebra> {
        &self.algebra
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn vars(&self) -> usize {
        self.layout.vars
    }

    pub fn order(&self) -> u32 {
        self.layout.order
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    /// Highest total order through which the coefficients are exact.
    pub fn exact_order(&self) -> i64 {
        self.precision.bound(self.layout.order)
    }

    pub fn with_precision(mut self, precision: Precision) -> Series {
        self.precision = match precision {
            Precision::Through(n) => Precision::Through(n.min(self.layout.order as i64)),
            p => p,
        };
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Terms::is_zero)
    }

    pub fn coeff(&self, exps: &[u32]) -> Result<TensorElement, Error> {
        if exps.len() != self.layout.vars {
            return Err(Error::ShapeMismatch(alloc::format!(
                "exponent vector of length {} for {} variables",
                exps.len(),
                self.layout.vars
            )));
        }
        let terms = if exps.iter().sum::<u32>() > self.layout.order {
            Terms::zero()
        } else {
            self.coeffs[self.layout.index(exps)].clone()
        };
        Ok(self.tensor(terms))
    }

    pub fn constant_term(&self) -> TensorElement {
        self.tensor(self.coeffs[0].clone())
    }

    /// Nonzero terms in graded order (total order ascending, then larger
    /// exponents of earlier variables first).
    pub fn terms(&self) -> Vec<(Vec<u32>, TensorElement)> {
        self.layout
            .graded_indices()
            .into_iter()
            .filter(|&i| !self.coeffs[i].is_zero())
            .map(|i| {
                let e = self.layout.exps(i);
                (e[..self.layout.vars].to_vec(), self.tensor(self.coeffs[i].clone()))
            })
            .collect()
    }

    /// Largest total order carrying a nonzero coefficient, -1 for zero.
    pub fn max_total(&self) -> i64 {
        self.nonzero_indices().map(|i| self.layout.total(i) as i64).max().unwrap_or(-1)
    }

    pub(crate) fn nonzero_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, t)| !t.is_zero()).map(|(i, _)| i)
    }

    pub(crate) fn tensor(&self, terms: Terms) -> TensorElement {
        TensorElement::from_terms(self.algebra.clone(), self.arity, terms)
    }



    /// Changes the storage order. Shrinking drops terms and caps the
    /// precision; growing keeps the precision (a complete series stays
    /// complete, a partially known one stays known only as far as before).
    pub fn with_order(&self, order: u32) -> Series {
        let layout = Layout { vars: self.layout.vars, order };
        let mut coeffs = vec![Terms::zero(); layout.len()];
        let mut dropped = false;
        for i in self.nonzero_indices() {
            let e = self.layout.exps(i);
            if e.iter().sum::<u32>() > order {
                dropped = true;
                continue;
            }
            coeffs[layout.index(&e[..layout.vars])] = self.coeffs[i].clone();
        }
        let precision = match self.precision {
            Precision::Complete if !dropped => Precision::Complete,
            Precision::Complete => Precision::Through(order as i64),
            Precision::Through(n) => Precision::Through(n.min(order as i64)),
        };
        Series::from_raw(self.algebra.clone(), self.arity, layout, precision, coeffs)
    }

    /// Drops every term above `order` without changing the storage order.
    pub fn truncated_to(&self, order: i64) -> Series {
        let mut out = self.clone();
        for i in 0..out.coeffs.len() {
            if out.layout.total(i) as i64 > order {
                out.coeffs[i] = Terms::zero();
            }
        }
        out
    }

    /// Replaces each coefficient by its full counit, giving a series over
    /// the trivial algebra with arity 1.
    pub fn scalar_part(&self) -> Result<Series, Error> {
        let trivial = Arc::new(AlgebraSpec::trivial(self.algebra.degree_bound()).build()?);
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| Terms::unit(self.tensor(c.clone()).full_counit()))
            .collect();
        Ok(Series::from_raw(trivial, 1, self.layout, self.precision, coeffs))
    }

    /// The same series over `algebra`, which must equal its own algebra.
    /// Sharing one handle makes later compatibility checks cheap.
    pub fn rebind(&self, algebra: &Arc<HopfAlgebra>) -> Result<Series, Error> {
        if !same_algebra(&self.algebra, algebra) {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = self.clone();
        out.algebra = algebra.clone();
        Ok(out)
    }

    pub fn with_algebra_of(&self, other: &Series) -> Result<Series, Error> {
        self.rebind(&other.algebra)
    }

    /// Applies a chain of slot operations to every coefficient.
    pub fn map_coefficients(&self, ops: &[SlotOp]) -> Result<Series, Error> {
        let mut probe = self.tensor(Terms::zero());
        for op in ops {
            probe = op.apply(&probe)?;
        }
        let arity = probe.arity();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if c.is_zero() {
                coeffs.push(Terms::zero());
                continue;
            }
            let mut t = self.tensor(c.clone());
            for op in ops {
                t = op.apply(&t)?;
            }
            coeffs.push(t.terms);
        }
        Ok(Series::from_raw(self.algebra.clone(), arity, self.layout, self.precision, coeffs))
    }

    /// Shorthand for a single [`SlotOp::Apply`].
    pub fn map_slot(&self, slot: usize, map: SlotMap) -> Result<Series, Error> {
        self.map_coefficients(&[SlotOp::Apply { slot, map }])
    }

    /// Re-reads the series in `vars` variables, variable `i` becoming
    /// variable `positions[i]`.
    pub fn embed_vars(&self, vars: usize, positions: &[usize]) -> Result<Series, Error> {
        if positions.len() != self.layout.vars
            || positions.iter().any(|&p| p >= vars)
            || vars > MAX_VARS
        {
            return Err(Error::ShapeMismatch(alloc::format!(
                "cannot embed {} variables into {vars}",
                self.layout.vars
            )));
        }
        for (i, p) in positions.iter().enumerate() {
            if positions[..i].contains(p) {
                return Err(Error::ShapeMismatch("repeated variable position".into()));
            }
        }
        let layout = Layout { vars, order: self.layout.order };
        let mut coeffs = vec![Terms::zero(); layout.len()];
        for i in self.nonzero_indices() {
            let e = self.layout.exps(i);
            let mut t = [0; MAX_VARS];
            for (k, &p) in positions.iter().enumerate() {
                t[p] = e[k];
            }
            coeffs[layout.index(&t[..vars])] = self.coeffs[i].clone();
        }
        Ok(Series::from_raw(self.algebra.clone(), self.arity, layout, self.precision, coeffs))
    }

    /// Permutes variables: variable `i` of the result is variable `perm[i]`
    /// of `self`.
    pub fn permute_vars(&self, perm: &[usize]) -> Result<Series, Error> {
        let v = self.layout.vars;
        if perm.len() != v {
            return Err(Error::ShapeMismatch("permutation length".into()));
        }
        let mut positions = vec![usize::MAX; v];
        for (i, &p) in perm.iter().enumerate() {
            if p >= v || positions[p] != usize::MAX {
                return Err(Error::ShapeMismatch("not a permutation".into()));
            }
            positions[p] = i;
        }
        self.embed_vars(v, &positions)
    }

    /// `self - other` restricted to the orders where both are exact. Series
    /// stored at different orders are compared at the smaller one.
    pub fn compare(&self, other: &Series) -> Result<Agreement, Error> {
        let order = self.layout.order.min(other.layout.order);
        let (a, b) = (self.with_order(order), other.with_order(order));
        let diff = a.sub(&b)?;
        let through = a.exact_order().min(b.exact_order());
        Ok(Agreement { defect: diff.truncated_to(through), through })
    }

    /// Largest `n` such that every nonzero power of the constant term up to
    /// the `n`-th survives, i.e. how many constant factors can appear in a
    /// nonzero product. `None` if the constant term is not nilpotent.
    pub(crate) fn constant_factor_bound(&self) -> Option<u32> {
        let c = self.constant_term();
        if c.is_zero() {
            return Some(0);
        }
        c.nilpotency_index().map(|n| n - 1)
    }
}
