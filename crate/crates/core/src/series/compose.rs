use alloc::vec;
use alloc::vec::Vec;

use super::arith::{mul_raw, sum_of_products};
use super::{Layout, Precision, Series, MAX_VARS};
use crate::error::Error;
use crate::hopf::terms::{KeyAccumulator, Terms};
use crate::hopf::same_algebra;
use crate::rational::Rational;

impl Series {
    fn check_assignments(&self, gs: &[Series]) -> Result<Layout, Error> {
        if gs.len() != self.layout.vars {
            return Err(Error::ShapeMismatch(alloc::format!(
                "{} assignments for {} variables",
                gs.len(),
                self.layout.vars
            )));
        }
        let layout = gs[0].layout;
        for g in gs {
            if !same_algebra(&g.algebra, &self.algebra) {
                return Err(Error::AlgebraMismatch);
            }
            if g.arity != self.arity {
                return Err(Error::ArityMismatch { expected: self.arity, found: g.arity });
            }
            if g.layout != layout {
                return Err(Error::ShapeMismatch("assignments differ in shape".into()));
            }
        }
        Ok(layout)
    }

    fn max_exponent(&self, var: usize) -> u32 {
        self.nonzero_indices().map(|i| self.layout.exps(i)[var]).max().unwrap_or(0)
    }

    /// `f(g_0, ..., g_{v-1})` on the raw grids, ignoring precision.
    pub(crate) fn substitute_raw(&self, gs: &[Series], layout: Layout) -> Vec<Terms> {
        let (alg, arity) = (&*self.algebra, self.arity);
        let mut powers: Vec<Vec<Vec<Terms>>> = Vec::with_capacity(gs.len());
        for (i, g) in gs.iter().enumerate() {
            let top = self.max_exponent(i);
            let mut one = vec![Terms::zero(); layout.len()];
            one[0] = Terms::unit(Rational::one());
            let mut list = vec![one];
            for _ in 0..top {
                let next = mul_raw(alg, arity, layout, list.last().expect("nonempty"), &g.coeffs);
                if next.iter().all(Terms::is_zero) {
                    break;
                }
                list.push(next);
            }
            powers.push(list);
        }
        self.horner(0, [0; MAX_VARS], &powers, layout)
    }

    fn horner(
        &self,
        var: usize,
        mut prefix: [u32; MAX_VARS],
        powers: &[Vec<Vec<Terms>>],
        layout: Layout,
    ) -> Vec<Terms> {
        let (alg, arity) = (&*self.algebra, self.arity);
        let used: u32 = prefix.iter().sum();
        let reach = powers[var]
            .len()
            .min((self.layout.order.saturating_sub(used) + 1) as usize);
        if var + 1 == self.layout.vars {
            let mut scaled: Vec<(&Terms, &[Terms])> = Vec::new();
            for (a, pw) in powers[var][..reach].iter().enumerate() {
                prefix[var] = a as u32;
                let c = &self.coeffs[self.layout.index(&prefix[..self.layout.vars])];
                if !c.is_zero() {
                    scaled.push((c, pw));
                }
            }
            let mut acc = KeyAccumulator::new(alg, arity);
            let mut out = vec![Terms::zero(); layout.len()];
            for (k, slot) in out.iter_mut().enumerate() {
                let mut any = false;
                for (c, pw) in &scaled {
                    if !pw[k].is_zero() {
                        c.mul_acc(&pw[k], alg, &mut acc);
                        any = true;
                    }
                }
                if any {
                    *slot = acc.take();
                }
            }
            return out;
        }
        let mut inners = Vec::new();
        for a in 0..reach {
            prefix[var] = a as u32;
            let inner = self.horner(var + 1, prefix, powers, layout);
            if !inner.iter().all(Terms::is_zero) {
                inners.push((a, inner));
            }
        }
        let pairs: Vec<(&[Terms], &[Terms])> =
            inners.iter().map(|(a, inner)| (&powers[var][*a][..], &inner[..])).collect();
        sum_of_products(alg, arity, layout, &pairs)
    }

    /// Substitutes `gs[i]` for variable `i`. The assignments share a shape,
    /// which becomes the shape of the result. Their constant terms must have
    /// zero full counit; they need not vanish, in which case the exact order
    /// drops by the number of constant factors a nonzero product can hold.
    pub fn substitute(&self, gs: &[Series]) -> Result<Series, Error> {
        let layout = self.check_assignments(gs)?;
        let mut loss: i64 = 0;
        for g in gs {
            if !g.coeffs[0].unit_coeff().is_zero() {
                return Err(Error::NonNilpotentConstantTerm);
            }
            loss += g.constant_factor_bound().ok_or(Error::NonNilpotentConstantTerm)? as i64;
        }
        let coeffs = self.substitute_raw(gs, layout);
        let order = layout.order as i64;

        let used: Vec<usize> =
            (0..self.layout.vars).filter(|&i| self.max_exponent(i) > 0).collect();
        let g_limit = used.iter().map(|&i| gs[i].exact_limit()).min().unwrap_or(i64::MAX);
        let precision = match self.precision {
            Precision::Complete if used.iter().all(|&i| gs[i].precision.is_complete()) => {
                let top = self
                    .nonzero_indices()
                    .map(|i| {
                        let e = self.layout.exps(i);
                        used.iter().map(|&v| e[v] as i64 * gs[v].max_total().max(0)).sum::<i64>()
                    })
                    .max()
                    .unwrap_or(0);
                if top <= order {
                    Precision::Complete
                } else {
                    Precision::Through(order)
                }
            }
            Precision::Complete => Precision::Through(g_limit.min(order)),
            Precision::Through(e) => {
                let all = gs.iter().map(Series::exact_limit).min().unwrap_or(i64::MAX);
                Precision::Through((e - loss).min(all).min(order))
            }
        };
        Ok(Series::from_raw(self.algebra.clone(), self.arity, layout, precision, coeffs))
    }

    /// Compositional inverse of a one-variable series with zero constant
    /// term and linear coefficient of full counit 1.
    pub fn comp_inverse(&self) -> Result<Series, Error> {
        if self.layout.vars != 1 {
            return Err(Error::ShapeMismatch("compositional inverse needs one variable".into()));
        }
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstantTerm);
        }
        let (alg, arity, layout) = (&*self.algebra, self.arity, self.layout);
        if layout.order == 0 {
            return Ok(Series::from_raw(
                self.algebra.clone(),
                arity,
                layout,
                self.precision,
                vec![Terms::zero()],
            ));
        }
        // Lagrange inversion: with f = x/φ, the inverse has
        // [x^n] h = [x^(n-1)] φ^n / n.
        let n = layout.order as usize;
        let mut b = self.coeffs[1..].to_vec();
        b.push(Terms::zero());
        let b = Series::from_raw(self.algebra.clone(), arity, layout, Precision::Complete, b);
        let phi = b.mul_inverse()?.coeffs;
        let mut h = vec![Terms::zero(); layout.len()];
        let mut power = phi.clone();
        h[1] = power[0].clone();
        for k in 2..=n {
            power = mul_raw(alg, arity, layout, &power, &phi);
            h[k] = power[k - 1].scale(&Rational::new(1, k as i64));
        }
        let precision = match self.precision {
            Precision::Complete if self.max_total() <= 1 => Precision::Complete,
            p => Precision::Through(p.bound(layout.order)),
        };
        Ok(Series::from_raw(self.algebra.clone(), arity, layout, precision, h))
    }
}
