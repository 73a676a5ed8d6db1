use alloc::vec;

use super::{Precision, Series, MAX_VARS};
use crate::error::Error;
use crate::hopf::terms::Terms;
use crate::rational::Rational;

impl Series {
    fn check_var(&self, var: usize) -> Result<(), Error> {
        if var >= self.layout.vars {
            return Err(Error::ShapeMismatch(alloc::format!(
                "variable {var} of {}",
                self.layout.vars
            )));
        }
        Ok(())
    }

    /// Formal partial derivative in variable `var`.
    pub fn derivative(&self, var: usize) -> Result<Series, Error> {
        self.check_var(var)?;
        let layout = self.layout;
        let stride = layout.stride(var);
        let mut coeffs = vec![Terms::zero(); layout.len()];
        for i in self.nonzero_indices() {
            let e = layout.exps(i)[var];
            if e == 0 {
                continue;
            }
            coeffs[i - stride] = self.coeffs[i].scale(&Rational::from(e as i64));
        }
        let precision = match self.precision {
            Precision::Complete => Precision::Complete,
            Precision::Through(n) => Precision::Through(n - 1),
        };
        Ok(Series::from_raw(self.algebra.clone(), self.arity, layout, precision, coeffs))
    }

    /// Formal antiderivative in variable `var` with zero constant of
    /// integration. Terms pushed past order N are dropped.
    pub fn integrate(&self, var: usize) -> Result<Series, Error> {
        self.check_var(var)?;
        let layout = self.layout;
        let stride = layout.stride(var);
        let mut coeffs = vec![Terms::zero(); layout.len()];
        let mut dropped = false;
        for i in self.nonzero_indices() {
            let e: [u32; MAX_VARS] = layout.exps(i);
            if e.iter().sum::<u32>() >= layout.order {
                dropped = true;
                continue;
            }
            let r = Rational::new(1, e[var] as i64 + 1);
            coeffs[i + stride] = self.coeffs[i].scale(&r);
        }
        let order = layout.order as i64;
        let precision = match self.precision {
            Precision::Complete if !dropped => Precision::Complete,
            Precision::Complete => Precision::Through(order),
            Precision::Through(n) => Precision::Through((n + 1).min(order)),
        };
        Ok(Series::from_raw(self.algebra.clone(), self.arity, layout, precision, coeffs))
    }
}
