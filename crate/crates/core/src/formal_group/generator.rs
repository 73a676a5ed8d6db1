use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::Rng;

use super::cocycle::coboundary;
use crate::error::Error;
use crate::hopf::{HopfAlgebra, HopfElement, Monomial, TensorElement};
use crate::rational::Rational;
use crate::series::{Precision, Series};

/// Random test instances: logarithms `g`, cocycles `c` and symmetric
/// counit-zero candidates that may or may not be cocycles.
///
/// Cocycles are drawn from the span of coboundaries `dh` and of the
/// symmetrized products `p⊗q + q⊗p` of primitive generators. With an
/// `x_weight` w, the variable is given degree w: the coefficient of
/// `x^(k+1)` in `g` is homogeneous of degree `k·w` and `c` of degree `w`.
#[derive(Clone, Debug)]
pub struct InstanceGenerator {
    algebra: Arc<HopfAlgebra>,
    order: u32,
    x_weight: Option<u32>,
}

impl InstanceGenerator {
    pub fn new(algebra: &Arc<HopfAlgebra>, order: u32) -> Self {
        InstanceGenerator { algebra: algebra.clone(), order, x_weight: None }
    }

    pub fn with_x_weight(mut self, weight: u32) -> Self {
        self.x_weight = Some(weight);
        self
    }

    fn rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
        let mut num = rng.gen_range(-4i64..=4);
        if num == 0 {
            num = 1;
        }
        Rational::new(num, rng.gen_range(1i64..=3))
    }

    fn basis_of_degree(&self, pred: impl Fn(u32) -> bool) -> Vec<Monomial> {
        self.algebra
            .basis()
            .iter()
            .filter(|m| pred(self.algebra.monomial_degree(m)))
            .cloned()
            .collect()
    }

    fn element(&self, m: &Monomial, r: Rational) -> HopfElement {
        HopfElement::monomial(&self.algebra, m, r).expect("basis monomial")
    }

    /// A random combination of at most two monomials from `pool`.
    fn combination<R: Rng + ?Sized>(&self, rng: &mut R, pool: &[Monomial]) -> HopfElement {
        let mut acc = HopfElement::zero(&self.algebra);
        if pool.is_empty() {
            return acc;
        }
        for _ in 0..rng.gen_range(1..=2) {
            let m = &pool[rng.gen_range(0..pool.len())];
            acc = acc.add(&self.element(m, Self::rational(rng))).expect("same algebra");
        }
        acc
    }

    /// A complete polynomial `g = b0·x + b1·x² + ...` with ε(b0) = 1.
    pub fn logarithm<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Series, Error> {
        let low = self.algebra.min_positive_degree().unwrap_or(1);
        let free_pool = self.basis_of_degree(|d| d <= 2 * low);
        let positive: Vec<Monomial> =
            free_pool.iter().filter(|m| !m.is_one()).cloned().collect();
        let mut terms = Vec::new();
        for k in 0..self.order {
            let b = match (self.x_weight, k) {
                (None, 0) => {
                    let one = HopfElement::one(&self.algebra);
                    if rng.gen_bool(0.5) {
                        one.add(&self.combination(rng, &positive))?
                    } else {
                        one
                    }
                }
                (None, _) if rng.gen_bool(0.4) => continue,
                (None, _) => self.combination(rng, &free_pool),
                (Some(_), 0) => HopfElement::one(&self.algebra),
                (Some(w), _) => {
                    let pool = self.basis_of_degree(|d| d == k * w);
                    if pool.is_empty() || rng.gen_bool(0.3) {
                        continue;
                    }
                    self.combination(rng, &pool)
                }
            };
            terms.push((alloc::vec![k + 1], b.into_tensor()));
        }
        Series::from_terms(&self.algebra, 1, 1, self.order, Precision::Complete, terms)
    }

    fn primitive_generators(&self) -> Vec<HopfElement> {
        let n = self.algebra.generators().len();
        (0..n)
            .map(|i| self.element(&Monomial::generator(n, i), Rational::one()))
            .filter(|p| {
                let t = p.as_tensor();
                let prim = t.embed(2, &[0]).and_then(|a| a.add(&t.embed(2, &[1])?));
                prim.map(|e| e == p.comul()).unwrap_or(false)
            })
            .collect()
    }

    /// Symmetric building blocks of the cocycle span, of degree `w` when a
    /// weight is set.
    fn cocycle_blocks(&self) -> Vec<TensorElement> {
        let bound = self.algebra.degree_bound();
        let mut blocks = Vec::new();
        let hs = match self.x_weight {
            Some(w) => self.basis_of_degree(|d| d == w),
            None => self.basis_of_degree(|d| d > 0 && d <= bound),
        };
        for m in hs {
            let d = coboundary(&self.element(&m, Rational::one())).expect("positive degree");
            if !d.is_zero() && d.transpose().map(|t| t == d).unwrap_or(false) {
                blocks.push(d);
            }
        }
        let prims = self.primitive_generators();
        for (i, p) in prims.iter().enumerate() {
            for q in &prims[i..] {
                let pq = p.as_tensor().embed(2, &[0]).and_then(|a| a.mul(&q.as_tensor().embed(2, &[1])?));
                let Ok(pq) = pq else { continue };
                let Ok(sym) = pq.add(&pq.transpose().expect("arity 2")) else { continue };
                if sym.is_zero() {
                    continue;
                }
                if let Some(w) = self.x_weight {
                    if sym.max_degree() != w {
                        continue;
                    }
                }
                blocks.push(sym);
            }
        }
        blocks
    }

    /// A random element of the cocycle span (possibly zero).
    pub fn cocycle<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<TensorElement, Error> {
        let mut c = TensorElement::zero(&self.algebra, 2)?;
        let blocks = self.cocycle_blocks();
        if blocks.is_empty() || rng.gen_bool(0.2) {
            return Ok(c);
        }
        for _ in 0..rng.gen_range(1..=2) {
            let b = &blocks[rng.gen_range(0..blocks.len())];
            c = c.add(&b.scale(&Self::rational(rng)))?;
        }
        Ok(c)
    }

    pub fn pair<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<(Series, TensorElement), Error> {
        Ok((self.logarithm(rng)?, self.cocycle(rng)?))
    }

    /// A symmetric element with vanishing one-sided counits: a cocycle plus,
    /// half of the time, a random symmetric perturbation `m⊗m' + m'⊗m`.
    pub fn candidate<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<TensorElement, Error> {
        let mut c = self.cocycle(rng)?;
        let positive = self.basis_of_degree(|d| d > 0);
        if positive.is_empty() || rng.gen_bool(0.5) {
            return Ok(c);
        }
        let a = &positive[rng.gen_range(0..positive.len())];
        let b = &positive[rng.gen_range(0..positive.len())];
        let r = Self::rational(rng);
        let one = self.element(a, r).as_tensor().embed(2, &[0])?;
        let two = self.element(b, Rational::one()).as_tensor().embed(2, &[1])?;
        let ab = one.mul(&two)?;
        c = c.add(&ab)?.add(&ab.transpose()?)?;
        Ok(c)
    }

    pub fn algebra(&self) -> &Arc<HopfAlgebra> {
        &self.algebra
    }
}
