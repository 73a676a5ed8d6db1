use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use super::algebra::{HopfAlgebra, Monomial};
use super::terms::{Key, Terms, MAX_ARITY, UNIT_KEY};
use crate::error::Error;
use crate::rational::Rational;

/// Structure map applied in one tensor slot.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SlotMap {
    Identity,
    /// Δ: raises the arity by one.
    Coproduct,
    /// ε: lowers the arity by one.
    Counit,
    Antipode,
}

/// Element of H^⊗k for k ∈ {1, 2, 3}.
#[derive(Clone)]
pub struct TensorElement {
    algebra: Arc<HopfAlgebra>,
    arity: usize,
    pub(crate) terms: Terms,
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity
            && self.terms == other.terms
            && same_algebra(&self.algebra, &other.algebra)
    }
}

pub(crate) fn same_algebra(a: &Arc<HopfAlgebra>, b: &Arc<HopfAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn check_arity(arity: usize) -> Result<(), Error> {
    if (1..=MAX_ARITY).contains(&arity) {
        Ok(())
    } else {
        Err(Error::ArityMismatch { expected: MAX_ARITY, found: arity })
    }
}

impl TensorElement {
    pub(crate) fn from_terms(algebra: Arc<HopfAlgebra>, arity: usize, terms: Terms) -> Self {
        TensorElement { algebra, arity, terms }
    }

    pub fn zero(algebra: &Arc<HopfAlgebra>, arity: usize) -> Result<Self, Error> {
        check_arity(arity)?;
        Ok(TensorElement::from_terms(algebra.clone(), arity, Terms::zero()))
    }

    /// `scale · 1⊗...⊗1`.
    pub fn unit(algebra: &Arc<HopfAlgebra>, arity: usize, scale: Rational) -> Result<Self, Error> {
        check_arity(arity)?;
        Ok(TensorElement::from_terms(algebra.clone(), arity, Terms::unit(scale)))
    }

    /// Builds an element from `(monomials, coefficient)` pairs; every term
    /// must list exactly `arity` monomials. Terms above the degree bound are
    /// dropped.
    pub fn from_monomials(
        algebra: &Arc<HopfAlgebra>,
        arity: usize,
        terms: impl IntoIterator<Item = (Vec<Monomial>, Rational)>,
    ) -> Result<Self, Error> {
        check_arity(arity)?;
        let mut raw = Vec::new();
        for (monos, c) in terms {
            if monos.len() != arity {
                return Err(Error::ArityMismatch { expected: arity, found: monos.len() });
            }
            let deg: u32 = monos.iter().map(|m| algebra.monomial_degree(m)).sum();
            if deg > algebra.degree_bound() {
                continue;
            }
            let mut key = UNIT_KEY;
            for (s, m) in monos.iter().enumerate() {
                key[s] = algebra.index_of(m)?;
            }
            raw.push((key, c));
        }
        Ok(TensorElement::from_terms(algebra.clone(), arity, Terms::from_unsorted(raw)))
    }

    pub fn algebra(&self) -> &Arc<HopfAlgebra> {
        &self.algebra
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_zero()
    }

    /// Terms as `(monomials, coefficient)` in storage order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<&Monomial>, &Rational)> + '_ {
        self.terms.0.iter().map(move |(k, c)| {
            let monos = k[..self.arity].iter().map(|&i| self.algebra.monomial_at(i)).collect();
            (monos, c)
        })
    }

    pub fn coeff(&self, monomials: &[Monomial]) -> Result<Rational, Error> {
        if monomials.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: monomials.len() });
        }
        let mut key = UNIT_KEY;
        for (s, m) in monomials.iter().enumerate() {
            key[s] = match self.algebra.index_of(m) {
                Ok(i) => i,
                Err(Error::DegreeOverflow { .. }) => return Ok(Rational::zero()),
                Err(e) => return Err(e),
            };
        }
        Ok(self.terms.coeff(&key))
    }

    /// Image under ε⊗...⊗ε.
    pub fn full_counit(&self) -> Rational {
        let mut total = Rational::zero();
        for (k, c) in &self.terms.0 {
            let mut v = c.clone();
            for &i in &k[..self.arity] {
                v *= self.algebra.counit_of(i);
            }
            total += &v;
        }
        total
    }

    /// Largest total degree of a term, 0 for zero.
    pub fn max_degree(&self) -> u32 {
        self.terms
            .0
            .iter()
            .map(|(k, _)| Terms::key_degree(&self.algebra, k))
            .max()
            .unwrap_or(0)
    }

    fn check_compatible(&self, other: &TensorElement) -> Result<(), Error> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: other.arity });
        }
        Ok(())
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement, Error> {
        self.check_compatible(other)?;
        Ok(self.with_terms(self.terms.add(&other.terms)))
    }

    pub fn sub(&self, other: &TensorElement) -> Result<TensorElement, Error> {
        self.check_compatible(other)?;
        Ok(self.with_terms(self.terms.sub(&other.terms)))
    }

    pub fn neg(&self) -> TensorElement {
        self.with_terms(self.terms.neg())
    }

    pub fn scale(&self, r: &Rational) -> TensorElement {
        self.with_terms(self.terms.scale(r))
    }

    /// Slot-wise product, truncated by total degree.
    pub fn mul(&self, other: &TensorElement) -> Result<TensorElement, Error> {
        Ok(self.mul_tracked(other)?.0)
    }

    /// As [`mul`](Self::mul), also reporting whether any term was dropped by
    /// the degree bound.
    pub fn mul_tracked(&self, other: &TensorElement) -> Result<(TensorElement, bool), Error> {
        self.check_compatible(other)?;
        let (terms, truncated) = self.terms.mul(&other.terms, &self.algebra, self.arity);
        Ok((self.with_terms(terms), truncated))
    }

    pub fn pow(&self, n: u32) -> TensorElement {
        let mut acc = self.with_terms(Terms::unit(Rational::one()));
        for _ in 0..n {
            if acc.is_zero() {
                break;
            }
            acc = acc.mul(self).expect("same algebra and arity");
        }
        acc
    }

    /// Applies `map` in `slot` and the identity everywhere else.
    pub fn apply_slot(&self, slot: usize, map: SlotMap) -> Result<TensorElement, Error> {
        if slot >= self.arity {
            return Err(Error::ArityMismatch { expected: slot + 1, found: self.arity });
        }
        let alg = &self.algebra;
        Ok(match map {
            SlotMap::Identity => self.clone(),
            SlotMap::Coproduct => {
                if self.arity + 1 > MAX_ARITY {
                    return Err(Error::ArityMismatch { expected: MAX_ARITY - 1, found: self.arity });
                }
                TensorElement::from_terms(
                    alg.clone(),
                    self.arity + 1,
                    self.terms.apply_coproduct(alg, self.arity, slot),
                )
            }
            SlotMap::Counit => {
                if self.arity < 2 {
                    return Err(Error::ArityMismatch { expected: 2, found: self.arity });
                }
                TensorElement::from_terms(
                    alg.clone(),
                    self.arity - 1,
                    self.terms.apply_counit(alg, self.arity, slot),
                )
            }
            SlotMap::Antipode => self.with_terms(self.terms.apply_antipode(alg, slot)),
        })
    }

    /// Multiplies slots `slot` and `slot + 1` via μ.
    pub fn contract_mul(&self, slot: usize) -> Result<TensorElement, Error> {
        if self.arity < 2 || slot + 1 >= self.arity {
            return Err(Error::ArityMismatch { expected: slot + 2, found: self.arity });
        }
        Ok(TensorElement::from_terms(
            self.algebra.clone(),
            self.arity - 1,
            self.terms.contract(&self.algebra, self.arity, slot),
        ))
    }

    /// Places slot `i` into slot `slots[i]` of an element of arity
    /// `target_arity`; unassigned slots hold 1. `slots` must be strictly
    /// increasing.
    pub fn embed(&self, target_arity: usize, slots: &[usize]) -> Result<TensorElement, Error> {
        check_arity(target_arity)?;
        if slots.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: slots.len() });
        }
        if slots.windows(2).any(|w| w[0] >= w[1]) || slots.iter().any(|&s| s >= target_arity) {
            return Err(Error::ArityMismatch { expected: target_arity, found: self.arity });
        }
        Ok(TensorElement::from_terms(self.algebra.clone(), target_arity, self.terms.embed(slots)))
    }

    /// Slot permutation: slot `i` of the result is slot `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Result<TensorElement, Error> {
        let mut seen = [false; MAX_ARITY];
        if perm.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: perm.len() });
        }
        for &p in perm {
            if p >= self.arity || seen[p] {
                return Err(Error::ArityMismatch { expected: self.arity, found: p + 1 });
            }
            seen[p] = true;
        }
        Ok(self.with_terms(self.terms.permute(perm)))
    }

    /// Swaps the two slots of an arity-2 element.
    pub fn transpose(&self) -> Result<TensorElement, Error> {
        if self.arity != 2 {
            return Err(Error::ArityMismatch { expected: 2, found: self.arity });
        }
        self.permute(&[1, 0])
    }

    /// Smallest `n` with `self^n = 0`, if the element is nilpotent under the
    /// degree bound (i.e. its full counit vanishes).
    pub fn nilpotency_index(&self) -> Option<u32> {
        if !self.full_counit().is_zero() {
            return None;
        }
        let mut n = 1;
        let mut p = self.clone();
        while !p.is_zero() {
            p = p.mul(self).expect("same algebra and arity");
            n += 1;
        }
        Some(n)
    }

    fn with_terms(&self, terms: Terms) -> TensorElement {
        TensorElement::from_terms(self.algebra.clone(), self.arity, terms)
    }

    pub(crate) fn raw_terms(&self) -> &Terms {
        &self.terms
    }

    /// Terms in display order: by total degree, then leftmost slots
    /// carrying the larger monomial first.
    pub(crate) fn display_order(&self) -> Vec<&(Key, Rational)> {
        let mut v: Vec<&(Key, Rational)> = self.terms.0.iter().collect();
        v.sort_by(|a, b| {
            let da = Terms::key_degree(&self.algebra, &a.0);
            let db = Terms::key_degree(&self.algebra, &b.0);
            da.cmp(&db).then_with(|| b.0.cmp(&a.0))
        });
        v
    }

    pub(crate) fn fmt_key(&self, key: &Key, f: &mut dyn fmt::Write) -> fmt::Result {
        for s in 0..self.arity {
            if s > 0 {
                f.write_str("⊗")?;
            }
            self.algebra.fmt_monomial(key[s], f)?;
        }
        Ok(())
    }

    /// True when the element is `r · 1⊗...⊗1`.
    pub(crate) fn as_scalar(&self) -> Option<Rational> {
        match self.terms.0.as_slice() {
            [] => Some(Rational::zero()),
            [(k, c)] if *k == UNIT_KEY => Some(c.clone()),
            _ => None,
        }
    }

    /// Writes the element as a coefficient: scalars bare, a single term as
    /// `2(t⊗t)` (or `2t` in arity 1), sums in parentheses. Returns the
    /// sign that was pulled out front.
    pub(crate) fn fmt_coefficient(&self, out: &mut String, with_unit: bool) -> bool {
        use core::fmt::Write;
        if let Some(r) = self.as_scalar() {
            let neg = r.is_negative();
            let a = r.abs();
            if with_unit || !a.is_one() {
                let _ = write!(out, "{a}");
            }
            return neg;
        }
        if let [(k, c)] = self.terms.0.as_slice() {
            let neg = c.is_negative();
            let a = c.abs();
            if !a.is_one() {
                let _ = write!(out, "{a}");
            }
            if self.arity > 1 {
                out.push('(');
                let _ = self.fmt_key(k, out);
                out.push(')');
            } else {
                let _ = self.fmt_key(k, out);
            }
            return neg;
        }
        out.push('(');
        let _ = write!(out, "{self}");
        out.push(')');
        false
    }
}

impl fmt::Display for TensorElement {
    /// `t^3⊗1 + 3t^2⊗t + ...`; single terms of arity > 1 with a
    /// coefficient other than ±1 print as `2(t⊗t⊗t)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        if self.terms.len() == 1 && !self.terms.0[0].1.abs().is_one() {
            let mut s = String::new();
            let neg = self.fmt_coefficient(&mut s, true);
            if neg {
                f.write_str("-")?;
            }
            return f.write_str(&s);
        }
        for (i, (k, c)) in self.display_order().into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let mut s = String::new();
            self.fmt_key(k, &mut s)?;
            if a.is_one() {
                f.write_str(&s)?;
            } else if s == "1" {
                write!(f, "{a}")?;
            } else if s.starts_with('1') {
                write!(f, "{a}·{s}")?;
            } else {
                write!(f, "{a}{s}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorElement<{}>({})", self.arity, self)
    }
}

/// Element of H (a tensor element of arity 1).
#[derive(Clone, PartialEq)]
pub struct HopfElement(TensorElement);

impl HopfElement {
    pub fn zero(algebra: &Arc<HopfAlgebra>) -> Self {
        HopfElement(TensorElement::from_terms(algebra.clone(), 1, Terms::zero()))
    }

    pub fn one(algebra: &Arc<HopfAlgebra>) -> Self {
        HopfElement::scalar(algebra, Rational::one())
    }

    pub fn scalar(algebra: &Arc<HopfAlgebra>, r: Rational) -> Self {
        HopfElement(TensorElement::from_terms(algebra.clone(), 1, Terms::unit(r)))
    }

    pub fn monomial(algebra: &Arc<HopfAlgebra>, m: &Monomial, coeff: Rational) -> Result<Self, Error> {
        Ok(HopfElement(TensorElement::from_monomials(
            algebra,
            1,
            [(alloc::vec![m.clone()], coeff)],
        )?))
    }

    /// The generator with the given name, if present.
    pub fn generator(algebra: &Arc<HopfAlgebra>, name: &str) -> Option<Self> {
        let g = algebra.generator_position(name)?;
        let m = Monomial::generator(algebra.generators().len(), g);
        HopfElement::monomial(algebra, &m, Rational::one()).ok()
    }

    pub fn from_tensor(t: TensorElement) -> Result<Self, Error> {
        if t.arity() != 1 {
            return Err(Error::ArityMismatch { expected: 1, found: t.arity() });
        }
        Ok(HopfElement(t))
    }

    pub fn as_tensor(&self) -> &TensorElement {
        &self.0
    }

    pub fn into_tensor(self) -> TensorElement {
        self.0
    }

    pub fn algebra(&self) -> &Arc<HopfAlgebra> {
        self.0.algebra()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, other: &HopfElement) -> Result<HopfElement, Error> {
        Ok(HopfElement(self.0.add(&other.0)?))
    }

    pub fn sub(&self, other: &HopfElement) -> Result<HopfElement, Error> {
        Ok(HopfElement(self.0.sub(&other.0)?))
    }

    pub fn scale(&self, r: &Rational) -> HopfElement {
        HopfElement(self.0.scale(r))
    }

    /// Product in H, truncated above the degree bound.
    pub fn mul(&self, other: &HopfElement) -> Result<HopfElement, Error> {
        Ok(HopfElement(self.0.mul(&other.0)?))
    }

    pub fn mul_tracked(&self, other: &HopfElement) -> Result<(HopfElement, bool), Error> {
        let (t, truncated) = self.0.mul_tracked(&other.0)?;
        Ok((HopfElement(t), truncated))
    }

    pub fn pow(&self, n: u32) -> HopfElement {
        HopfElement(self.0.pow(n))
    }

    /// Δ.
    pub fn comul(&self) -> TensorElement {
        self.0.apply_slot(0, SlotMap::Coproduct).expect("arity 1")
    }

    /// ε, the coefficient of 1.
    pub fn counit(&self) -> Rational {
        self.0.full_counit()
    }

    /// S.
    pub fn antipode(&self) -> HopfElement {
        HopfElement(self.0.apply_slot(0, SlotMap::Antipode).expect("arity 1"))
    }
}

impl fmt::Display for HopfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for HopfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HopfElement({})", self.0)
    }
}
