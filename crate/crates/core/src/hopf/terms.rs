//! Sparse storage for elements of tensor powers of the algebra.
//!
//! Every slot holds an index into the algebra's basis table (index 0 is the
//! unit monomial); unused slots of a `Key` are always 0. Terms are sorted by
//! key and never carry a zero coefficient.

use alloc::vec::Vec;

use super::algebra::HopfAlgebra;
use crate::rational::Rational;

pub(crate) const MAX_ARITY: usize = 3;

pub(crate) type Key = [u32; MAX_ARITY];

pub(crate) const UNIT_KEY: Key = [0; MAX_ARITY];

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub(crate) struct Terms(pub(crate) Vec<(Key, Rational)>);

impl Terms {
    pub(crate) fn zero() -> Self {
        Terms(Vec::new())
    }

    pub(crate) fn unit(scale: Rational) -> Self {
        if scale.is_zero() {
            Terms::zero()
        } else {
            Terms(alloc::vec![(UNIT_KEY, scale)])
        }
    }

    pub(crate) fn single(key: Key, coeff: Rational) -> Self {
        if coeff.is_zero() {
            Terms::zero()
        } else {
            Terms(alloc::vec![(key, coeff)])
        }
    }

    /// Sorts, merges duplicate keys and drops zeros.
    pub(crate) fn from_unsorted(mut raw: Vec<(Key, Rational)>) -> Self {
        if raw.len() <= 1 {
            raw.retain(|(_, c)| !c.is_zero());
            return Terms(raw);
        }
        raw.sort_unstable_by_key(|a| a.0);
        let mut out: Vec<(Key, Rational)> = Vec::with_capacity(raw.len());
        for (k, c) in raw {
            match out.last_mut() {
                Some((lk, lc)) if *lk == k => *lc += &c,
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((k, c));
                }
            }
        }
        if matches!(out.last(), Some((_, c)) if c.is_zero()) {
            out.pop();
        }
        Terms(out)
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn len(&self) -> usize {
        self.0.len()
    }

    pub(crate) fn coeff(&self, key: &Key) -> Rational {
        match self.0.binary_search_by(|(k, _)| k.cmp(key)) {
            Ok(i) => self.0[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Coefficient of 1 ⊗ ... ⊗ 1, i.e. the full counit of the element.
    pub(crate) fn unit_coeff(&self) -> Rational {
        match self.0.first() {
            Some((k, c)) if *k == UNIT_KEY => c.clone(),
            _ => Rational::zero(),
        }
    }


    pub(crate) fn add(&self, other: &Terms) -> Terms {
        self.merge(other, false)
    }

    pub(crate) fn sub(&self, other: &Terms) -> Terms {
        self.merge(other, true)
    }

    fn merge(&self, other: &Terms, negate: bool) -> Terms {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                core::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for (k, c) in &b[j..] {
            out.push((*k, if negate { -c } else { c.clone() }));
        }
        Terms(out)
    }

    pub(crate) fn add_assign(&mut self, other: &Terms) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = other.clone();
            return;
        }
        *self = self.add(other);
    }

    pub(crate) fn scale(&self, r: &Rational) -> Terms {
        if r.is_zero() {
            return Terms::zero();
        }
        Terms(self.0.iter().map(|(k, c)| (*k, c * r)).collect())
    }

    pub(crate) fn neg(&self) -> Terms {
        Terms(self.0.iter().map(|(k, c)| (*k, -c)).collect())
    }

    pub(crate) fn key_degree(alg: &HopfAlgebra, key: &Key) -> u32 {
        key.iter().map(|&i| alg.degree_of(i)).sum()
    }

    pub(crate) fn min_degree(&self, alg: &HopfAlgebra) -> u32 {
        self.0
            .iter()
            .map(|(k, _)| Terms::key_degree(alg, k))
            .min()
            .unwrap_or(u32::MAX)
    }

    /// Slot-wise product, dropping every term whose total degree across all
    /// slots exceeds the degree bound. The flag reports whether anything was
    /// dropped.
    pub(crate) fn mul(&self, other: &Terms, alg: &HopfAlgebra, arity: usize) -> (Terms, bool) {
        if self.is_zero() || other.is_zero() {
            return (Terms::zero(), false);
        }
        let mut raw = Vec::with_capacity(self.len() * other.len());
        let truncated = self.mul_into(other, alg, arity, &mut raw);
        (Terms::from_unsorted(raw), truncated)
    }

    /// Like [`Terms::mul`] but appends unmerged products to `out`.
    pub(crate) fn mul_into(
        &self,
        other: &Terms,
        alg: &HopfAlgebra,
        arity: usize,
        out: &mut Vec<(Key, Rational)>,
    ) -> bool {
        let bound = alg.degree_bound();
        let mut truncated = false;
        let other_deg: Vec<u32> = other.0.iter().map(|(k, _)| Terms::key_degree(alg, k)).collect();
        for (ka, ca) in &self.0 {
            let da = Terms::key_degree(alg, ka);
            for ((kb, cb), &db) in other.0.iter().zip(&other_deg) {
                if da + db > bound {
                    truncated = true;
                    continue;
                }
                let Some(key) = product_key(alg, arity, ka, kb) else { continue };
                out.push((key, ca * cb));
            }
        }
        truncated
    }

    /// Adds the degree-truncated product `self * other` into `acc`.
    pub(crate) fn mul_acc(&self, other: &Terms, alg: &HopfAlgebra, acc: &mut KeyAccumulator) {
        let bound = alg.degree_bound();
        let arity = acc.arity;
        let mut degrees = core::mem::take(&mut acc.degrees);
        degrees.clear();
        degrees.extend(other.0.iter().map(|(k, _)| Terms::key_degree(alg, k)));
        for (ka, ca) in &self.0 {
            let da = Terms::key_degree(alg, ka);
            for ((kb, cb), &db) in other.0.iter().zip(&degrees) {
                if da + db > bound {
                    continue;
                }
                let Some(key) = product_key(alg, arity, ka, kb) else { continue };
                acc.add(&key, ca * cb);
            }
        }
        acc.degrees = degrees;
    }

    /// Applies Δ in `slot`, producing an element of arity `arity + 1`.
    pub(crate) fn apply_coproduct(&self, alg: &HopfAlgebra, arity: usize, slot: usize) -> Terms {
        let mut raw = Vec::new();
        for (k, c) in &self.0 {
            for (dk, dc) in &alg.coproduct_terms(k[slot]).0 {
                let mut key = UNIT_KEY;
                key[..slot].copy_from_slice(&k[..slot]);
                key[slot] = dk[0];
                key[slot + 1] = dk[1];
                key[slot + 2..arity + 1].copy_from_slice(&k[slot + 1..arity]);
                raw.push((key, c * dc));
            }
        }
        Terms::from_unsorted(raw)
    }

    /// Applies ε in `slot`, producing an element of arity `arity - 1`.
    pub(crate) fn apply_counit(&self, alg: &HopfAlgebra, arity: usize, slot: usize) -> Terms {
        let mut raw = Vec::new();
        for (k, c) in &self.0 {
            let e = alg.counit_of(k[slot]);
            if e.is_zero() {
                continue;
            }
            let mut key = UNIT_KEY;
            key[..slot].copy_from_slice(&k[..slot]);
            key[slot..arity - 1].copy_from_slice(&k[slot + 1..arity]);
            raw.push((key, c * e));
        }
        Terms::from_unsorted(raw)
    }

    pub(crate) fn apply_antipode(&self, alg: &HopfAlgebra, slot: usize) -> Terms {
        let mut raw = Vec::new();
        for (k, c) in &self.0 {
            for (sk, sc) in &alg.antipode_terms(k[slot]).0 {
                let mut key = *k;
                key[slot] = sk[0];
                raw.push((key, c * sc));
            }
        }
        Terms::from_unsorted(raw)
    }

    /// Multiplies slots `slot` and `slot + 1` together.
    pub(crate) fn contract(&self, alg: &HopfAlgebra, arity: usize, slot: usize) -> Terms {
        let mut raw = Vec::new();
        for (k, c) in &self.0 {
            let Some(m) = alg.mul_index(k[slot], k[slot + 1]) else {
                continue;
            };
            let mut key = UNIT_KEY;
            key[..slot].copy_from_slice(&k[..slot]);
            key[slot] = m;
            key[slot + 1..arity - 1].copy_from_slice(&k[slot + 2..arity]);
            raw.push((key, c.clone()));
        }
        Terms::from_unsorted(raw)
    }

    /// Places slot `i` of each key into slot `positions[i]` of the target.
    pub(crate) fn embed(&self, positions: &[usize]) -> Terms {
        let raw = self
            .0
            .iter()
            .map(|(k, c)| {
                let mut key = UNIT_KEY;
                for (i, &p) in positions.iter().enumerate() {
                    key[p] = k[i];
                }
                (key, c.clone())
            })
            .collect();
        Terms::from_unsorted(raw)
    }

    /// Reorders slots: slot `i` of the result is slot `perm[i]` of the input.
    pub(crate) fn permute(&self, perm: &[usize]) -> Terms {
        let raw = self
            .0
            .iter()
            .map(|(k, c)| {
                let mut key = UNIT_KEY;
                for (i, &p) in perm.iter().enumerate() {
                    key[i] = k[p];
                }
                (key, c.clone())
            })
            .collect();
        Terms::from_unsorted(raw)
    }
}

/// Largest key space summed densely; bigger ones fall back to sorting.
const DENSE_LIMIT: usize = 1 << 18;

/// Sums terms of one arity into a single `Terms`, densely indexed by key
/// when the key space is small enough. Reusable after [`Self::take`].
pub(crate) struct KeyAccumulator {
    arity: usize,
    dim: usize,
    dense: Vec<Rational>,
    seen: Vec<bool>,
    touched: Vec<usize>,
    raw: Vec<(Key, Rational)>,
    degrees: Vec<u32>,
}

impl KeyAccumulator {
    pub(crate) fn new(alg: &HopfAlgebra, arity: usize) -> Self {
        let dim = alg.dimension();
        let space = dim.checked_pow(arity as u32).filter(|&n| n <= DENSE_LIMIT).unwrap_or(0);
        KeyAccumulator {
            arity,
            dim,
            dense: alloc::vec![Rational::zero(); space],
            seen: alloc::vec![false; space],
            touched: Vec::new(),
            raw: Vec::new(),
            degrees: Vec::new(),
        }
    }

    fn slot(&self, key: &Key) -> usize {
        key[..self.arity].iter().fold(0, |i, &k| i * self.dim + k as usize)
    }

    pub(crate) fn add(&mut self, key: &Key, c: Rational) {
        if self.dense.is_empty() {
            self.raw.push((*key, c));
            return;
        }
        let i = self.slot(key);
        if !self.seen[i] {
            self.seen[i] = true;
            self.touched.push(i);
            self.dense[i] = c;
        } else {
            self.dense[i] += &c;
        }
    }

    pub(crate) fn take(&mut self) -> Terms {
        if self.dense.is_empty() {
            return Terms::from_unsorted(core::mem::take(&mut self.raw));
        }
        // Dense indices order keys lexicographically, like `Terms`.
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.seen[i] = false;
            let c = core::mem::take(&mut self.dense[i]);
            if c.is_zero() {
                continue;
            }
            let mut key = UNIT_KEY;
            let mut rest = i;
            for s in (0..self.arity).rev() {
                key[s] = (rest % self.dim) as u32;
                rest /= self.dim;
            }
            out.push((key, c));
        }
        self.touched.clear();
        Terms(out)
    }
}

/// Slot-wise product of two keys; `None` when the table sends a slot to zero
/// (only possible for a mutated algebra).
fn product_key(alg: &HopfAlgebra, arity: usize, ka: &Key, kb: &Key) -> Option<Key> {
    let mut key = UNIT_KEY;
    for s in 0..arity {
        key[s] = alg.mul_index(ka[s], kb[s])?;
    }
    Some(key)
}
