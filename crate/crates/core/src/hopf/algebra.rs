use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use super::terms::{Key, Terms, UNIT_KEY};
use crate::error::Error;
use crate::rational::Rational;

/// Exponent vector over the generators of a polynomial Hopf algebra.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(generators: usize) -> Self {
        Monomial(vec![0; generators])
    }

    /// The `i`-th generator of an algebra with `generators` generators.
    pub fn generator(generators: usize, i: usize) -> Self {
        let mut e = vec![0; generators];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator { name: name.into(), degree }
    }
}

/// Coproduct of one generator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CoproductSpec {
    /// Δg = g⊗1 + 1⊗g.
    Primitive,
    /// Explicit terms `coeff · left ⊗ right`.
    Terms(Vec<(Monomial, Monomial, Rational)>),
}

/// Description of a graded connected commutative Hopf algebra: a polynomial
/// algebra on graded generators, truncated above `degree_bound`, with the
/// coproduct of every generator given explicitly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraSpec {
    pub generators: Vec<Generator>,
    pub degree_bound: u32,
    /// One entry per generator, in generator order.
    pub coproduct: Vec<CoproductSpec>,
}

impl AlgebraSpec {
    /// The algebra with basis {1}.
    pub fn trivial(degree_bound: u32) -> Self {
        AlgebraSpec { generators: Vec::new(), degree_bound, coproduct: Vec::new() }
    }

    /// Polynomial algebra on primitive generators.
    pub fn primitive(generators: &[(&str, u32)], degree_bound: u32) -> Self {
        AlgebraSpec {
            generators: generators.iter().map(|&(n, d)| Generator::new(n, d)).collect(),
            degree_bound,
            coproduct: vec![CoproductSpec::Primitive; generators.len()],
        }
    }

    /// Named algebras: `trivial`, `qt1` and `qt2` (ℚ[t] primitive with
    /// deg t = 1, 2), `qtu` (ℚ[t,u] primitive, deg t = 1, deg u = 2) and
    /// `binomial` (ℚ[t,u], deg t = 1, deg u = 2, Δu = u⊗1 + t⊗t + 1⊗u).
    pub fn builtin(name: &str, degree_bound: u32) -> Option<Self> {
        let spec = match name {
            "trivial" => AlgebraSpec::trivial(degree_bound),
            "qt1" => AlgebraSpec::primitive(&[("t", 1)], degree_bound),
            "qt2" => AlgebraSpec::primitive(&[("t", 2)], degree_bound),
            "qtu" => AlgebraSpec::primitive(&[("t", 1), ("u", 2)], degree_bound),
            "binomial" => {
                let m = |e: [u32; 2]| Monomial::new(e.to_vec());
                AlgebraSpec {
                    generators: vec![Generator::new("t", 1), Generator::new("u", 2)],
                    degree_bound,
                    coproduct: vec![
                        CoproductSpec::Primitive,
                        CoproductSpec::Terms(vec![
                            (m([0, 1]), m([0, 0]), Rational::one()),
                            (m([1, 0]), m([1, 0]), Rational::one()),
                            (m([0, 0]), m([0, 1]), Rational::one()),
                        ]),
                    ],
                }
            }
            _ => return None,
        };
        Some(spec)
    }

    pub fn build(&self) -> Result<HopfAlgebra, Error> {
        HopfAlgebra::build(self, true)
    }

    /// Builds without checking that the generator coproducts are counital.
    /// Useful for exercising `verify_hopf_axioms` on broken tables.
    pub fn build_unchecked(&self) -> Result<HopfAlgebra, Error> {
        HopfAlgebra::build(self, false)
    }
}

/// Replacement of a single structure constant, used to check that
/// `verify_hopf_axioms` catches corrupted tables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Mutation {
    /// Sets the coefficient of `left ⊗ right` in Δ(`monomial`).
    Coproduct { monomial: Monomial, left: Monomial, right: Monomial, coeff: Rational },
    /// Sets the coefficient of `term` in S(`monomial`).
    Antipode { monomial: Monomial, term: Monomial, coeff: Rational },
    /// Sets ε(`monomial`).
    Counit { monomial: Monomial, value: Rational },
    /// Redirects the product `left · right` (both orders) to `result`, or to
    /// zero when `result` is `None`.
    Product { left: Monomial, right: Monomial, result: Option<Monomial> },
}

/// Names accepted by [`AlgebraSpec::builtin`].
pub const BUILTIN_ALGEBRAS: [&str; 5] = ["trivial", "qt1", "qt2", "qtu", "binomial"];

const NO_PRODUCT: u32 = u32::MAX;

/// A graded connected commutative Hopf algebra over ℚ, truncated above a
/// degree bound, stored as structure constants on its monomial basis.
///
/// Tensor powers are truncated by total degree, so every structure map is a
/// map of graded quotients and the truncated arithmetic stays exact.
#[derive(Clone, PartialEq, Eq)]
pub struct HopfAlgebra {
    spec: AlgebraSpec,
    basis: Vec<Monomial>,
    degrees: Vec<u32>,
    index: BTreeMap<Monomial, u32>,
    mul_table: Vec<u32>,
    coproduct: Vec<Terms>,
    counit: Vec<Rational>,
    antipode: Vec<Terms>,
}

impl fmt::Debug for HopfAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HopfAlgebra")
            .field("generators", &self.spec.generators)
            .field("degree_bound", &self.spec.degree_bound)
            .field("basis_len", &self.basis.len())
            .finish()
    }
}

impl HopfAlgebra {
    fn build(spec: &AlgebraSpec, check_counit: bool) -> Result<HopfAlgebra, Error> {
        let ngens = spec.generators.len();
        let bound = spec.degree_bound;
        if spec.coproduct.len() != ngens {
            return Err(Error::Spec(format!(
                "{} generators but {} coproduct entries",
                ngens,
                spec.coproduct.len()
            )));
        }
        for (i, g) in spec.generators.iter().enumerate() {
            if g.degree == 0 {
                return Err(Error::Spec(format!("generator `{}` has degree 0", g.name)));
            }
            if g.degree > bound {
                return Err(Error::DegreeOverflow { degree: g.degree, bound });
            }
            if g.name.is_empty() || g.name == "1" || !is_identifier(&g.name) {
                return Err(Error::Spec(format!("invalid generator name `{}`", g.name)));
            }
            if spec.generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::Spec(format!("duplicate generator `{}`", g.name)));
            }
        }

        let gdeg: Vec<u32> = spec.generators.iter().map(|g| g.degree).collect();
        let mdeg = |m: &Monomial| -> u32 { m.0.iter().zip(&gdeg).map(|(e, d)| e * d).sum() };

        // Basis in graded-lex order: by degree, then earlier generators first.
        let mut basis = Vec::new();
        enumerate_monomials(&gdeg, bound, &mut vec![0; ngens], 0, 0, &mut basis);
        basis.sort_by(|a, b| mdeg(a).cmp(&mdeg(b)).then_with(|| b.cmp(a)));
        let degrees: Vec<u32> = basis.iter().map(&mdeg).collect();
        let index: BTreeMap<Monomial, u32> =
            basis.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();

        let n = basis.len();
        let mut mul_table = vec![NO_PRODUCT; n * n];
        for i in 0..n {
            for j in 0..n {
                if degrees[i] + degrees[j] <= bound {
                    mul_table[i * n + j] = index[&basis[i].mul(&basis[j])];
                }
            }
        }
        let counit: Vec<Rational> = (0..n)
            .map(|i| if i == 0 { Rational::one() } else { Rational::zero() })
            .collect();

        let mut alg = HopfAlgebra {
            spec: spec.clone(),
            basis,
            degrees,
            index,
            mul_table,
            coproduct: Vec::new(),
            counit,
            antipode: Vec::new(),
        };

        // Generator coproducts.
        let mut gen_coproduct = Vec::with_capacity(ngens);
        for (i, (g, cs)) in spec.generators.iter().zip(&spec.coproduct).enumerate() {
            let gen_key = alg.gen_index(i);
            let terms = match cs {
                CoproductSpec::Primitive => Terms::from_unsorted(vec![
                    ([gen_key, 0, 0], Rational::one()),
                    ([0, gen_key, 0], Rational::one()),
                ]),
                CoproductSpec::Terms(list) => {
                    let mut raw = Vec::with_capacity(list.len());
                    for (l, r, c) in list {
                        for m in [l, r] {
                            if m.0.len() != ngens {
                                return Err(Error::Spec(format!(
                                    "monomial in coproduct of `{}` has {} exponents, expected {}",
                                    g.name,
                                    m.0.len(),
                                    ngens
                                )));
                            }
                        }
                        if mdeg(l) + mdeg(r) != g.degree {
                            return Err(Error::Spec(format!(
                                "coproduct of `{}` is not homogeneous of degree {}",
                                g.name, g.degree
                            )));
                        }
                        raw.push(([alg.index[l], alg.index[r], 0], c.clone()));
                    }
                    Terms::from_unsorted(raw)
                }
            };
            if check_counit {
                let left = terms.apply_counit(&alg, 2, 0);
                let right = terms.apply_counit(&alg, 2, 1);
                let expected = Terms::single([gen_key, 0, 0], Rational::one());
                if left != expected || right != expected {
                    return Err(Error::Spec(format!("coproduct of `{}` is not counital", g.name)));
                }
            }
            gen_coproduct.push(terms);
        }

        // Δ on the whole basis, extended multiplicatively. Degrees are
        // preserved, so nothing is lost to truncation.
        let mut coproduct: Vec<Terms> = Vec::with_capacity(n);
        for m in 0..n {
            let mono = alg.basis[m].clone();
            let value = match mono.0.iter().position(|&e| e > 0) {
                None => Terms::single(UNIT_KEY, Rational::one()),
                Some(g) => {
                    let mut rest = mono.clone();
                    rest.0[g] -= 1;
                    let r = alg.index[&rest] as usize;
                    coproduct[r].mul(&gen_coproduct[g], &alg, 2).0
                }
            };
            coproduct.push(value);
        }
        alg.coproduct = coproduct;

        // Antipode on generators from μ(S⊗id)Δg = 0, in order of degree so
        // that every S(a) needed on the right-hand side is already known.
        let mut order: Vec<usize> = (0..ngens).collect();
        order.sort_by_key(|&i| gdeg[i]);
        let mut gen_antipode: Vec<Option<Terms>> = vec![None; ngens];
        alg.antipode = vec![Terms::zero(); n];
        alg.antipode[0] = Terms::single(UNIT_KEY, Rational::one());
        for &g in &order {
            let gk = alg.gen_index(g);
            let mut lead = Rational::zero();
            let mut rest = Terms::zero();
            for (k, c) in &gen_coproduct[g].0 {
                if k[0] == gk && k[1] == 0 {
                    lead = c.clone();
                    continue;
                }
                let s = alg.antipode_from_generators(k[0], &gen_antipode);
                let b = Terms::single([k[1], 0, 0], c.clone());
                rest.add_assign(&s.mul(&b, &alg, 1).0);
            }
            let value = match lead.recip() {
                Some(inv) => rest.neg().scale(&inv),
                None => Terms::zero(),
            };
            gen_antipode[g] = Some(value);
        }
        for m in 1..n {
            alg.antipode[m] = alg.antipode_from_generators(m as u32, &gen_antipode);
        }
        Ok(alg)
    }

    /// S(m) as a product of the generator antipodes.
    fn antipode_from_generators(&self, m: u32, gen_antipode: &[Option<Terms>]) -> Terms {
        let mut acc = Terms::single(UNIT_KEY, Rational::one());
        for (g, &e) in self.basis[m as usize].0.iter().enumerate() {
            for _ in 0..e {
                // Only reachable as None for non-counital tables.
                let Some(s) = gen_antipode[g].as_ref() else {
                    return Terms::zero();
                };
                acc = acc.mul(s, self, 1).0;
            }
        }
        acc
    }

    fn gen_index(&self, g: usize) -> u32 {
        self.index[&Monomial::generator(self.spec.generators.len(), g)]
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn generators(&self) -> &[Generator] {
        &self.spec.generators
    }

    pub fn degree_bound(&self) -> u32 {
        self.spec.degree_bound
    }

    /// Basis monomials in graded-lex order; the first is always 1.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.0.iter().zip(&self.spec.generators).map(|(e, g)| e * g.degree).sum()
    }

    /// Smallest positive degree of a basis monomial.
    pub fn min_positive_degree(&self) -> Option<u32> {
        self.degrees.get(1).copied()
    }

    pub(crate) fn index_of(&self, m: &Monomial) -> Result<u32, Error> {
        if m.0.len() != self.spec.generators.len() {
            return Err(Error::Spec(format!(
                "monomial has {} exponents, algebra has {} generators",
                m.0.len(),
                self.spec.generators.len()
            )));
        }
        self.index.get(m).copied().ok_or(Error::DegreeOverflow {
            degree: self.monomial_degree(m),
            bound: self.spec.degree_bound,
        })
    }

    pub(crate) fn monomial_at(&self, i: u32) -> &Monomial {
        &self.basis[i as usize]
    }

    pub(crate) fn degree_of(&self, i: u32) -> u32 {
        self.degrees[i as usize]
    }

    pub(crate) fn mul_index(&self, a: u32, b: u32) -> Option<u32> {
        let v = self.mul_table[a as usize * self.basis.len() + b as usize];
        (v != NO_PRODUCT).then_some(v)
    }

    pub(crate) fn coproduct_terms(&self, i: u32) -> &Terms {
        &self.coproduct[i as usize]
    }

    pub(crate) fn counit_of(&self, i: u32) -> &Rational {
        &self.counit[i as usize]
    }

    pub(crate) fn antipode_terms(&self, i: u32) -> &Terms {
        &self.antipode[i as usize]
    }

    /// Returns a copy with one structure constant replaced.
    pub fn mutated(&self, mutation: &Mutation) -> Result<HopfAlgebra, Error> {
        let mut alg = self.clone();
        match mutation {
            Mutation::Coproduct { monomial, left, right, coeff } => {
                let m = alg.index_of(monomial)? as usize;
                let key: Key = [alg.index_of(left)?, alg.index_of(right)?, 0];
                let current = alg.coproduct[m].coeff(&key);
                let delta = Terms::single(key, coeff - &current);
                alg.coproduct[m].add_assign(&delta);
            }
            Mutation::Antipode { monomial, term, coeff } => {
                let m = alg.index_of(monomial)? as usize;
                let key: Key = [alg.index_of(term)?, 0, 0];
                let current = alg.antipode[m].coeff(&key);
                let delta = Terms::single(key, coeff - &current);
                alg.antipode[m].add_assign(&delta);
            }
            Mutation::Counit { monomial, value } => {
                let m = alg.index_of(monomial)? as usize;
                alg.counit[m] = value.clone();
            }
            Mutation::Product { left, right, result } => {
                let (a, b) = (alg.index_of(left)? as usize, alg.index_of(right)? as usize);
                let r = match result {
                    Some(m) => alg.index_of(m)?,
                    None => NO_PRODUCT,
                };
                let n = alg.basis.len();
                alg.mul_table[a * n + b] = r;
                alg.mul_table[b * n + a] = r;
            }
        }
        Ok(alg)
    }

    /// Writes a basis monomial as `t^2·u`, or `1`.
    pub(crate) fn fmt_monomial(&self, i: u32, f: &mut dyn fmt::Write) -> fmt::Result {
        let m = &self.basis[i as usize];
        if m.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (g, &e) in self.spec.generators.iter().zip(&m.0) {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("·")?;
            }
            first = false;
            f.write_str(&g.name)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }

    pub fn monomial_to_string(&self, m: &Monomial) -> Result<String, Error> {
        let i = self.index_of(m)?;
        let mut s = String::new();
        self.fmt_monomial(i, &mut s).expect("writing to a String");
        Ok(s)
    }

    pub fn generator_position(&self, name: &str) -> Option<usize> {
        self.spec.generators.iter().position(|g| g.name == name)
    }

}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

fn enumerate_monomials(
    gdeg: &[u32],
    bound: u32,
    current: &mut Vec<u32>,
    pos: usize,
    deg: u32,
    out: &mut Vec<Monomial>,
) {
    if pos == gdeg.len() {
        out.push(Monomial(current.clone()));
        return;
    }
    let mut e = 0;
    while deg + e * gdeg[pos] <= bound {
        current[pos] = e;
        enumerate_monomials(gdeg, bound, current, pos + 1, deg + e * gdeg[pos], out);
        e += 1;
    }
    current[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_basis_is_graded_lex() {
        let alg = AlgebraSpec::primitive(&[("t", 2)], 6).build().unwrap();
        let exps: Vec<u32> = alg.basis().iter().map(|m| m.exponents()[0]).collect();
        assert_eq!(exps, vec![0, 1, 2, 3]);

        let alg = AlgebraSpec::primitive(&[("t", 1), ("u", 1)], 2).build().unwrap();
        let names: Vec<String> =
            alg.basis().iter().map(|m| alg.monomial_to_string(m).unwrap()).collect();
        assert_eq!(names, ["1", "t", "u", "t^2", "t·u", "u^2"]);
    }

    #[test]
    fn rejects_bad_specs() {
        let mut spec = AlgebraSpec::primitive(&[("t", 0)], 4);
        assert!(matches!(spec.build(), Err(Error::Spec(_))));
        spec.generators[0].degree = 5;
        assert!(matches!(spec.build(), Err(Error::DegreeOverflow { degree: 5, bound: 4 })));

        // Δt = t⊗1 only: not counital.
        let t = Monomial::new(vec![1]);
        let one = Monomial::new(vec![0]);
        let spec = AlgebraSpec {
            generators: vec![Generator::new("t", 1)],
            degree_bound: 4,
            coproduct: vec![CoproductSpec::Terms(vec![(t.clone(), one.clone(), Rational::one())])],
        };
        assert!(matches!(spec.build(), Err(Error::Spec(_))));
        assert!(spec.build_unchecked().is_ok());

        // Inhomogeneous coproduct.
        let spec = AlgebraSpec {
            generators: vec![Generator::new("t", 1)],
            degree_bound: 4,
            coproduct: vec![CoproductSpec::Terms(vec![
                (t.clone(), one.clone(), Rational::one()),
                (one.clone(), t.clone(), Rational::one()),
                (t.clone(), t.clone(), Rational::one()),
            ])],
        };
        assert!(matches!(spec.build(), Err(Error::Spec(_))));
    }

    #[test]
    fn truncated_products() {
        let alg = AlgebraSpec::primitive(&[("t", 2)], 6).build().unwrap();
        assert_eq!(alg.mul_index(1, 1), Some(2));
        assert_eq!(alg.mul_index(1, 2), Some(3));
        assert_eq!(alg.mul_index(2, 2), None);
    }
}
