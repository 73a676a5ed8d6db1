#![allow(dead_code)]

use std::sync::Arc;

use fgl_core::formal_group::FormalGroupLaw;
use fgl_core::hopf::{AlgebraSpec, HopfAlgebra, TensorElement};
use fgl_core::parse::{parse_element, parse_series};
use fgl_core::series::Series;
use fgl_core::Rational;

pub fn algebra(name: &str, bound: u32) -> Arc<HopfAlgebra> {
    Arc::new(AlgebraSpec::builtin(name, bound).unwrap().build().unwrap())
}

/// ℚ[t] with primitive t of the given degree.
pub fn qt(degree: u32, bound: u32) -> Arc<HopfAlgebra> {
    Arc::new(AlgebraSpec::primitive(&[("t", degree)], bound).build().unwrap())
}

pub fn el(alg: &Arc<HopfAlgebra>, arity: usize, src: &str) -> TensorElement {
    parse_element(alg, arity, src).unwrap_or_else(|e| panic!("{src}: {e}"))
}

pub fn names(vars: usize) -> &'static [&'static str] {
    match vars {
        1 => &["x"],
        2 => &["X", "Y"],
        _ => &["X", "Y", "Z"],
    }
}

pub fn ser(alg: &Arc<HopfAlgebra>, arity: usize, vars: usize, order: u32, src: &str) -> Series {
    parse_series(alg, arity, names(vars), order, src).unwrap_or_else(|e| panic!("{src}: {e}"))
}

pub fn law(alg: &Arc<HopfAlgebra>, order: u32, src: &str) -> FormalGroupLaw {
    FormalGroupLaw::new(ser(alg, 2, 2, order, src)).unwrap()
}

/// The additive law `c + X + Y`.
pub fn lemma_form(c: &TensorElement, order: u32) -> FormalGroupLaw {
    let alg = c.algebra();
    let x = Series::variable(alg, 2, 2, order, 0).unwrap();
    let y = Series::variable(alg, 2, 2, order, 1).unwrap();
    let f = Series::constant(c, 2, order).unwrap().add(&x).unwrap().add(&y).unwrap();
    FormalGroupLaw::new(f).unwrap()
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Asserts agreement through the common exact order, which must reach `through`.
pub fn assert_agree(a: &Series, b: &Series, through: i64) {
    let agr = a.compare(b).unwrap();
    assert!(agr.through >= through, "only exact through {} (< {through})", agr.through);
    assert!(agr.holds(), "defect {}\n  lhs {a}\n  rhs {b}", agr.defect);
}

pub mod random {
    use std::sync::Arc;

    use fgl_core::hopf::{HopfAlgebra, Monomial, TensorElement};
    use fgl_core::series::{Precision, Series};
    use fgl_core::Rational;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    pub fn rational<R: Rng>(rng: &mut R) -> Rational {
        Rational::new(rng.gen_range(-5i64..=5), rng.gen_range(1i64..=4))
    }

    fn monomial<R: Rng>(rng: &mut R, alg: &HopfAlgebra, positive: bool) -> Monomial {
        let basis = alg.basis();
        let start = usize::from(positive && basis.len() > 1);
        basis[rng.gen_range(start..basis.len())].clone()
    }

    /// A sum of up to `terms` random basis tensors. With `augmented` every
    /// term has positive total degree.
    pub fn element<R: Rng>(
        rng: &mut R,
        alg: &Arc<HopfAlgebra>,
        arity: usize,
        terms: usize,
        augmented: bool,
    ) -> TensorElement {
        let mut out = Vec::new();
        for _ in 0..rng.gen_range(0..=terms) {
            let pos = if augmented { rng.gen_range(0..arity) } else { arity };
            let key: Vec<Monomial> =
                (0..arity).map(|s| monomial(rng, alg, s == pos)).collect();
            if augmented && key.iter().all(|m| m.is_one()) {
                continue;
            }
            out.push((key, rational(rng)));
        }
        TensorElement::from_monomials(alg, arity, out).unwrap()
    }

    #[derive(Clone, Copy, PartialEq)]
    pub enum Constant {
        Zero,
        Nilpotent,
        One,
    }

    /// A complete polynomial series with the requested kind of constant term
    /// and, when `linear_unit` is set, coefficient `1 + nilpotent` on each
    /// variable's linear term.
    pub fn series<R: Rng>(
        rng: &mut R,
        alg: &Arc<HopfAlgebra>,
        arity: usize,
        vars: usize,
        order: u32,
        constant: Constant,
        linear_unit: bool,
    ) -> Series {
        let mut terms = Vec::new();
        let one = TensorElement::unit(alg, arity, Rational::one()).unwrap();
        match constant {
            Constant::Zero => {}
            Constant::Nilpotent => terms.push((vec![0; vars], element(rng, alg, arity, 2, true))),
            Constant::One => terms.push((
                vec![0; vars],
                one.add(&element(rng, alg, arity, 2, true)).unwrap(),
            )),
        }
        for v in 0..vars {
            let mut e = vec![0; vars];
            e[v] = 1;
            if linear_unit {
                terms.push((e, one.add(&element(rng, alg, arity, 1, true)).unwrap()));
            } else {
                terms.push((e, element(rng, alg, arity, 2, false)));
            }
        }
        for _ in 0..rng.gen_range(0..=4) {
            let mut e = vec![0; vars];
            let total = rng.gen_range(2..=order.max(2));
            for _ in 0..total {
                e[rng.gen_range(0..vars)] += 1;
            }
            terms.push((e, element(rng, alg, arity, 2, false)));
        }
        Series::from_terms(alg, arity, vars, order, Precision::Complete, terms).unwrap()
    }
}

/// Classical one-dimensional formal group laws as plain bivariate rational
/// polynomials, independent of the library's series code.
pub mod oracle {
    use fgl_core::series::Series;
    use fgl_core::Rational;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    /// `p[i][j]` is the coefficient of `x^i y^j`, truncated at total degree `n`.
    pub type Poly = Vec<Vec<BigRational>>;

    pub fn zero(n: usize) -> Poly {
        vec![vec![BigRational::zero(); n + 1]; n + 1]
    }

    pub fn big(r: &Rational) -> BigRational {
        BigRational::new(r.numer(), r.denom())
    }

    pub fn small(r: &BigRational) -> Rational {
        Rational::from_big(r.numer().clone(), r.denom().clone()).unwrap()
    }

    fn mul(a: &Poly, b: &Poly, n: usize) -> Poly {
        let mut out = zero(n);
        for i in 0..=n {
            for j in 0..=n - i {
                if a[i][j].is_zero() {
                    continue;
                }
                for k in 0..=n - i - j {
                    for l in 0..=n - i - j - k {
                        out[i + k][j + l] += &a[i][j] * &b[k][l];
                    }
                }
            }
        }
        out
    }

    /// `Σ coeffs[k] p^k` (`coeffs[0]` is ignored; `p` has no constant term).
    fn compose(coeffs: &[BigRational], p: &Poly, n: usize) -> Poly {
        let mut out = zero(n);
        let mut power = zero(n);
        power[0][0] = BigRational::one();
        for c in coeffs.iter().skip(1) {
            power = mul(&power, p, n);
            for i in 0..=n {
                for j in 0..=n - i {
                    out[i][j] += c * &power[i][j];
                }
            }
        }
        out
    }

    /// A classical law from a series whose coefficients are scalars
    /// (counits are taken in every slot).
    pub fn from_series(f: &Series) -> Poly {
        let n = f.order() as usize;
        let mut p = zero(n);
        for (e, c) in f.terms() {
            p[e[0] as usize][e[1] as usize] = big(&c.full_counit());
        }
        p
    }

    /// Solves `g(F(x,y)) = g(x) + g(y)` with `g = x + a_2 x^2 + ...` one
    /// coefficient at a time: the `x^(k-1) y` coefficient of `a_k F^k` is
    /// `k a_k`, and nothing else of order `k` in `g(x) + g(y)` is mixed.
    /// Returns `[0, 1, a_2, ..., a_n]`, or `None` if the remaining mixed
    /// coefficients do not vanish (F is not a group law through `n`).
    pub fn logarithm(f: &Poly, n: usize) -> Option<Vec<BigRational>> {
        let mut g = vec![BigRational::zero(); n + 1];
        if n >= 1 {
            g[1] = BigRational::one();
        }
        for k in 2..=n {
            let lhs = compose(&g[..k], f, n);
            g[k] = -lhs[k - 1][1].clone() / BigRational::from_integer(BigInt::from(k as u64));
        }
        let lhs = compose(&g, f, n);
        for i in 0..=n {
            for j in 0..=n - i {
                let mut want = BigRational::zero();
                if j == 0 {
                    want += &g[i];
                }
                if i == 0 {
                    want += &g[j];
                }
                if lhs[i][j] != want {
                    return None;
                }
            }
        }
        Some(g)
    }

    /// Coefficients `[0, a_1, ..., a_n]` of a one-variable series.
    pub fn coefficients(g: &Series) -> Vec<BigRational> {
        let n = g.order() as usize;
        let mut out = vec![BigRational::zero(); n + 1];
        for (e, c) in g.terms() {
            out[e[0] as usize] = big(&c.full_counit());
        }
        out
    }
}
