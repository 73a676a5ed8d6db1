use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::FormalGroupLaw;
use crate::error::Error;
use crate::hopf::SlotMap;
use crate::series::{Agreement, Series, SlotOp};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Axiom {
    /// (id⊗ε̃)F = X.
    UnitRight,
    /// (ε̃⊗id)F = Y.
    UnitLeft,
    /// Swapping the variables and the tensor slots fixes F.
    Symmetry,
    /// ((id⊗Δ)F)(X, F(Y,Z)) = ((Δ⊗id)F)(F(X,Y), Z).
    Associativity,
}

impl Axiom {
    pub fn name(&self) -> &'static str {
        match self {
            Axiom::UnitRight => "unit-right",
            Axiom::UnitLeft => "unit-left",
            Axiom::Symmetry => "symmetry",
            Axiom::Associativity => "associativity",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomDefect {
    pub axiom: Axiom,
    /// `lhs - rhs`, cut at the certified order.
    pub defect: Series,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport {
    /// Highest order through which every identity was compared exactly.
    pub certified_through: i64,
    pub defects: Vec<AxiomDefect>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.defects.is_empty()
    }

    pub fn defect(&self, axiom: Axiom) -> Option<&Series> {
        self.defects.iter().find(|d| d.axiom == axiom).map(|d| &d.defect)
    }
}

/// ε̃ on one side of a two-variable series: variable `var` is set to 0 and
/// ε is applied in tensor slot `var`. The other variable becomes `x`.
pub fn epsilon_tilde(s: &Series, var: usize) -> Result<Series, Error> {
    if s.vars() != 2 || var > 1 {
        return Err(Error::ShapeMismatch("ε̃ acts on two-variable series".into()));
    }
    let (alg, k, n) = (s.algebra(), s.arity(), s.order());
    let keep = Series::variable(alg, k, 1, n, 0)?;
    let zero = Series::zero(alg, k, 1, n)?;
    let gs = if var == 1 { [keep, zero] } else { [zero, keep] };
    s.substitute(&gs)?.map_slot(var, SlotMap::Counit)
}

/// Checks the axioms through the law's nominal order.
pub fn check_axioms(law: &FormalGroupLaw) -> Result<AxiomReport, Error> {
    check_axioms_through(law, law.order() as i64)
}

/// Checks unit, symmetry and associativity. Any defect found within the
/// exactly known orders is reported; if there is none but the identities
/// could not be compared through `required`, the result is
/// `TruncationInsufficient`.
pub fn check_axioms_through(law: &FormalGroupLaw, required: i64) -> Result<AxiomReport, Error> {
    let f = law.series();
    let (alg, n) = (f.algebra(), f.order());
    let mut defects = Vec::new();
    let mut certified = n as i64;
    let mut record = |axiom, agreement: Agreement| {
        certified = certified.min(agreement.through);
        let defect = agreement.defect.truncated_to(agreement.through.min(required));
        if !defect.is_zero() {
            defects.push(AxiomDefect { axiom, defect });
        }
    };

    let x = Series::variable(alg, 1, 1, n, 0)?;
    for (axiom, var) in [(Axiom::UnitRight, 1), (Axiom::UnitLeft, 0)] {
        record(axiom, epsilon_tilde(f, var)?.compare(&x)?);
    }

    let swapped = f.permute_vars(&[1, 0])?.map_coefficients(&[SlotOp::Permute(vec![1, 0])])?;
    record(Axiom::Symmetry, f.compare(&swapped)?);

    // Without a nilpotent constant term the substitutions below are not
    // defined; the unit defect already records the failure.
    if f.constant_term().full_counit().is_zero() {
        let depth = required.clamp(0, n as i64) as u32;
        record(Axiom::Associativity, associativity(f, depth)?);
    }

    if defects.is_empty() && certified < required {
        return Err(Error::TruncationInsufficient { required, available: certified });
    }
    Ok(AxiomReport { certified_through: certified.min(required), defects })
}

/// Compares both sides at order `depth`. The outer `F` keeps up to `K`
/// guard orders past `depth` so that they absorb the nilpotent constant
/// term, `K` being the number of its factors with a nonzero product.
fn associativity(f: &Series, depth: u32) -> Result<Agreement, Error> {
    let (alg, n) = (f.algebra(), depth);
    let inner = f.with_order(depth);
    let guard = f.constant_factor_bound().unwrap_or(0);
    let f = &f.with_order(f.order().min(depth + guard));
    let lift = |vars: [usize; 2]| -> Result<Series, Error> {
        inner
            .embed_vars(3, &vars)?
            .map_coefficients(&[SlotOp::Embed { arity: 3, slots: vars.to_vec() }])
    };
    let f_xy = lift([0, 1])?;
    let f_yz = lift([1, 2])?;
    let x = Series::variable(alg, 3, 3, n, 0)?;
    let z = Series::variable(alg, 3, 3, n, 2)?;

    let lhs = f
        .map_slot(1, SlotMap::Coproduct)?
        .substitute(&[x, f_yz])?;
    let rhs = f
        .map_slot(0, SlotMap::Coproduct)?
        .substitute(&[f_xy, z])?;
    lhs.compare(&rhs)
}
