use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

use crate::formal_group::{AxiomReport, CocycleReport};
use crate::series::Series;

#[derive(Debug, Clone, PartialEq)]
#[non_exhaustive]
pub enum Error {
    /// Malformed algebra description (e.g. a coproduct that is not counital).
    Spec(String),
    /// A generator or structure constant does not fit under the degree bound.
    DegreeOverflow { degree: u32, bound: u32 },
    /// Operands live over different Hopf algebras.
    AlgebraMismatch,
    ArityMismatch { expected: usize, found: usize },
    /// Series operands disagree in arity, variable count or order.
    ShapeMismatch(String),
    Parse(String),
    /// A substituted series has a constant term with nonzero full counit.
    NonNilpotentConstantTerm,
    /// The constant (or linear) coefficient to invert has full counit != 1.
    NonInvertibleConstantTerm,
    NonZeroConstantTerm,
    /// The exact order reachable from the inputs is below what was asked for.
    TruncationInsufficient { required: i64, available: i64 },
    /// A difference expected to be constant has a surviving nonconstant term.
    ResidualNonConstant(Box<Series>),
    CocycleViolation(Box<CocycleReport>),
    AxiomViolation(Box<AxiomReport>),
    /// The inverse-element equation has no solution through `order`.
    NoInverse { order: i64 },
    /// Coboundaries are only defined on the augmentation ideal.
    NotAugmented,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Spec(msg) => write!(f, "invalid algebra description: {msg}"),
            Error::DegreeOverflow { degree, bound } => {
                write!(f, "degree {degree} exceeds the degree bound {bound}")
            }
            Error::AlgebraMismatch => f.write_str("operands belong to different Hopf algebras"),
            Error::ArityMismatch { expected, found } => {
                write!(f, "arity mismatch: expected {expected}, found {found}")
            }
            Error::ShapeMismatch(msg) => write!(f, "series shape mismatch: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::NonNilpotentConstantTerm => {
                f.write_str("substituted series has a constant term with nonzero counit")
            }
            Error::NonInvertibleConstantTerm => {
                f.write_str("leading coefficient does not have counit 1")
            }
            Error::NonZeroConstantTerm => f.write_str("series has a nonzero constant term"),
            Error::TruncationInsufficient { required, available } => write!(
                f,
                "truncation insufficient: exact through order {available}, need {required}"
            ),
            Error::ResidualNonConstant(_) => {
                f.write_str("difference series has a nonconstant residual")
            }
            Error::CocycleViolation(_) => f.write_str("element is not a normalized 2-cocycle"),
            Error::AxiomViolation(_) => f.write_str("series violates the formal group axioms"),
            Error::NoInverse { order } => {
                write!(f, "inverse element equation is inconsistent at order {order}")
            }
            Error::NotAugmented => f.write_str("element does not lie in the augmentation ideal"),
        }
    }
}

impl core::error::Error for Error {}
