//! Graded connected commutative Hopf algebras over ℚ, their elements and
//! tensor powers.

mod algebra;
mod axioms;
mod tensor;
pub(crate) mod terms;

pub use algebra::{AlgebraSpec, BUILTIN_ALGEBRAS, CoproductSpec, Generator, HopfAlgebra, Monomial, Mutation};
pub use axioms::{basis_elements, verify_hopf_axioms, HopfAxiom, HopfFailure, HopfReport};
pub use tensor::{HopfElement, SlotMap, TensorElement};

pub(crate) use tensor::{check_arity, same_algebra};
