//! Trace ideals of exterior powers of Kähler differentials for
//! weighted-graded quotient rings over ℚ.

pub mod algebra;
pub mod constructions;
pub mod difftrace;
pub mod error;
pub mod groebner;
pub mod modsyz;
pub mod order;
pub mod poly;
pub mod simplicial;

pub use algebra::{Assumption, Flags, GradedAlgebra};
pub use error::{Error, Result};
pub use groebner::{IdealHandle, MonomialOrder};
pub use modsyz::{KernelGenerators, ModulePresentation, PolyMatrix};
pub use poly::{Monomial, Polynomial, RingSignature};
