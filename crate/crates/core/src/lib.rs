//! Signed graph homomorphisms: target constructions, an exact homomorphism
//! solver, exact maximum average degree, and machine checks of forbidding
//! counts, reducible configurations and discharging arguments.

pub mod autom;
pub mod claims;
pub mod density;
pub mod discharge;
pub mod error;
pub mod field;
pub mod flow;
pub mod forbid;
pub mod hom;
pub mod mask;
pub mod par;
pub mod random;
pub mod reduce;
pub mod signed;
pub mod target;

pub use error::{Error, Result};
pub use mask::ColorMask;
pub use signed::{Balance, ClosedWalk, Sign, SignedGraph, SwitchSet};
pub use target::TargetGraph;

/// Exact fraction used for densities and discharging weights.
pub type Rational = num_rational::Ratio<i64>;

/// Shorthand for building a [`Rational`].
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}
