//! Exact computer algebra for the double shuffle Lie algebra of a finite
//! abelian group Γ and the stabilizer of the harmonic coproduct.
//!
//! Coefficients are exact rationals throughout. The modules build on each
//! other in order: words and polynomials, the X-side algebra, the Y-side
//! algebra, the Ihara structures, degreewise linear algebra, and the
//! truncated group level.

pub mod error;
pub mod group;
pub mod ihara;
pub mod linalg;
pub mod modp;
pub mod poly;
pub mod random;
pub mod rational;
pub mod series;
pub mod solver;
pub mod suites;
pub mod word;
pub mod xalg;
pub mod yalg;

pub use error::{AlgebraError, Result};
pub use group::{GroupElement, GroupMorphism, GroupSpec};
pub use poly::{Poly, XPoly, XTensor2, YPoly, YTensor2};
pub use rational::Rational;
pub use word::{XLetter, XWord, YLetter, YWord};
