//! Exact quantum cohomology of small homogeneous spaces and complete
//! intersections, with virtual Tevelev degree computations on top.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals,
//! Laurent polynomials in the quantum parameter `q` are sparse maps, and
//! eigenvalue data is kept in the smallest field that holds it (rational,
//! quadratic surd, or fixed-precision decimal with a declared digit count).

pub mod bigdec;
pub mod ci;
pub mod closedform;
pub mod cylinder;
pub mod engine;
pub mod error;
pub mod formulas;
pub mod grassmann;
pub mod laurent;
pub mod lr;
pub mod matrix;
pub mod partition;
pub mod polyroots;
pub mod rational;
pub mod ring;
pub mod selfcheck;
pub mod spectral;
pub mod surd;

pub use error::Error;
pub use laurent::LaurentPoly;
pub use partition::Partition;
pub use rational::Rat;
pub use ring::{BasisLabel, QHElement, Ring, RingDescriptor, RingKind};
