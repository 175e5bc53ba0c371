//! Exact computer algebra for generalized Weyl algebras `k[z; λ, η, φ]`:
//! normal-form arithmetic, periodic Hochschild complexes, cocycle
//! contractions, star products and `H_0` with twisted coefficients.

pub mod complexes;
pub mod deform;
pub mod error;
pub mod gwa;
pub mod homology;
pub mod hochschild;
pub mod linalg;
pub mod percomplex;
pub mod scalars;

pub use error::{Error, Result};
pub use gwa::{
    Automorphism, BimoduleSpec, Gen, Gwa, GwaElement, GwaParams, LegMap, Mono, TensorElement,
};
pub use scalars::{BezoutPair, Poly, Rational};
pub use complexes::{CElement, PElement, TotElement};
pub use deform::{build_star, Kind, StarProduct, TruncatedElement};
pub use hochschild::{Cochain2, Cochain3};
pub use homology::{H0Prediction, H0Report, TruncatedSubspace};
pub use percomplex::PerCochain;
