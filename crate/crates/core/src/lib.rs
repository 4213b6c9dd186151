//! Spectra of q-deformed Laplacians on compact quantum groups `K_q`.
//!
//! The crate works entirely with the numerical shadows of the quantum group:
//! root data and exact lattice arithmetic ([`cartan`]), weight systems of
//! irreducible representations ([`weights`]), eigenvalue formulas for quantum
//! Casimir functionals and Laplacians ([`spectra`]), the combinatorial
//! classification of bicovariant first-order calculi ([`fodc`]) and the heat
//! semigroup on Peter-Weyl blocks ([`heat`]).
//!
//! Floating-point routines are generic over [`num_traits::Float`]; routines
//! that can be exact are generic over [`Scalar`], with [`Rational`] giving
//! exact answers.

pub mod cartan;
pub mod error;
pub mod fodc;
pub mod heat;
pub mod lattice;
pub mod scalar;
pub mod spectra;
pub mod weights;

pub use cartan::{CenterElement, CenterGroup, Family, RootSystem, SimpleType, Weight};
pub use error::{Error, ErrorKind, Result};
pub use scalar::{Rational, Scalar};
pub use spectra::{GeneralFunctionalSpec, LaplacianSpec, QParam, SpectrumRow};
pub use weights::WeightSystem;

/// Laplacian with exact rational coefficients.
pub type ExactLaplacianSpec = LaplacianSpec<Rational>;
/// Laplacian with double-precision coefficients.
pub type FloatLaplacianSpec = LaplacianSpec<f64>;
pub type Q64 = QParam<f64>;
pub type Q32 = QParam<f32>;
pub type FunctionalSpec64 = GeneralFunctionalSpec<f64>;
pub type SpectrumRow64 = SpectrumRow<f64>;
pub type Complex64 = num_complex::Complex<f64>;
