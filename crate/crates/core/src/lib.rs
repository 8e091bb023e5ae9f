//! Branched coverings of the sphere as permutation constellations, their
//! surgery and Hurwitz classes, exact rational maps over `ℚ(i)` and the
//! numerical side of the cubic family `f_t(z) = (1−t)z² + tz³`.

pub mod constellation;
pub mod dynamics;
pub mod hurwitz;
pub mod perm;
pub mod ratmap;
pub mod scalar;
pub mod surgery;

use num_complex::Complex;
use num_rational::BigRational;

pub use constellation::{Constellation, Passport};
pub use perm::{CycleType, Perm};

/// Gaussian rationals `ℚ(i)`.
pub type GaussRat = Complex<BigRational>;
pub type GaussPoly = ratmap::Poly<GaussRat>;
pub type GaussMap = ratmap::RationalMap<GaussRat>;
pub type GaussMobius = ratmap::Mobius<GaussRat>;
/// Maps with rational coefficients.
pub type QMap = ratmap::RationalMap<BigRational>;
pub type RenderConfig64 = dynamics::RenderConfig<f64>;
pub type RenderConfig32 = dynamics::RenderConfig<f32>;
