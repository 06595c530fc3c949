//! Exact computational toolkit for split reductive groups over number fields:
//! root systems and Weyl groups, integral Chevalley bases, the Chevalley
//! characteristic morphism, metrized line bundles and arithmetic torsors over
//! rings of integers, and arithmetic characteristic (spectral and cameral)
//! curves of Higgs fields.
//!
//! The linear-algebra and Lie-algebra layers are generic over [`Scalar`];
//! finite-place data is always exact ([`Rational`], [`FieldElem`]) while
//! archimedean data uses `f64` with tolerance [`scalar::ARCH_TOL`].

pub mod arakelov;
pub mod charmorph;
pub mod chevalley;
pub mod cli;
pub mod curve;
pub mod error;
pub mod finite_field;
pub mod linalg;
pub mod poly;
pub mod rootsys;
pub mod scalar;
pub mod serial;
pub mod torsor;

pub use arakelov::{FieldElem, FractionalIdeal, MetrizedLineBundle, NumberField};
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use rootsys::{CartanType, Root, RootSystem, WeylElement};
pub use scalar::Scalar;

/// Exact rationals.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision integers.
pub type Integer = num_bigint::BigInt;

/// Matrices over the exact rationals.
pub type QMatrix = Matrix<Rational>;
/// Matrices over `f64`.
pub type RMatrix = Matrix<f64>;
/// Matrices over `f32`.
pub type R32Matrix = Matrix<f32>;
/// Matrices over a quadratic (or rational) number field.
pub type KMatrix = Matrix<FieldElem>;

/// Lie-algebra elements with exact rational coordinates.
pub type QLieElement = chevalley::LieElement<Rational>;
/// Polynomials in ℚ[λ].
pub type QPoly = poly::Poly<Rational>;
/// Multivariate polynomials over ℚ.
pub type QMultiPoly = poly::MultiPoly<Rational>;
/// Real-place Cartan data in double precision.
pub type RCartanData = torsor::CartanData<f64>;
/// Cartan data with exact rational forms.
pub type QCartanData = torsor::CartanData<Rational>;
