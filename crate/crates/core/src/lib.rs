//! Distance sets in vector spaces over finite fields.
//!
//! Field arithmetic on F_q (q = p^k, p odd), additive characters and the
//! classical character sums, the Fourier transform on F_q^d with the closed
//! form of the sphere transform, the distance-counting function nu(t) and
//! spherical maxima, the explicit lower bounds on |Delta(E, F)|, set
//! generators, and a sweep driver that checks all of it on seeded instances.
//!
//! ```
//! use std::sync::Arc;
//! use fqlab_core::{distance_count, isotropic_set, FieldSpec, Space};
//!
//! let field = Arc::new(FieldSpec::prime(5).unwrap());
//! let space = Space::new(field, 2).unwrap();
//! let line = isotropic_set(&space).unwrap();
//! assert_eq!(line.card(), 5);
//! assert_eq!(distance_count(&space, &line, &line).unwrap(), 1);
//! ```

pub mod bounds;
pub mod char_sums;
pub mod character;
pub mod distance;
pub mod error;
pub mod field;
pub mod fourier;
pub mod geometry;
pub mod pointset;
pub mod report;
pub mod scalar;
pub mod setgen;
pub mod sweep;
pub mod tolerance;

pub use bounds::{verify_bound, BoundReport, TheoremId};
pub use char_sums::{gauss_sum, kloosterman, salie};
pub use distance::{distance_count, distance_set, nu_brute, nu_fourier, spherical_max, NuTable};
pub use error::{Error, Result};
pub use field::{Elem, FieldSpec};
pub use geometry::{build_spheres, Space, SphereTable, VecD};
pub use pointset::{PointSet, PointSetFile};
pub use report::{CheckRecord, Verdict};
pub use scalar::Scalar;
pub use setgen::{isotropic_set, minimize_distance_search, product_set, random_set, SplitMix64};
pub use sweep::{run_sweep, SweepConfig, SweepReport};
pub use tolerance::{BOUND_TOLERANCE, DEFAULT_TOLERANCE};

pub type Complex64 = num_complex::Complex<f64>;
pub type Character = character::AdditiveCharacter<f64>;
pub type Fourier = fourier::Fourier<f64>;
pub type Spectrum = fourier::Spectrum<f64>;
pub type SphericalMax = distance::SphericalMax<f64>;
pub type PairAnalysis = distance::PairAnalysis<f64>;
pub type CharSumResult = char_sums::CharSumResult<f64>;

pub type Complex32 = num_complex::Complex<f32>;
pub type Character32 = character::AdditiveCharacter<f32>;
pub type Fourier32 = fourier::Fourier<f32>;
pub type Spectrum32 = fourier::Spectrum<f32>;
