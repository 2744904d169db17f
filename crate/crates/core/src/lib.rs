//! Complex simple Lie algebras, their cohomogeneity-two nilpotent orbits,
//! and numerical checks of the hyperKähler potentials on those orbits.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`] builds the algebras with exact structure constants, the
//!   Killing form and the compact real structure `sigma`.
//! * [`orbits`] produces orbit representatives and the invariants
//!   `eta1 = <X, sigma X>` and `eta2 = -<[X, sigma X], [X, sigma X]>`.
//! * [`potentials`] evaluates potentials as 2-jets in `(eta1, eta2)`.
//! * [`geometry`] turns a jet into the Kähler form, metric and `J`, and runs
//!   the residual suites.
//! * [`cli`] is the command-line front end used by the `hkpot` binary.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod orbits;
pub mod potentials;

pub use algebra::{AlgebraSpec, Element, Family, LieAlgebra};
pub use error::{Error, Result};
pub use geometry::{GeometryReport, PointGeometry, SuiteConfig};
pub use orbits::{Orbit, OrbitId, OrbitPoint, TangentVector};
pub use potentials::{Potential, PotentialJet, PotentialKind};

pub use num_complex::Complex64;
