//! Fourier analysis on compact Lie groups and compact homogeneous manifolds.
//!
//! The crate implements the global matrix-valued Fourier transform on the
//! torus `T^n` (n ≤ 3), the group `SU(2)` and the sphere `S² = SO(3)/SO(2)`,
//! together with the machinery needed to study how smoothness of a function
//! (Hölder-Lipschitz and Dini-Lipschitz moduli of continuity measured in
//! `L^p` under group translation) is reflected in the decay of its Fourier
//! coefficients:
//!
//! * weighted sequence norms `ℓ^β` on the unitary dual and spectral tail sums,
//! * translation action on spectra and canonical lifting `S² → SO(3)`,
//! * power-law / power-log exponent fitting for every `O(·)` claim,
//! * executable checkers for the Titchmarsh-type characterizations, the
//!   Duren summation lemmas, Weyl counting asymptotics, Hausdorff-Young,
//!   and the Bessel-potential multiplier regularity shift,
//! * a zoo of test functions with analytically known regularity.
//!
//! Most capabilities have a runnable demo under `examples/`; the `hhft`
//! binary exposes the same experiments as subcommands emitting CSV/JSON.

pub mod cli;
pub mod error;
pub mod groups;
pub mod harmonics;
pub mod linalg;
pub mod lipschitz;
pub mod spaces;
pub mod theorems;
pub mod transform;
pub mod zoo;

pub use error::{Error, Result};
pub use groups::{DualPoint, GroupDescriptor, GroupElement, GroupKind};
pub use harmonics::{build_grid, QuadratureGrid};
pub use transform::{forward, inverse, GridFunction, Spectrum};
