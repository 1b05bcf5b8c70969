//! Exact-rational cohomology calculus for the (1,8)-polarized abelian-surface
//! fibered Calabi-Yau threefold `V`, its dual fibration `V^`, and the
//! auxiliary surfaces that show up along the way.
//!
//! Everything is computed over arbitrary-precision rationals modulo torsion.
//! The crate is organised bottom-up:
//!
//! * [`ring`] graded intersection rings, classes, linear maps and the text formats
//! * [`isogeny`] the degree-64 isogeny between `V` and `V^` on cohomology
//! * [`chern`] Chern classes/characters, GRR pushforward and complete intersections
//! * [`fm`] the Fourier-Mukai transform as a 6x6 rational matrix
//! * [`search`] bounded search over spectral data against the heterotic constraints
//! * [`stability`] ampleness, slopes and the stability threshold
//! * [`lattice`] the Neron-Severi lattice of `E x E` and its SL(2,Z) action
//! * [`verify`] named verification suites used by the CLI and the acceptance tests

pub mod chern;
pub mod error;
pub mod fm;
pub mod isogeny;
pub mod lattice;
pub mod linalg;
pub mod rational;
pub mod report;
pub mod ring;
pub mod search;
pub mod stability;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Q;
pub use ring::{CohClass, CohMap, MapKind, RingModel};
