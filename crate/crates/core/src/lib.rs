//! Dispersion of point sets in the unit cube and its connection to
//! cover-free families.
//!
//! The crate is organised bottom-up:
//!
//! * [`geometry`]: points, open axis-parallel boxes, generators and the
//!   point-set text format.
//! * [`emptybox`]: exact largest empty box (the dispersion of a point set),
//!   a randomized lower estimate and a local search for small minimal
//!   dispersion configurations.
//! * [`cff`]: `(k, r)`-cover-free families, exact `C(k, r, d)` for tiny
//!   instances and the Michel–Scott lower bound.
//! * [`reduction`]: the box family `B(d, k, l, u)`, the extracted families
//!   `F_j^u`, hitting checks and the slab rescaling maps.
//! * [`bounds`]: every lower and upper bound on `N(eps, d)` and
//!   `disp*(n, d)` handled by the library, the `k`-indexed family of lower
//!   bounds with explicit constants, and region scans over `eps`.

pub mod bounds;
pub mod cff;
pub mod emptybox;
mod error;
pub mod geometry;
pub mod reduction;

pub use error::{Error, Result};
