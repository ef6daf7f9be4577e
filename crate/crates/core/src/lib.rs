//! Planar binary trees, the Tamari lattice and the dendriform operad.
//!
//! Elements of `Dend(n)` are integer combinations of trees with `n` inner
//! vertices ([`DendElem`]). On top of the operad structure the crate provides
//! the anticyclic maps `θ` and `τ`, the product `#`, noncrossing plants and
//! trees, projective elements, and the tri-modules over products of Tamari
//! posets that lift `∘_1`, `*` and `#` to modules.
//!
//! ```
//! use dendcat::{star, DendElem};
//!
//! let sigma = DendElem::unit();
//! let s = star(&sigma, &sigma).unwrap();
//! assert_eq!(s, DendElem::sum_all(2).unwrap());
//! ```

pub mod anticyclic;
pub mod categorify;
pub mod dendriform;
pub mod error;
pub mod export;
pub mod linalg;
pub mod matrix;
pub mod noncrossing;
pub mod projective;
pub mod tamari;
pub mod trees;
pub mod verify;

pub use anticyclic::{apply_tau, apply_theta, apply_theta_inv, diese, Transforms};
pub use categorify::{build_m, check_relations, PosetModule, ProductKind, TriModule};
pub use dendriform::{compose, over_elem, star, under_elem, DendElem};
pub use error::{Error, Result};
pub use matrix::IntMatrix;
pub use noncrossing::{compose_ncp, enumerate_ncp, enumerate_nct, simple_nct, NcPlant};
pub use projective::{projective_element, ProjectiveElem};
pub use tamari::{leq, PosetView};
pub use trees::{catalan, enumerate_trees, Tree};
