//! Exact-arithmetic toolkit for ℤ-linear Gale duality and secondary-fan
//! analysis of ℚ-factorial complete toric varieties.
//!
//! The crate is organized bottom-up:
//!
//! * [`linalg`] — arbitrary-precision integer/rational matrices, normal
//!   forms, kernels, exact solving;
//! * [`cones`] — rational polyhedral cones with dual descriptions;
//! * [`gale`] — fan matrices, weight matrices and Gale duality;
//! * [`secondary_fan`] — the movable cone, chamber enumeration and the
//!   chamber ↔ projective fan correspondence;
//! * [`mori`] — primitive collections and relations, numerical classes,
//!   Mori/Nef duality;
//! * [`classify`] — bordering taxonomy, contractions, flips and the
//!   classification reports;
//! * [`search`] — seeded randomized hunting for smooth chambers whose nef
//!   cone meets the boundary of the effective cone only at the origin;
//! * [`corpus`] — bundled reference instances used by tests and the
//!   `reproduce` CLI commands.

pub mod classify;
pub mod cones;
pub mod corpus;
pub mod gale;
pub mod linalg;
pub mod mori;
pub mod search;
pub mod secondary_fan;
