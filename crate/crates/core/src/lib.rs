//! Exact, finite computations in simplicial homotopy theory.
//!
//! Simplicial sets are presented by their nondegenerate simplices in
//! Eilenberg–Zilber normal form ([`sset`]); level tables ([`levels`]) carry the
//! constructions that are described simplex by simplex. On top of that substrate sit
//! simplicial groups with their classifying and loop constructions, pre-Δ°-spaces and
//! Segal precategories, G-spaces over `d(G)` with the Borel/monodromy pair, and bounded
//! hammock localization of finite relative categories.
//!
//! Everything is integer arithmetic; infinite objects are always presented through an
//! explicit dimension and say so.
#![no_std]
#![allow(clippy::needless_range_loop, clippy::type_complexity, clippy::explicit_counter_loop)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod category;
pub mod construct;
pub mod delta;
pub mod error;
pub mod group;
pub mod gset;
pub mod gspace;
pub mod hom;
pub mod homology;
pub mod iso;
pub mod kan;
pub mod loopgroup;
pub mod map;
pub mod pi1;
pub mod precategory;
pub mod presentation;
pub mod levels;
pub mod localization;
pub mod sgroup;
pub mod slice;
pub mod simplex;
pub mod sset;
pub mod util;

pub use error::{Error, Result};
pub use levels::{Expanded, LevelMap, Levels};
pub use simplex::{DegeneracyWord, Simplex};
pub use sset::{Generator, Op, SimplicialSet};
