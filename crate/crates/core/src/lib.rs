//! Storyplans: sequences of straight-line drawings ("frames") of growing
//! subgraphs with consistent vertex positions, where every frame is planar,
//! outerplanar, or a forest.
//!
//! The crate provides
//!
//! * a small graph library with the named generator families used throughout
//!   ([`graph`]),
//! * exact rational geometry predicates and drawing checks ([`geometry`]),
//! * planar embeddings, planarity and outerplanarity testing ([`embed`]),
//! * straight-line planar drawing via canonical orders ([`draw`]),
//! * the storyplan data model and verifier ([`model`]),
//! * constructive planners for bipartite, 2-tree, subcubic and outerplanar
//!   inputs ([`planners`]) and for triangle-free planar graphs
//!   ([`planar_forest`]),
//! * an exact brute-force decision procedure for small graphs ([`oracle`]).
//!
//! The crate is `no_std` (with `alloc`); all IO lives in the companion CLI
//! crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod draw;
pub mod embed;
pub mod geometry;
pub mod graph;
pub mod model;
pub mod oracle;
pub mod placement;
pub mod planar_forest;
pub mod planners;

pub use geometry::{Drawing, Point, Rational};
pub use graph::Graph;
pub use model::{Mode, Storyplan, VerifyReport};
