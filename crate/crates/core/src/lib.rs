//! Exact Gomory-Hu (cut) trees of undirected weighted graphs.
//!
//! Three interchangeable constructions share one generalized Gomory-Hu driver:
//!
//! * the classical algorithm (one minimum `s`-`t` cut per split),
//! * a split strategy built on depth-1 ordered-cut trees ([`pipeline::Oc1Split`]),
//! * a split strategy built on certified weak ordered cuts ([`pipeline::WeakOcSplit`]).
//!
//! Every randomized step is Las-Vegas: outputs are minimum cuts by construction and the
//! [`oracle`] module provides brute-force ground truth to check them independently.
//!
//! The crate is `no_std` and only needs `alloc`. Enable `std` for `std::error::Error`
//! integration and `parallel` for a rayon-backed ordered-cuts solver.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod error;
pub mod gomory_hu;
pub mod graph;
pub mod isolating;
pub mod maxflow;
pub mod named_partition;
pub mod octree;
pub mod oracle;
pub mod pipeline;

pub use error::Error;
pub use gomory_hu::{gh_generalized, gomory_hu_classic, GhRun, GhTree, PartitionTree, Split, SplitStrategy};
pub use graph::{Cut, Graph, Node, NodeSet, Weight};
pub use maxflow::{latest_min_cut, min_cut, min_cut_minimal_sink, MinCutResult, WorkCounter};
pub use named_partition::NamedPartition;
pub use octree::{ordered_cuts_dc, OcTree, Sequence};
pub use pipeline::{gh_via_oc1, gh_via_weak_oc, CertifyMode, PipelineConfig};
