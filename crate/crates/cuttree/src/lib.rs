//! File formats, graph generators, benchmarks and the command-line frontend for
//! [`cuttree_core`].

pub mod bench;
pub mod cli;
pub mod dimacs;
pub mod generators;
pub mod octree_file;
pub mod run;

pub use dimacs::{parse_dimacs, parse_tree, write_dimacs, write_tree, ParseError};
pub use run::{compute, Method, Stats};
