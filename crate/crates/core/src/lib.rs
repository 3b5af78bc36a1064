//! Exact graph coloring through neighborhood diversity.
//!
//! The pipeline decomposes a graph into twin classes, condenses it into a
//! weighted type graph, enumerates the maximal independent sets of the type
//! graph, solves a small covering integer program to proven optimality, and
//! reconstructs an optimal canonical coloring from the solution. A class
//! checker recognizes (4K1, C4, C6)-free graphs containing a C7, and a test
//! kit provides brute-force oracles and seeded instance generators.

pub mod classcheck;
pub mod cli;
pub mod graph;
pub mod ilp;
pub mod mis;
pub mod nd;
pub mod pipeline;
pub mod simplex;
pub mod testkit;

pub use graph::{Graph, Pattern};
pub use ilp::{CoveringIlp, IlpSolution, SolveOptions};
pub use mis::MisFamily;
pub use nd::{NdDecomposition, TypeGraph};
pub use pipeline::Coloring;
