//! Hypergraph cut sparsification toolkit.
//!
//! The crate is organized around three reductions between cut problems on
//! hypergraphs, each preserving cut (and where applicable spectral) values
//! exactly so that a sparsifier for the easier class transfers to the harder
//! one:
//!
//! * [`lift`] — directed hypergraphs on `n` vertices lift to undirected
//!   hypergraphs on `n² + 1` vertices (pair vertices plus a star vertex)
//!   with every per-edge Laplacian term preserved exactly.
//! * [`sketchsim`] — `k` undirected hypergraphs on a shared vertex set pack
//!   into one directed hypergraph on `n + k` vertices; each source cut value
//!   is recovered from three directed-cut queries by inclusion-exclusion.
//! * [`submod`] — monotone submodular splitting functions lift to symmetric
//!   submodular ones on one extra (shared) star vertex, preserving all
//!   star-free cuts.
//!
//! [`hypercore`] holds the data model and exact evaluators, [`sparsify`] a
//! pluggable cut-sparsifier backend (sensitivity sampling with exhaustive
//! verification) driving the reduction pipelines, and [`io`] the canonical
//! line-oriented file formats.

pub mod error;
pub mod hypercore;
pub mod io;
pub mod lift;
pub mod sketchsim;
pub mod sparsify;
pub mod submod;

pub use error::{Error, Result};
pub use hypercore::{
    Claims, CutInstance, CutSet, DirectedHyperedge, DirectedHypergraph, SplittingFunction,
    SubmodularHypergraph, UndirectedHyperedge, UndirectedHypergraph, VertexId,
};
