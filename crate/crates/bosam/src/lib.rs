//! Network topology visualization through bitmaps of sorted adjacency
//! matrices (BOSAM).
//!
//! The pipeline: parse or generate a simple undirected graph
//! ([`graph`], [`models`]), sort its nodes by decreasing degree with
//! structure-aware tie-breaks ([`ordering`]), draw the sorted adjacency
//! matrix as a monochrome bitmap ([`render`]), and quantify what the
//! picture shows ([`metrics`]). The [`cli`] module wires the stages into
//! file-connected subcommands.

pub mod cli;
pub mod graph;
pub mod metrics;
pub mod models;
pub mod ordering;
pub mod render;
