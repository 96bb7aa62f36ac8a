//! Bipartite-graph instances for unate set cover, maximum matching, Chvátal's
//! greedy with seeded stochastic replicas, and a phase-split timing harness.

pub mod bench;
pub mod cli;
pub mod cover;
pub mod data;
pub mod experiments;
pub mod generators;
pub mod instance;
pub mod matching;
