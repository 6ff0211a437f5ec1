//! Arithmetic invariants, bounded case eliminations and brute-force group
//! constructions around the recognition of `PSU3(q)` by the orders of its
//! maximal abelian subgroups.

pub mod brute_group;
pub mod case_engine;
pub mod cli;
pub mod group_orders;
pub mod ntheory;
pub mod prime_graph;
