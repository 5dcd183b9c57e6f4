//! Exact tools for secure domination problems on graphs.
//!
//! A guard placement on a graph is *dominating* when every vertex is in
//! the closed neighborhood of a guard, and *secure dominating* when, in
//! addition, any unguarded vertex has an adjacent guard that can move
//! to it with the result still dominating. The *connected* variants
//! further require the guarded vertices to induce a connected subgraph,
//! before and (for the secure case) after any such move.
//!
//! The crate has five layers:
//!
//! * [`graphs`]: graph construction, benchmark families, distances.
//! * [`model`]: a small exact-coefficient linear-model IR with LP and
//!   MPS emitters and an MPS parser.
//! * [`formulations`]: builders that turn a graph into a binary program
//!   for each problem variant, behind a common strategy trait.
//! * [`certify`]: combinatorial verifiers and an exhaustive oracle,
//!   independent of the models and the solver.
//! * [`solve`]: a bounded-variable primal simplex and a depth-first
//!   branch-and-bound over it.

pub mod certify;
pub mod formulations;
pub mod graphs;
pub mod model;
pub mod solve;
