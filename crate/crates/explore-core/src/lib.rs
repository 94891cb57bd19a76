//! Simulation and analysis of online exploration of weighted graphs.
//!
//! An agent starts at a distinguished vertex of an undirected, connected,
//! positively weighted graph it does not know. Whenever the agent visits a
//! vertex, all edges incident to it are revealed (endpoint identity and
//! weight). The agent must visit every vertex and return to the start while
//! paying the weight of every edge it moves along; the quality of a strategy
//! is compared against the optimal closed walk computed with full knowledge.
//!
//! The crate provides:
//!
//! * [`graph`] — weighted graph representation, validation, classification
//!   (tree / unicyclic / cactus / general), cycle decomposition, and a plain
//!   text interchange format;
//! * [`engine`] — the fog-of-war exploration engine enforcing the reveal and
//!   movement rules, with a tour recorder and a per-edge cost ledger;
//! * [`strategies`] — nearest-neighbor, depth-first, and the distance-based
//!   blocking strategy with a tunable aggressiveness parameter;
//! * [`opt`] — exact offline optima (closed form on cactus graphs, dynamic
//!   programming on small general graphs);
//! * [`families`] — parameterized instance families with known behavior, plus
//!   seeded random instance generation;
//! * [`instrument`] — run audits: invariant checks and per-edge cost bounds
//!   recorded while a strategy executes;
//! * [`harness`] — experiment configuration, batch runs, report rendering,
//!   and the built-in claim reproduction suite.

pub mod engine;
pub mod families;
pub mod graph;
pub mod harness;
pub mod instrument;
pub mod opt;
mod paths;
pub mod strategies;
pub mod weight;
