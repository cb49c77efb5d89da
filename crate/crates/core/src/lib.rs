//! Approximate minimum-cost pairwise weighted spanners on directed graphs.
//!
//! Edges carry a non-negative rational cost and a positive integral length;
//! demands are ordered vertex pairs with a distance bound. The solvers return
//! a cheap edge subset in which every demand's distance bound holds.

pub mod generate;
pub mod graph;
pub mod instance;
pub mod junction;
pub mod local;
pub mod lp;
pub mod oracle;
pub mod paths;
pub mod pipeline;
pub mod rational;
pub mod seed;
pub mod solution;
pub mod thick;

pub use instance::{parse_instance, Demand, DemandId, Edge, EdgeId, Instance, InstanceError, VertexId};
pub use rational::Rat;
pub use solution::{verify_solution, Phase, Solution, VerifyReport};
