//! Exact linear programming: the thin-pair path LP solved by column
//! generation, the distance-preserver covering LP solved by cutting planes,
//! and their randomized roundings.

pub mod simplex;
pub mod maxflow;
mod preserver;
mod round;

pub use preserver::{separate_antispanner, solve_preserver_lp, tight_edges, AntiSpannerCut, PreserverLp};
pub use round::{inclusion_probability, preserver_factor, round_preserver, round_thin, round_with_factor, thin_factor};
mod thin;

pub use thin::{
    solve_thin_lp, solve_thin_lp_priced, thin_iteration, Column, DualState, FractionalSolution, ThinChoice,
    ThinError, ThinLpError, ThinOptions, ThinStep,
};
