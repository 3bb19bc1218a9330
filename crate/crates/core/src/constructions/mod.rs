//! Combinators that build new geodesics from old ones: two copies of a
//! space glued at a point, splicing a geodesic into another, and branching
//! a geodesic off at a prescribed time by repeated splices on dyadic
//! windows.

pub mod branch;
pub mod glued;
pub mod splice;

pub use branch::{
    branch_truncated, distinct_family, AlternativeChooser, BranchPlan, BranchResult, LaaksoChooser, NormedChooser,
    MAX_DEPTH,
};
pub use glued::{cross_geodesic, lift_geodesic, GluedChooser, GluedPoint, GluedSpace};
pub use splice::splice;
