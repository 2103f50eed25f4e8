//! The four counterexample systems, their constraint encodings, default
//! distributions and analytic risk evaluators.

pub mod arcs;
pub mod convex;
pub mod exclusion;
pub mod interval;

pub use convex::{alg_convex_maxx1, ConvexConstraint, ConvexMixture, ConvexVcSystem};
pub use exclusion::{
    alg_min, alg_sum, analytic_risk_sum_min, excl, Exclusion, GeometricExclusion, MinSystem,
    SumSystem,
};
pub use interval::{
    alg_interval, analytic_risk_interval, member, AtomPlusUniform, IntervalDecision,
    IntervalSystem, Membership,
};
