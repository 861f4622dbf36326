//! Exact Seshadri constants of ample line bundles on hyperelliptic surfaces.
//!
//! The crate works entirely at the level of the numerical lattice `Num(X)`:
//!
//! * [`numlattice`]: the seven surface types, divisor classes, intersection form.
//! * [`exactnum`]: exact values `q + r√d` with a total order.
//! * [`closedform`]: closed-form values and bounds for `ε(L)`, `ε(L,x)`, `ε(L,1)`.
//! * [`oracle`]: independent certification by exact constrained minimization.
//! * [`pell`]: Pell equations and the Pell-type lower bound on `ε(L,1)`.
//! * [`cli`]: the `seshadri` command-line front end.

pub mod cli;
pub mod closedform;
pub mod exactnum;
pub mod numlattice;
pub mod oracle;
pub mod pell;

mod error;

pub use closedform::{
    delta_feasibility, epsilon_at_point, epsilon_min, epsilon_one, epsilon_one_with_delta,
    max_feasible_delta, EstimateKind, GenusConstraint, PointClass, SeshadriEstimate, DEFAULT_DELTA,
};
pub use error::{Error, Result};
pub use exactnum::ExactValue;
pub use numlattice::{intersect, is_ample, surface_params, DivisorClass, SurfaceType};
pub use oracle::{certify_point, cross_check_region, CurveCandidate, OracleReport};
pub use pell::{pell_fundamental, ExcSet, PellSolution};
