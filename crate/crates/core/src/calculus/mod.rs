//! Real functions as expression trees, their natural extensions to the
//! generalized reals, and the differential calculus on top of them.

mod expr;
mod genfn;
mod jet;
mod parse;
mod piecewise;

pub use expr::{c, eval_ieee, eval_real, gen_eval, lambda, lambda_n, x, Expr, InverseFn};
pub use genfn::{
    bisect, grid_points, image, interval_point, inverse_ext, mvt_gamma, taylor, GenFn, TaylorResult, GRID,
    ZERO_SLOPE,
};
pub use jet::eval_jet;
pub use parse::parse;
pub use piecewise::{
    ode_verify, probe_limit, pw_derivative_at, pw_eval, MonadRule, PiecewiseGenFn, Probe, PwDerivative, RegionCheck,
    Status,
};
