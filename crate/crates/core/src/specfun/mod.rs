//! Special functions and quadrature shared by the closed-form limits.

mod beta;
mod dilog;
mod gamma;
mod hyper;
pub mod quad;

pub use beta::{ln_lower_inc_beta, lower_inc_beta};
pub use dilog::dilog;
pub use gamma::{beta, gamma, ln_beta, ln_gamma, ln_upper_inc_gamma, upper_inc_gamma};
pub use hyper::{
    beta_kernel, ln_meijer_g_3023, ln_meijer_integral, ln_tricomi_u, meijer_g_3023, meijer_g_3023_gamma_route,
    tricomi_u,
};
pub use quad::{quad_adaptive, quad_peaked, quad_points, quad_singular, Endpoint, QuadSpec, Scaled};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("{0} did not converge")]
    NoConvergence(&'static str),
    #[error("quadrature budget exhausted (estimate {estimate:e}, error bound {error:e})")]
    Budget { estimate: f64, error: f64 },
    #[error("integrand is not finite near x = {at}")]
    NonFinite { at: f64 },
}
