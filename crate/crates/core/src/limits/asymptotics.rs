//! Large-k behaviour γ(k) ~ c_{α,ν} s(k).

use super::closed::half_beta;
use super::{LimitContext, LimitError};
use crate::specfun::beta;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// 1/2 < α < 3/4
    Subcritical,
    /// α = 3/4
    Critical,
    /// α > 3/4
    Supercritical,
}

/// The decay profile s(k).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scale {
    /// k^{exponent}; exponent = 2 - 4α.
    Power(f64),
    /// log(k)/k
    LogOverK,
    /// 1/k
    InverseK,
}

impl Scale {
    pub fn eval(&self, k: f64) -> f64 {
        match *self {
            Scale::Power(e) => k.powf(e),
            Scale::LogOverK => k.ln() / k,
            Scale::InverseK => 1.0 / k,
        }
    }

    pub fn describe(&self) -> String {
        match *self {
            Scale::Power(e) => format!("k^{e}"),
            Scale::LogOverK => "log(k)/k".to_string(),
            Scale::InverseK => "1/k".to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticRegime {
    pub regime: Regime,
    pub c_alpha_nu: f64,
    pub scale: Scale,
}

impl AsymptoticRegime {
    /// c_{α,ν} s(k)
    pub fn approx(&self, k: f64) -> f64 {
        self.c_alpha_nu * self.scale.eval(k)
    }
}

const CRITICAL_BAND: f64 = 1e-12;

pub fn asymptotic_regime(ctx: &LimitContext) -> Result<AsymptoticRegime, LimitError> {
    let a = ctx.alpha;
    let nu = ctx.nu;
    if (a - 0.75).abs() <= CRITICAL_BAND {
        return Ok(AsymptoticRegime {
            regime: Regime::Critical,
            c_alpha_nu: 6.0 * nu / PI,
            scale: Scale::LogOverK,
        });
    }
    if a > 0.75 {
        return Ok(AsymptoticRegime {
            regime: Regime::Supercritical,
            c_alpha_nu: 8.0 * a * nu / (PI * (4.0 * a - 3.0)),
            scale: Scale::InverseK,
        });
    }
    let am1 = a - 1.0;
    let bracket = (3.0 * a - 1.0) / (2f64.powf(4.0 * a + 1.0) * a * am1 * am1) + (a - 0.5) * half_beta(a)? / (2.0 * am1 * a)
        - beta(2.0 * a, 3.0 - 4.0 * a)? / (4.0 * am1);
    Ok(AsymptoticRegime {
        regime: Regime::Subcritical,
        c_alpha_nu: bracket * ctx.xi.powf(4.0 * a - 2.0),
        scale: Scale::Power(2.0 - 4.0 * a),
    })
}
