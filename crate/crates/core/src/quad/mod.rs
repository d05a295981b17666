//! One-dimensional quadrature engines.
//!
//! * [`integrate_adaptive`]: globally adaptive 10/21-point Gauss–Kronrod with
//!   bisection, for smooth or mildly oscillatory integrands.
//! * [`integrate_filon`]: Filon–Clenshaw–Curtis panels for `e^{iωx} s(x)`
//!   with `s` slowly varying; accuracy does not degrade with `|ω|`.
//! * [`oscillatory_tail`]: asymptotic expansion of `∫_W^∞ e^{iωx} s(x) dx`.
//! * [`integrate_oscillatory`]: driver combining graded panels, Filon and
//!   the tail expansion on finite or semi-infinite ranges.

mod adaptive;
mod filon;
pub(crate) mod gauss;
mod oscillatory;
mod rule;
mod tail;

pub use adaptive::{adaptive_rule, integrate_adaptive, integrate_adaptive_noisy};
pub use filon::{filon_panel, integrate_filon};
pub use gauss::GaussLegendre;
pub use oscillatory::{
    integrate_oscillatory, oscillatory_rule, OscAmplitude, OscillatoryIntegrand, OscillatoryRule,
    TailOptions,
};
pub use rule::LinearRule;
pub use tail::oscillatory_tail;
pub(crate) use tail::tail_terms;

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Carrier for every integral value.
pub type ComplexValue = Complex64;

/// A complex sample together with an absolute error bound on it. Integrands
/// that are themselves computed by quadrature report their own error here.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Sample {
    pub value: Complex64,
    pub noise: f64,
}

impl Sample {
    pub fn exact(value: Complex64) -> Self {
        Sample { value, noise: 0.0 }
    }
}

impl From<Complex64> for Sample {
    fn from(value: Complex64) -> Self {
        Sample::exact(value)
    }
}

/// Integration range; `hi` may be `f64::INFINITY`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || hi.is_nan() || hi <= lo || hi == f64::NEG_INFINITY {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    pub fn finite(lo: f64, hi: f64) -> Result<Self> {
        if !hi.is_finite() {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Self::new(lo, hi)
    }

    pub fn semi_infinite(lo: f64) -> Result<Self> {
        Self::new(lo, f64::INFINITY)
    }

    pub fn is_finite(&self) -> bool {
        self.hi.is_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    pub max_evals: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            abs_tol: 1e-300,
            rel_tol: 1e-10,
            max_subdivisions: 4000,
            max_evals: 4_000_000,
        }
    }
}

impl ToleranceConfig {
    pub fn with_rel(rel_tol: f64) -> Self {
        ToleranceConfig {
            rel_tol,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) {
            return Err(Error::InvalidTolerance("abs_tol must be > 0"));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidTolerance("rel_tol must be > 0"));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::InvalidTolerance("max_subdivisions must be > 0"));
        }
        if self.max_evals == 0 {
            return Err(Error::InvalidTolerance("max_evals must be > 0"));
        }
        Ok(())
    }

    pub(crate) fn target(&self, value: Complex64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.norm())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    pub n_evals: usize,
    pub converged: bool,
}

impl QuadratureResult {
    pub fn zero() -> Self {
        QuadratureResult {
            value: Complex64::new(0.0, 0.0),
            abs_error_estimate: 0.0,
            n_evals: 0,
            converged: true,
        }
    }

    /// Sum of two independent results; errors add.
    pub fn combine(self, other: QuadratureResult) -> Self {
        QuadratureResult {
            value: self.value + other.value,
            abs_error_estimate: self.abs_error_estimate + other.abs_error_estimate,
            n_evals: self.n_evals + other.n_evals,
            converged: self.converged && other.converged,
        }
    }

    pub fn scaled(self, factor: Complex64) -> Self {
        QuadratureResult {
            value: self.value * factor,
            abs_error_estimate: self.abs_error_estimate * factor.norm(),
            ..self
        }
    }

    pub fn sample(&self) -> Sample {
        Sample {
            value: self.value,
            noise: self.abs_error_estimate,
        }
    }
}
