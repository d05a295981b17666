use std::f64::consts::PI;

use num_complex::Complex64;

use super::adaptive::{adapt_panels, gk21_nodes, gk21_panel};
use super::filon::{filon_nodes, filon_panel_sampled};
use super::tail::tail_terms;
use super::{Interval, LinearRule, QuadratureResult, Sample, ToleranceConfig};
use crate::error::{Error, Result};

/// Slowly varying factor `s` of an integrand `e^{iωx} s(x)`.
pub trait OscAmplitude {
    fn sample(&self, x: f64) -> Sample;

    /// `[s(x), s'(x), ..., s^{(n-1)}(x)]`, when the amplitude can provide them.
    fn derivatives(&self, _x: f64, _n: usize) -> Option<Vec<Complex64>> {
        None
    }
}

impl<F> OscAmplitude for F
where
    F: Fn(f64) -> Complex64,
{
    fn sample(&self, x: f64) -> Sample {
        Sample::exact(self(x))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailOptions {
    /// Tail cut, measured in oscillation periods from the lower limit.
    pub periods: f64,
    /// Number of tail expansion terms.
    pub order: usize,
    /// Panels with fewer oscillations than this use Gauss–Kronrod.
    pub filon_min_oscillations: f64,
}

impl Default for TailOptions {
    fn default() -> Self {
        TailOptions {
            periods: 1e4,
            order: 6,
            filon_min_oscillations: 8.0,
        }
    }
}

pub struct OscillatoryIntegrand<'a> {
    pub amplitude: &'a dyn OscAmplitude,
    pub omega: f64,
    pub interval: Interval,
    /// Point at or below `interval.lo` toward which panels are graded
    /// geometrically (ratio 2). `None` starts from a single panel.
    pub grading_center: Option<f64>,
    pub options: TailOptions,
}

fn graded_breaks(lo: f64, upper: f64, center: Option<f64>) -> Vec<f64> {
    let mut breaks = vec![lo];
    match center {
        Some(c) if c < lo => {
            let d = lo - c;
            let mut k = 1;
            loop {
                let x = c + d * 2f64.powi(k);
                if x >= upper {
                    break;
                }
                breaks.push(x);
                k += 1;
            }
        }
        Some(c) if c == lo => {
            let span = upper - lo;
            for k in (1..=40).rev() {
                breaks.push(lo + span * 2f64.powi(-k));
            }
        }
        _ => {}
    }
    breaks.push(upper);
    breaks
}

/// Panel integration of `e^{iωx} s(x)` up to `W₀` (or `hi`), frozen into a
/// [`LinearRule`] acting on `s`.
pub struct OscillatoryRule {
    /// The body result for the amplitude used to build the rule.
    pub body: QuadratureResult,
    /// Weights include `e^{iωx}`; apply them to the amplitude alone.
    pub rule: LinearRule,
    /// `Some(W₀)` when the range is semi-infinite and a tail is still owed.
    pub tail_point: Option<f64>,
}

pub fn oscillatory_rule(
    spec: &OscillatoryIntegrand<'_>,
    tol: &ToleranceConfig,
) -> Result<OscillatoryRule> {
    tol.validate()?;
    let iv = spec.interval;
    let omega = spec.omega;
    let opts = spec.options;
    let infinite = !iv.is_finite();
    if infinite && omega == 0.0 {
        return Err(Error::ZeroFrequency);
    }
    let upper = if infinite {
        iv.lo + opts.periods * 2.0 * PI / omega.abs()
    } else {
        iv.hi
    };
    let breaks = graded_breaks(iv.lo, upper, spec.grading_center);
    let amp = spec.amplitude;
    let s = |x: f64| amp.sample(x);
    let full = |x: f64| {
        let v = amp.sample(x);
        Sample {
            value: v.value * Complex64::from_polar(1.0, omega * x),
            noise: v.noise,
        }
    };
    let min_width = opts.filon_min_oscillations * 2.0 * PI / omega.abs();
    let use_filon = |a: f64, b: f64| omega != 0.0 && b - a >= min_width;
    let (body, panels) = adapt_panels(
        |a, b| {
            if use_filon(a, b) {
                filon_panel_sampled(&s, omega, a, b)
            } else {
                gk21_panel(&full, a, b)
            }
        },
        &breaks,
        tol,
    );
    let mut rule = LinearRule::default();
    for (a, b) in panels {
        if use_filon(a, b) {
            let (x, w) = filon_nodes(omega, a, b);
            for j in 0..x.len() {
                rule.push(x[j], w[j]);
            }
        } else {
            let (x, w) = gk21_nodes(a, b);
            for j in 0..21 {
                rule.push(x[j], Complex64::from_polar(w[j], omega * x[j]));
            }
        }
    }
    Ok(OscillatoryRule {
        body,
        rule,
        tail_point: infinite.then_some(upper),
    })
}

/// `∫ e^{iωx} s(x) dx` over a finite or semi-infinite interval.
///
/// Finite ranges are covered completely by graded panels. For `hi = ∞` the
/// panels stop at `W₀ = lo + periods·2π/|ω|` and the remainder comes from
/// [`super::oscillatory_tail`] using the amplitude's derivatives at `W₀`.
pub fn integrate_oscillatory(
    spec: &OscillatoryIntegrand<'_>,
    tol: &ToleranceConfig,
) -> Result<QuadratureResult> {
    let OscillatoryRule {
        body, tail_point, ..
    } = oscillatory_rule(spec, tol)?;
    let Some(upper) = tail_point else {
        return Ok(body);
    };
    let order = spec.options.order;
    let derivs = spec
        .amplitude
        .derivatives(upper, order + 1)
        .ok_or(Error::TailUnavailable)?;
    let (tail, tail_err) = tail_terms(&derivs, spec.omega, upper, order)?;
    let value = body.value + tail;
    let err = body.abs_error_estimate + tail_err;
    Ok(QuadratureResult {
        value,
        abs_error_estimate: err,
        n_evals: body.n_evals + order + 1,
        converged: err <= tol.target(value),
    })
}
