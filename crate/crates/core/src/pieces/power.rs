//! Integrals against the power phase `e^{±itx₂^q}`.

use num_complex::Complex64;

use super::{PieceValue, Representation};
use crate::error::{Error, Result};
use crate::phase::{cutoff_pair, Profile, Smooth1D};
use crate::quad::{
    integrate_adaptive, integrate_adaptive_noisy, integrate_oscillatory, Interval, OscAmplitude,
    OscillatoryIntegrand, QuadratureResult, Sample, TailOptions, ToleranceConfig,
};
use crate::specfun::gamma_real;

/// Upper end of the damped `y = x₂^q` range in the second cutoff factor;
/// `e^{−700}` is below every representable contribution.
const DAMPED_Y_MAX: f64 = 700.0;

/// `Γ(1/q+1) (1 − it)^{−1/q}` at `t = e^X`, in log-polar form.
pub fn eval_k1_factor(q: u32, x_log: f64) -> Result<Complex64> {
    if q < 2 {
        return Err(Error::Precondition(format!("q must be >= 2, got {q}")));
    }
    let inv_q = 1.0 / q as f64;
    // |1 − it| = e^X (1 + e^{−2X})^{1/2}, arg(1 − it) = −arctan(e^X)
    let log_mod = if x_log > 0.0 {
        x_log + 0.5 * (-2.0 * x_log).exp().ln_1p()
    } else {
        0.5 * (2.0 * x_log).exp().ln_1p()
    };
    let modulus = gamma_real(inv_q + 1.0)? * (-inv_q * log_mod).exp();
    Ok(Complex64::from_polar(modulus, inv_q * x_log.exp().atan()))
}

struct SampledAmp<F>(F);

impl<F: Fn(f64) -> Sample> OscAmplitude for SampledAmp<F> {
    fn sample(&self, x: f64) -> Sample {
        (self.0)(x)
    }
}

/// `∫_0^∞ e^{−[1−it]x₂^q} β(x₂) dx₂`; superpolynomially small in `t`.
pub fn eval_k2_factor(q: u32, x_log: f64, tol: &ToleranceConfig) -> Result<QuadratureResult> {
    if q < 2 {
        return Err(Error::Precondition(format!("q must be >= 2, got {q}")));
    }
    let inv_q = 1.0 / q as f64;
    let c = cutoff_pair();
    // y = x₂^q: (1/q) ∫_1^∞ e^{ity} e^{−y} β(y^{1/q}) y^{1/q−1} dy
    let amp = |y: f64| {
        Complex64::new(
            inv_q * (-y).exp() * c.beta(y.powf(inv_q)) * y.powf(inv_q - 1.0),
            0.0,
        )
    };
    // The value is smaller than any power of 1/t, so a relative target is
    // unreachable; accuracy is measured against the size ∫|amp|/t of a
    // non-cancelling oscillatory integral with this amplitude.
    let t = x_log.exp();
    let mass = integrate_adaptive(
        amp,
        Interval::finite(1.0, DAMPED_Y_MAX)?,
        &ToleranceConfig::with_rel(1e-6),
    )?;
    let floored = ToleranceConfig {
        abs_tol: tol
            .abs_tol
            .max(tol.rel_tol * mass.value.norm() / t.max(1.0)),
        ..*tol
    };
    let spec = OscillatoryIntegrand {
        amplitude: &amp,
        omega: t,
        interval: Interval::finite(1.0, DAMPED_Y_MAX)?,
        grading_center: Some(0.0),
        options: TailOptions::default(),
    };
    integrate_oscillatory(&spec, &floored)
}

/// Cutoff applied in the scaled variable `u₂ = t^{1/q} x₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Cut {
    One,
    Alpha,
    Beta,
}

impl Cut {
    fn at(self, u: f64) -> f64 {
        match self {
            Cut::One => 1.0,
            Cut::Alpha => cutoff_pair().alpha(u),
            Cut::Beta => cutoff_pair().beta(u),
        }
    }
}

/// `∫_0^{x_max} e^{iσ t x₂^q} x₂^k c(t^{1/q} x₂) A(x₂) dx₂` at `t = e^X`.
///
/// With `u = t^{1/q} x₂` the range `u ≤ 2` is integrated by Gauss–Kronrod;
/// beyond it `y = u^q` turns the phase linear and Filon panels run up to the
/// end of the support, `y = t x_max^q`.
pub(crate) fn power_integral<A>(
    q: u32,
    x_log: f64,
    sigma: f64,
    k: u32,
    cut: Cut,
    x_max: f64,
    amp: A,
    tol: &ToleranceConfig,
) -> Result<QuadratureResult>
where
    A: Fn(f64) -> Sample,
{
    if !(x_max > 0.0) {
        return Ok(QuadratureResult::zero());
    }
    let qf = q as f64;
    let inv_q = 1.0 / qf;
    let kf = k as f64;
    let shrink = (-x_log * inv_q).exp();
    let mut u_max = (x_max.ln() + x_log * inv_q).exp();
    if cut == Cut::Alpha {
        u_max = u_max.min(2.0);
    }
    let head_integrand = |u: f64| {
        let a = amp(u * shrink);
        let w = Complex64::from_polar(u.powi(k as i32) * cut.at(u), sigma * u.powi(q as i32));
        Sample {
            value: a.value * w,
            noise: a.noise * w.norm(),
        }
    };
    let head_hi = u_max.min(2.0);
    let mut total = integrate_adaptive_noisy(
        head_integrand,
        Interval::finite(0.0, head_hi.min(1.0))?,
        tol,
    )?;
    if head_hi > 1.0 {
        total = total.combine(integrate_adaptive_noisy(
            head_integrand,
            Interval::finite(1.0, head_hi)?,
            tol,
        )?);
    }
    if u_max > 2.0 {
        let y_lo = 2f64.powi(q as i32);
        let y_hi = (qf * u_max.ln()).exp();
        let expo = (1.0 + kf) * inv_q - 1.0;
        let amp_y = SampledAmp(|y: f64| {
            let ly = y.ln();
            let a = amp(((ly - x_log) * inv_q).exp());
            let w = inv_q * (expo * ly).exp();
            Sample {
                value: a.value * w,
                noise: a.noise * w,
            }
        });
        let spec = OscillatoryIntegrand {
            amplitude: &amp_y,
            omega: sigma,
            interval: Interval::finite(y_lo, y_hi)?,
            grading_center: Some(0.0),
            options: TailOptions::default(),
        };
        total = total.combine(integrate_oscillatory(&spec, tol)?);
    }
    let scale = (-(1.0 + kf) * x_log * inv_q).exp();
    Ok(total.scaled(Complex64::new(scale, 0.0)))
}

/// `∫_0^∞ e^{±itx^q} ψ₂(x) dx` for compactly supported `ψ₂`.
pub fn eval_s_power(
    q: u32,
    x_log: f64,
    psi2: &Smooth1D,
    sign: f64,
    tol: &ToleranceConfig,
) -> Result<PieceValue> {
    if q < 2 {
        return Err(Error::Precondition(format!("q must be >= 2, got {q}")));
    }
    if !(x_log >= 0.0) {
        return Err(Error::Domain {
            function: "X",
            value: x_log,
        });
    }
    let r = psi2.support_radius();
    if !r.is_finite() {
        return Err(Error::Precondition(
            "amplitude must be compactly supported".into(),
        ));
    }
    let sigma = if sign < 0.0 { -1.0 } else { 1.0 };
    let res = power_integral(
        q,
        x_log,
        sigma,
        0,
        Cut::One,
        r,
        |x| Sample::exact(Complex64::new(psi2.value(x), 0.0)),
        tol,
    )?;
    Ok(PieceValue::new(res, Representation::Transformed))
}
