//! Frozen rules for the x₁-integrals `L`, `L⁽¹⁾`, `L⁽²⁾`.
//!
//! Each rule is built adaptively for a reference profile and then applied
//! unchanged to any other profile with the same support, so that
//! `x₂ ↦ L(t; φ(·,x₂))` is a smooth function of `x₂`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jet::{Jet, Scalar};
use crate::phase::Profile;
use crate::quad::{
    adaptive_rule, oscillatory_rule, tail_terms, Interval, LinearRule, OscAmplitude,
    OscillatoryIntegrand, QuadratureResult, Sample, TailOptions, ToleranceConfig,
};

/// Cut of the `u`-range of `L⁽¹⁾` (and of `log w` in `L`) in units of `1/X`:
/// beyond it `t·e^{−1/x^p} < e^{−40}` and the remaining piece is integrated
/// in `x` directly.
const DEEP_CUT: f64 = 40.0;
/// Up to this `X` the direct `L⁽²⁾` is integrated in `x` with the raw phase.
pub(crate) const DIRECT_X_VARIABLE_MAX: f64 = 10.0;
/// The asymptotic tail is only used when the support edge lies this many
/// times beyond the tail cut.
const TAIL_EDGE_FACTOR: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum InnerKind {
    L,
    L1,
    L2,
}

/// Tail of the `w`-representation of `L⁽²⁾` beyond `w0`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct L2Tail {
    x_log: f64,
    p: f64,
    w0: f64,
    order: usize,
}

impl L2Tail {
    fn eval<P: Profile>(&self, psi: &P) -> Result<(Complex64, f64)> {
        let g = l2_amplitude(Jet::variable(self.w0), self.x_log, self.p, psi);
        let d: Vec<Complex64> = (0..=self.order)
            .map(|k| Complex64::new(g.derivative(k), 0.0))
            .collect();
        tail_terms(&d, 1.0, self.w0, self.order)
    }
}

#[derive(Debug, Clone)]
pub(crate) struct InnerRule {
    pub rule: LinearRule,
    pub tail: Option<L2Tail>,
    pub ref_value: Complex64,
    pub ref_err: f64,
    /// max |reference| over the nodes
    pub ref_scale: f64,
    pub n_evals: usize,
    pub converged: bool,
}

impl InnerRule {
    fn empty() -> Self {
        InnerRule {
            rule: LinearRule::default(),
            tail: None,
            ref_value: Complex64::new(0.0, 0.0),
            ref_err: 0.0,
            ref_scale: 0.0,
            n_evals: 0,
            converged: true,
        }
    }

    fn from_parts<P: Profile>(
        rule: LinearRule,
        res: QuadratureResult,
        tail: Option<L2Tail>,
        reference: &P,
    ) -> Result<Self> {
        let ref_scale = rule
            .nodes
            .iter()
            .map(|&x| reference.value(x).abs())
            .fold(0.0, f64::max);
        let mut out = InnerRule {
            rule,
            tail,
            ref_value: res.value,
            ref_err: res.abs_error_estimate,
            ref_scale,
            n_evals: res.n_evals,
            converged: res.converged,
        };
        if let Some(t) = &out.tail {
            let (v, e) = t.eval(reference)?;
            out.ref_value += v;
            out.ref_err += e;
        }
        Ok(out)
    }

    fn concat(mut self, other: InnerRule) -> Self {
        self.rule.extend(&other.rule);
        assert!(self.tail.is_none() || other.tail.is_none());
        self.tail = self.tail.or(other.tail);
        self.ref_value += other.ref_value;
        self.ref_err += other.ref_err;
        self.ref_scale = self.ref_scale.max(other.ref_scale);
        self.n_evals += other.n_evals;
        self.converged &= other.converged;
        self
    }

    /// Relative accuracy achieved on the reference.
    pub fn rel_accuracy(&self) -> f64 {
        let v = self.ref_value.norm();
        if v > 0.0 {
            self.ref_err / v
        } else {
            0.0
        }
    }

    pub fn apply<P: Profile>(&self, psi: &P) -> Result<QuadratureResult> {
        let mut value = Complex64::new(0.0, 0.0);
        let mut scale: f64 = 0.0;
        for (&x, &w) in self.rule.nodes.iter().zip(&self.rule.weights) {
            let v = psi.value(x);
            scale = scale.max(v.abs());
            value += w * v;
        }
        let mut err = if self.ref_scale > 0.0 {
            self.ref_err * scale / self.ref_scale
        } else {
            0.0
        };
        if let Some(t) = &self.tail {
            let (v, e) = t.eval(psi)?;
            value += v;
            err += e;
        }
        Ok(QuadratureResult {
            value,
            abs_error_estimate: err,
            n_evals: self.rule.len(),
            converged: self.converged,
        })
    }
}

fn support_of<P: Profile>(psi: &P) -> Result<f64> {
    let r = psi.support_radius();
    if !r.is_finite() {
        return Err(Error::Precondition(
            "amplitude must be compactly supported".into(),
        ));
    }
    Ok(r)
}

/// `(1/p) w^{-1} (X − ln w)^{−1/p−1} ψ((X − ln w)^{−1/p})`
pub(crate) fn l2_amplitude<S: Scalar, P: Profile>(w: S, x_log: f64, p: f64, psi: &P) -> S {
    let inv_p = 1.0 / p;
    let z = (-w.ln()).add_cst(x_log);
    if z.value() <= 0.0 {
        return S::cst(0.0);
    }
    let x = z.powf(-inv_p);
    (psi.eval(x) * z.powf(-inv_p - 1.0) / w).scale(inv_p)
}

struct L2Amp<'a, P> {
    x_log: f64,
    p: f64,
    psi: &'a P,
}

impl<P: Profile> OscAmplitude for L2Amp<'_, P> {
    fn sample(&self, w: f64) -> Sample {
        Sample::exact(Complex64::new(
            l2_amplitude(w, self.x_log, self.p, self.psi),
            0.0,
        ))
    }
    fn derivatives(&self, w: f64, n: usize) -> Option<Vec<Complex64>> {
        let g = l2_amplitude(Jet::variable(w), self.x_log, self.p, self.psi);
        (n <= crate::jet::JET_LEN).then(|| {
            (0..n)
                .map(|k| Complex64::new(g.derivative(k), 0.0))
                .collect()
        })
    }
}

/// `x ↦ e^{i t e^{−1/x^p}}` in a form that never overflows.
fn raw_phase(x_log: f64, p: f64, x: f64) -> Complex64 {
    if x == 0.0 {
        return Complex64::new(1.0, 0.0);
    }
    let arg = (x_log - (-p * x.ln()).exp()).exp();
    Complex64::from_polar(1.0, arg)
}

fn l1_direct<P: Profile>(x_log: f64, p: f64, psi: &P, tol: &ToleranceConfig) -> Result<InnerRule> {
    let r = support_of(psi)?;
    let c = (-x_log.ln() / p).exp().min(r);
    if !(c > 0.0) {
        return Ok(InnerRule::empty());
    }
    let t = x_log.exp();
    let phase = |x: f64| Complex64::from_polar(1.0, t * crate::phase::flat_term(x, p));
    let (res, rule) = adaptive_rule(|x| phase(x) * psi.value(x), &[0.0, 0.5 * c, c], tol)?;
    InnerRule::from_parts(rule.mapped(|x| x, phase), res, None, psi)
}

/// `∫_0^{x_c} e^{i t e^{−1/x^p}} ψ(x) dx` with `x_c = (X + 40)^{−1/p}`.
fn deep_part<P: Profile>(x_log: f64, p: f64, psi: &P, tol: &ToleranceConfig) -> Result<InnerRule> {
    let xc = (-(x_log + DEEP_CUT).ln() / p).exp();
    let phase = |x: f64| raw_phase(x_log, p, x);
    let (res, rule) = adaptive_rule(|x| phase(x) * psi.value(x), &[0.0, 0.5 * xc, xc], tol)?;
    InnerRule::from_parts(rule.mapped(|x| x, phase), res, None, psi)
}

fn l1_transformed<P: Profile>(
    x_log: f64,
    p: f64,
    psi: &P,
    tol: &ToleranceConfig,
) -> Result<InnerRule> {
    if !(x_log > 0.0) {
        return Err(Error::Precondition(format!(
            "transformed representation needs X > 0, got {x_log}"
        )));
    }
    let inv_p = 1.0 / p;
    let pref = inv_p * (-x_log.ln() * inv_p).exp();
    let xu = |u: f64| (-(x_log * (u + 1.0)).ln() * inv_p).exp();
    let factor =
        |u: f64| Complex64::from_polar(pref * (u + 1.0).powf(-1.0 - inv_p), (-x_log * u).exp());
    let mut breaks = vec![0.0];
    for k in 0..6 {
        breaks.push(2f64.powi(k) / x_log);
    }
    breaks.push(DEEP_CUT / x_log);
    let (res, rule) = adaptive_rule(|u| factor(u) * psi.value(xu(u)), &breaks, tol)?;
    let body = InnerRule::from_parts(rule.mapped(xu, factor), res, None, psi)?;
    Ok(body.concat(deep_part(x_log, p, psi, tol)?))
}

/// `∫_{w_lo}^{w_max} e^{iw} g(w) dw` with `g` from [`l2_amplitude`].
fn l2_w_form<P: Profile>(
    x_log: f64,
    p: f64,
    psi: &P,
    w_lo: f64,
    tol: &ToleranceConfig,
) -> Result<InnerRule> {
    let r = support_of(psi)?;
    let ln_wmax = x_log - r.powf(-p);
    if ln_wmax <= w_lo.ln() {
        return Ok(InnerRule::empty());
    }
    let opts = TailOptions::default();
    let w0 = w_lo + opts.periods * 2.0 * PI;
    let interval = if ln_wmax > (TAIL_EDGE_FACTOR * w0).ln() {
        Interval::semi_infinite(w_lo)?
    } else {
        Interval::finite(w_lo, ln_wmax.exp())?
    };
    let amp = L2Amp { x_log, p, psi };
    let spec = OscillatoryIntegrand {
        amplitude: &amp,
        omega: 1.0,
        interval,
        grading_center: Some(0.0),
        options: opts,
    };
    let osc = oscillatory_rule(&spec, tol)?;
    let inv_p = 1.0 / p;
    let rule = osc.rule.mapped(
        |w| (-(x_log - w.ln()).ln() * inv_p).exp(),
        |w| Complex64::new(inv_p / w * (x_log - w.ln()).powf(-inv_p - 1.0), 0.0),
    );
    let tail = osc.tail_point.map(|w0| L2Tail {
        x_log,
        p,
        w0,
        order: opts.order,
    });
    InnerRule::from_parts(rule, osc.body, tail, psi)
}

fn l2_direct<P: Profile>(x_log: f64, p: f64, psi: &P, tol: &ToleranceConfig) -> Result<InnerRule> {
    let r = support_of(psi)?;
    let c = (-x_log.ln() / p).exp();
    if c >= r {
        return Ok(InnerRule::empty());
    }
    let t = x_log.exp();
    if x_log <= DIRECT_X_VARIABLE_MAX {
        let phase = |x: f64| Complex64::from_polar(1.0, t * crate::phase::flat_term(x, p));
        let breaks: Vec<f64> = (0..=16).map(|k| c + (r - c) * k as f64 / 16.0).collect();
        let (res, rule) = adaptive_rule(|x| phase(x) * psi.value(x), &breaks, tol)?;
        return InnerRule::from_parts(rule.mapped(|x| x, phase), res, None, psi);
    }
    // u = e^{−1/x^p}: (1/p) ∫_{1/t}^{u_r} e^{itu} u^{−1} z^{1/p+1} ψ(z^{1/p}) du, z = −1/ln u
    let inv_p = 1.0 / p;
    let u_r = (-r.powf(-p)).exp();
    let weight = |u: f64| {
        let z = -1.0 / u.ln();
        inv_p / u * z.powf(inv_p + 1.0)
    };
    let xu = |u: f64| (-1.0 / u.ln()).powf(inv_p);
    let amp = |u: f64| Complex64::new(weight(u) * psi.value(xu(u)), 0.0);
    let spec = OscillatoryIntegrand {
        amplitude: &amp,
        omega: t,
        interval: Interval::finite(1.0 / t, u_r)?,
        grading_center: Some(0.0),
        options: TailOptions::default(),
    };
    let osc = oscillatory_rule(&spec, tol)?;
    let rule = osc.rule.mapped(xu, |u| Complex64::new(weight(u), 0.0));
    InnerRule::from_parts(rule, osc.body, None, psi)
}

fn l_transformed<P: Profile>(
    x_log: f64,
    p: f64,
    psi: &P,
    tol: &ToleranceConfig,
) -> Result<InnerRule> {
    if !(x_log > 0.0) {
        return Err(Error::Precondition(format!(
            "transformed representation needs X > 0, got {x_log}"
        )));
    }
    let r = support_of(psi)?;
    let inv_p = 1.0 / p;
    let split = 4.0 * PI;
    let s_hi = (x_log - r.powf(-p)).min(split.ln());
    let mut out = deep_part(x_log, p, psi, tol)?;
    // s = ln w on [−40, s_hi]: (1/p) ∫ e^{i e^s} (X − s)^{−1/p−1} ψ((X − s)^{−1/p}) ds
    if s_hi > -DEEP_CUT {
        let xs = |s: f64| (-(x_log - s).ln() * inv_p).exp();
        let factor =
            |s: f64| Complex64::from_polar(inv_p * (x_log - s).powf(-inv_p - 1.0), s.exp());
        let mut breaks: Vec<f64> = (0..10)
            .map(|k| -DEEP_CUT + 4.0 * k as f64)
            .take_while(|&s| s < s_hi)
            .collect();
        breaks.push(s_hi);
        let (res, rule) = adaptive_rule(|s| factor(s) * psi.value(xs(s)), &breaks, tol)?;
        out = out.concat(InnerRule::from_parts(
            rule.mapped(xs, factor),
            res,
            None,
            psi,
        )?);
    }
    Ok(out.concat(l2_w_form(x_log, p, psi, split, tol)?))
}

/// Builds the rule for `kind` at `X = x_log`; `direct` selects the
/// definition-as-written representation.
pub(crate) fn inner_rule<P: Profile>(
    kind: InnerKind,
    direct: bool,
    x_log: f64,
    p: f64,
    reference: &P,
    tol: &ToleranceConfig,
) -> Result<InnerRule> {
    match (kind, direct) {
        (InnerKind::L1, true) => l1_direct(x_log, p, reference, tol),
        (InnerKind::L1, false) => l1_transformed(x_log, p, reference, tol),
        (InnerKind::L2, true) => l2_direct(x_log, p, reference, tol),
        (InnerKind::L2, false) => l2_w_form(x_log, p, reference, 1.0, tol),
        (InnerKind::L, true) => {
            Ok(l1_direct(x_log, p, reference, tol)?.concat(l2_direct(x_log, p, reference, tol)?))
        }
        (InnerKind::L, false) => l_transformed(x_log, p, reference, tol),
    }
}
