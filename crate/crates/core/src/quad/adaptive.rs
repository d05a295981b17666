use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use super::gauss::{WG, WGK, XGK};
use super::{Interval, LinearRule, QuadratureResult, Sample, ToleranceConfig};
use crate::error::{Error, Result};

const EPS: f64 = f64::EPSILON;

#[derive(Debug, Clone, Copy)]
pub(crate) struct PanelEstimate {
    pub value: Complex64,
    pub err: f64,
    pub evals: usize,
}

struct Queued {
    err: f64,
    idx: usize,
}

impl PartialEq for Queued {
    fn eq(&self, o: &Self) -> bool {
        self.err.total_cmp(&o.err) == Ordering::Equal
    }
}
impl Eq for Queued {}
impl PartialOrd for Queued {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Queued {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err.total_cmp(&o.err)
    }
}

/// Globally adaptive bisection driver. `rule(a, b)` integrates one panel;
/// the panel with the largest error estimate is bisected until the summed
/// estimate meets the tolerance or the budget runs out.
pub(crate) fn adapt<R>(rule: R, breaks: &[f64], tol: &ToleranceConfig) -> QuadratureResult
where
    R: FnMut(f64, f64) -> PanelEstimate,
{
    adapt_panels(rule, breaks, tol).0
}

/// As [`adapt`], also returning the final partition in increasing order.
pub(crate) fn adapt_panels<R>(
    mut rule: R,
    breaks: &[f64],
    tol: &ToleranceConfig,
) -> (QuadratureResult, Vec<(f64, f64)>)
where
    R: FnMut(f64, f64) -> PanelEstimate,
{
    let mut panels: Vec<(f64, f64, PanelEstimate)> = Vec::with_capacity(64);
    let mut heap = BinaryHeap::new();
    let mut evals = 0usize;
    for w in breaks.windows(2) {
        let est = rule(w[0], w[1]);
        evals += est.evals;
        heap.push(Queued {
            err: est.err,
            idx: panels.len(),
        });
        panels.push((w[0], w[1], est));
    }
    let mut total: Complex64 = panels.iter().map(|p| p.2.value).sum();
    let mut err: f64 = panels.iter().map(|p| p.2.err).sum();
    let mut splits = 0usize;
    let mut converged = err <= tol.target(total);
    while !converged {
        if splits >= tol.max_subdivisions || evals >= tol.max_evals {
            break;
        }
        let Some(Queued { idx, .. }) = heap.pop() else {
            break;
        };
        let (a, b, old) = panels[idx];
        let mid = 0.5 * (a + b);
        if !(mid > a && mid < b) {
            continue;
        }
        let left = rule(a, mid);
        let right = rule(mid, b);
        evals += left.evals + right.evals;
        splits += 1;
        total += left.value + right.value - old.value;
        err += left.err + right.err - old.err;
        panels[idx] = (a, mid, left);
        heap.push(Queued { err: left.err, idx });
        heap.push(Queued {
            err: right.err,
            idx: panels.len(),
        });
        panels.push((mid, b, right));
        if splits.is_multiple_of(64) {
            total = panels.iter().map(|p| p.2.value).sum();
            err = panels.iter().map(|p| p.2.err).sum();
        }
        converged = err <= tol.target(total);
    }
    // final exact resummation
    panels.sort_by(|x, y| x.0.total_cmp(&y.0));
    let total: Complex64 = panels.iter().map(|p| p.2.value).sum();
    let err: f64 = panels.iter().map(|p| p.2.err).sum();
    let result = QuadratureResult {
        value: total,
        abs_error_estimate: err,
        n_evals: evals,
        converged: err <= tol.target(total),
    };
    (result, panels.iter().map(|p| (p.0, p.1)).collect())
}

/// 21-point Kronrod estimate on [a, b] with the QUADPACK error heuristic,
/// plus the propagated noise of the samples.
pub(crate) fn gk21_panel<F>(f: &F, a: f64, b: f64) -> PanelEstimate
where
    F: Fn(f64) -> Sample + ?Sized,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut fv = [Complex64::new(0.0, 0.0); 21];
    let mut noise = 0.0;
    let centre = f(c);
    fv[10] = centre.value;
    noise += WGK[10] * centre.noise;
    for j in 0..10 {
        let dx = h * XGK[j];
        let l = f(c - dx);
        let r = f(c + dx);
        fv[j] = l.value;
        fv[20 - j] = r.value;
        noise += WGK[j] * (l.noise + r.noise);
    }
    let mut resk = fv[10] * WGK[10];
    let mut resg = Complex64::new(0.0, 0.0);
    let mut resabs = WGK[10] * fv[10].norm();
    for j in 0..10 {
        let pair = fv[j] + fv[20 - j];
        resk += pair * WGK[j];
        resabs += WGK[j] * (fv[j].norm() + fv[20 - j].norm());
        if j % 2 == 1 {
            resg += pair * WG[j / 2];
        }
    }
    let mean = resk * 0.5;
    let mut resasc = WGK[10] * (fv[10] - mean).norm();
    for j in 0..10 {
        resasc += WGK[j] * ((fv[j] - mean).norm() + (fv[20 - j] - mean).norm());
    }
    let hh = h.abs();
    let resabs = resabs * hh;
    let resasc = resasc * hh;
    let mut err = ((resk - resg) * h).norm();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * EPS) {
        err = err.max(50.0 * EPS * resabs);
    }
    PanelEstimate {
        value: resk * h,
        err: err + hh * noise,
        evals: 21,
    }
}

/// Nodes and weights of the 21-point Kronrod rule on [a, b].
pub(crate) fn gk21_nodes(a: f64, b: f64) -> ([f64; 21], [f64; 21]) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut x = [c; 21];
    let mut w = [h * WGK[10]; 21];
    for j in 0..10 {
        x[j] = c - h * XGK[j];
        x[20 - j] = c + h * XGK[j];
        w[j] = h * WGK[j];
        w[20 - j] = h * WGK[j];
    }
    (x, w)
}

/// Adaptive Gauss–Kronrod quadrature of a complex integrand over a finite
/// interval. Budget exhaustion is not an error: the best value is returned
/// with `converged == false`.
pub fn integrate_adaptive<F>(f: F, iv: Interval, tol: &ToleranceConfig) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Complex64,
{
    integrate_adaptive_noisy(|x| Sample::exact(f(x)), iv, tol)
}

/// As [`integrate_adaptive`], for integrands that carry their own error.
pub fn integrate_adaptive_noisy<F>(
    f: F,
    iv: Interval,
    tol: &ToleranceConfig,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Sample,
{
    tol.validate()?;
    if !iv.is_finite() {
        return Err(Error::InvalidInterval {
            lo: iv.lo,
            hi: iv.hi,
        });
    }
    Ok(adapt(|a, b| gk21_panel(&f, a, b), &[iv.lo, iv.hi], tol))
}

/// Adaptive Gauss–Kronrod on the given breakpoints, returning the result
/// together with the frozen 21-point rule on the final partition.
pub fn adaptive_rule<F>(
    f: F,
    breaks: &[f64],
    tol: &ToleranceConfig,
) -> Result<(QuadratureResult, LinearRule)>
where
    F: Fn(f64) -> Complex64,
{
    tol.validate()?;
    if breaks.len() < 2
        || breaks.iter().any(|b| !b.is_finite())
        || breaks.windows(2).any(|w| w[1] <= w[0])
    {
        return Err(Error::InvalidInterval {
            lo: breaks.first().copied().unwrap_or(f64::NAN),
            hi: breaks.last().copied().unwrap_or(f64::NAN),
        });
    }
    let g = |x: f64| Sample::exact(f(x));
    let (res, panels) = adapt_panels(|a, b| gk21_panel(&g, a, b), breaks, tol);
    let mut rule = LinearRule::default();
    for (a, b) in panels {
        let (x, w) = gk21_nodes(a, b);
        for j in 0..21 {
            rule.push(x[j], Complex64::new(w[j], 0.0));
        }
    }
    Ok((res, rule))
}
