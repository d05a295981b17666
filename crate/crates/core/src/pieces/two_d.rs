//! Two-dimensional pieces: iterated integrals with an outer `x₂` integral
//! over inner x₁-integrals of amplitude slices.

use num_complex::Complex64;
use rayon::prelude::*;

use super::inner::{inner_rule, InnerKind, InnerRule};
use super::one_d::eval_l;
use super::power::{eval_k1_factor, eval_k2_factor, eval_s_power, power_integral, Cut};
use super::{
    resolve, Method2D, PieceId, PieceValue, Representation, X_DIRECT2D_MAX, X_ITERATED_MAX,
};
use crate::error::{Error, Result};
use crate::phase::{
    flat_term, standard_bump, Amplitude2D, FlatPhaseParams, RemainderSlice, X1Slice,
};
use crate::quad::{integrate_adaptive_noisy, Interval, QuadratureResult, Sample, ToleranceConfig};

/// Support half-widths, checked against the condition `e^{−1/r₁^p} < 1/2`.
fn supports(phi: &Amplitude2D, p: f64) -> Result<(f64, f64)> {
    let (r1, r2) = phi.support_box();
    if !(r1.is_finite() && r2.is_finite() && r1 >= 0.0 && r2 >= 0.0) {
        return Err(Error::Precondition(
            "two-dimensional amplitude must be compactly supported".into(),
        ));
    }
    if r1 > 0.0 && flat_term(r1, p) >= 0.5 {
        return Err(Error::Precondition(format!(
            "x1-support radius {r1} too large for p = {p}: need exp(-1/r^p) < 1/2"
        )));
    }
    Ok((r1, r2))
}

fn resolve_2d(repr: Representation, x_log: f64) -> Result<Representation> {
    let used = resolve(repr, x_log)?;
    if used == Representation::Transformed && x_log > X_ITERATED_MAX {
        return Err(Error::RepresentationRange {
            repr: "iterated",
            x: x_log,
            limit: X_ITERATED_MAX,
        });
    }
    Ok(used)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SliceKind {
    Phi,
    Remainder,
}

struct Outer<'a> {
    phi: &'a Amplitude2D,
    q: u32,
    x_log: f64,
    rule: &'a InnerRule,
}

impl Outer<'_> {
    fn slice_value(&self, kind: SliceKind, x2: f64, s1: f64, s2: f64) -> Complex64 {
        let r = match kind {
            SliceKind::Phi => self.rule.apply(&X1Slice {
                amp: self.phi,
                x2,
                s1,
                s2,
            }),
            SliceKind::Remainder => self.rule.apply(&RemainderSlice {
                amp: self.phi,
                x2,
                q: self.q,
            }),
        };
        r.map(|r| r.value)
            .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    }

    /// `∫_0^{x_max} e^{iσtx₂^q} x₂^k c(t^{1/q}x₂) L(t; slice(x₂)) dx₂`.
    #[allow(clippy::too_many_arguments)]
    fn integrate(
        &self,
        kind: SliceKind,
        sigma: f64,
        k: u32,
        cut: Cut,
        x_max: f64,
        s1: f64,
        s2: f64,
        tol: &ToleranceConfig,
    ) -> Result<QuadratureResult> {
        let res = power_integral(
            self.q,
            self.x_log,
            sigma,
            k,
            cut,
            x_max,
            |x2| Sample::exact(self.slice_value(kind, x2, s1, s2)),
            tol,
        )?;
        if !res.value.re.is_finite() || !res.value.im.is_finite() {
            return Err(Error::Precondition("non-finite inner evaluation".into()));
        }
        // the frozen inner rule perturbs every slice by about its relative
        // accuracy on the reference
        let inner = self.rule.rel_accuracy() * (res.value.norm() + res.abs_error_estimate);
        Ok(QuadratureResult {
            abs_error_estimate: res.abs_error_estimate + inner,
            converged: res.converged && self.rule.converged,
            n_evals: res.n_evals * self.rule.rule.len().max(1),
            ..res
        })
    }
}

/// Pieces of the first-quadrant integral `Ĩ^{(±)}(t)`:
/// `Ĩ^{(±)}, J⁽¹⁾, J⁽²⁾, K⁽¹⁾, K⁽²⁾, K⁽³⁾, H⁽¹⁾, H⁽²⁾, N⁽¹⁾, N⁽²⁾`.
pub fn eval_piece_2d(
    piece: PieceId,
    x_log: f64,
    phi: &Amplitude2D,
    params: &FlatPhaseParams,
    repr: Representation,
    tol: &ToleranceConfig,
) -> Result<PieceValue> {
    let p = params.p;
    let q = params.q;
    let (r1, r2) = supports(phi, p)?;
    let used = resolve_2d(repr, x_log)?;
    if r1 == 0.0 || r2 == 0.0 {
        return Ok(PieceValue::new(QuadratureResult::zero(), used));
    }
    let direct = used == Representation::Direct;
    let kind = match piece {
        PieceId::ITildePlus | PieceId::ITildeMinus => InnerKind::L,
        PieceId::J2 | PieceId::N1 | PieceId::N2 => InnerKind::L2,
        PieceId::J1 | PieceId::K1 | PieceId::K2 | PieceId::K3 | PieceId::H1 | PieceId::H2 => {
            InnerKind::L1
        }
        other => {
            return Err(Error::Precondition(format!(
                "{other} is not a two-dimensional piece"
            )))
        }
    };
    let reference = standard_bump(r1)?;
    let rule = inner_rule(kind, direct, x_log, p, &reference, tol)?;
    let outer = Outer {
        phi,
        q,
        x_log,
        rule: &rule,
    };
    let at_zero = || {
        rule.apply(&X1Slice {
            amp: phi,
            x2: 0.0,
            s1: 1.0,
            s2: 1.0,
        })
    };
    use SliceKind::{Phi, Remainder};
    let res = match piece {
        PieceId::ITildePlus => outer.integrate(Phi, 1.0, 0, Cut::One, r2, 1.0, 1.0, tol)?,
        PieceId::ITildeMinus => outer.integrate(Phi, -1.0, 0, Cut::One, r2, 1.0, 1.0, tol)?,
        PieceId::J1 | PieceId::J2 => outer.integrate(Phi, 1.0, 0, Cut::One, r2, 1.0, 1.0, tol)?,
        PieceId::N1 => outer.integrate(Phi, 1.0, 0, Cut::Alpha, r2, 1.0, 1.0, tol)?,
        PieceId::N2 => outer.integrate(Phi, 1.0, 0, Cut::Beta, r2, 1.0, 1.0, tol)?,
        PieceId::K3 => outer.integrate(Remainder, 1.0, 1, Cut::One, 2.0, 1.0, 1.0, tol)?,
        PieceId::H1 => outer.integrate(Remainder, 1.0, 1, Cut::Alpha, 2.0, 1.0, 1.0, tol)?,
        PieceId::H2 => outer.integrate(Remainder, 1.0, 1, Cut::Beta, 2.0, 1.0, 1.0, tol)?,
        PieceId::K1 => {
            let f = eval_k1_factor(q, x_log)?;
            let l = at_zero()?;
            QuadratureResult {
                value: f * l.value,
                abs_error_estimate: f.norm() * l.abs_error_estimate
                    + 4.0 * f64::EPSILON * (f * l.value).norm(),
                ..l
            }
        }
        PieceId::K2 => {
            let f = eval_k2_factor(q, x_log, tol)?;
            let l = at_zero()?;
            QuadratureResult {
                value: f.value * l.value,
                abs_error_estimate: f.value.norm() * l.abs_error_estimate
                    + f.abs_error_estimate * (l.value.norm() + l.abs_error_estimate),
                n_evals: f.n_evals + l.n_evals,
                converged: f.converged && l.converged,
            }
        }
        _ => unreachable!(),
    };
    Ok(PieceValue::new(res, used))
}

fn product(a: QuadratureResult, b: QuadratureResult) -> QuadratureResult {
    QuadratureResult {
        value: a.value * b.value,
        abs_error_estimate: a.value.norm() * b.abs_error_estimate
            + b.value.norm() * a.abs_error_estimate
            + a.abs_error_estimate * b.abs_error_estimate,
        n_evals: a.n_evals + b.n_evals,
        converged: a.converged && b.converged,
    }
}

/// `I_f(t;φ) = ∫_{ℝ²} e^{it[±x₂^q + e^{−1/|x₁|^p}]} φ(x₁,x₂) dx`.
pub fn eval_i2d(
    x_log: f64,
    phi: &Amplitude2D,
    params: &FlatPhaseParams,
    method: Method2D,
    repr: Representation,
    tol: &ToleranceConfig,
) -> Result<PieceValue> {
    let p = params.p;
    let q = params.q;
    let sign = params.sign.as_f64();
    let odd_sign = if q.is_multiple_of(2) { 1.0 } else { -1.0 };
    let (r1, r2) = supports(phi, p)?;
    if r1 == 0.0 || r2 == 0.0 {
        return Ok(PieceValue::new(
            QuadratureResult::zero(),
            resolve(repr, x_log)?,
        ));
    }
    match method {
        Method2D::Factored => {
            let Amplitude2D::Product(psi1, psi2) = phi else {
                return Err(Error::Precondition(
                    "factored method needs a product amplitude".into(),
                ));
            };
            let right = eval_l(x_log, psi1, p, repr, tol)?;
            let left = eval_l(x_log, &psi1.clone().reflected(), p, repr, tol)?;
            let up = eval_s_power(q, x_log, psi2, sign, tol)?;
            let down = eval_s_power(q, x_log, &psi2.clone().reflected(), sign * odd_sign, tol)?;
            let l = right.result().combine(left.result());
            let s = up.result().combine(down.result());
            Ok(PieceValue::new(product(l, s), right.representation_used))
        }
        Method2D::Iterated => {
            let used = resolve_2d(repr, x_log)?;
            let reference = standard_bump(r1)?;
            let rule = inner_rule(
                InnerKind::L,
                used == Representation::Direct,
                x_log,
                p,
                &reference,
                tol,
            )?;
            let outer = Outer {
                phi,
                q,
                x_log,
                rule: &rule,
            };
            let quadrants = [(1.0, 1.0), (-1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)];
            let parts: Vec<Result<QuadratureResult>> = quadrants
                .par_iter()
                .map(|&(s1, s2)| {
                    let sigma = if s2 > 0.0 { sign } else { sign * odd_sign };
                    outer.integrate(SliceKind::Phi, sigma, 0, Cut::One, r2, s1, s2, tol)
                })
                .collect();
            let mut total = QuadratureResult::zero();
            for part in parts {
                total = total.combine(part?);
            }
            Ok(PieceValue::new(total, used))
        }
        Method2D::Direct2D => {
            if !(0.0..=X_DIRECT2D_MAX).contains(&x_log) {
                return Err(Error::RepresentationRange {
                    repr: "direct2d",
                    x: x_log,
                    limit: X_DIRECT2D_MAX,
                });
            }
            let t = x_log.exp();
            let inner = |x1: f64| {
                let mut acc = QuadratureResult::zero();
                for (s2, sigma) in [(1.0, sign), (-1.0, sign * odd_sign)] {
                    let r = power_integral(
                        q,
                        x_log,
                        sigma,
                        0,
                        Cut::One,
                        r2,
                        |x2| Sample::exact(Complex64::new(phi.value(x1, s2 * x2), 0.0)),
                        tol,
                    );
                    match r {
                        Ok(r) => acc = acc.combine(r),
                        Err(_) => {
                            return Sample {
                                value: Complex64::new(f64::NAN, f64::NAN),
                                noise: f64::INFINITY,
                            }
                        }
                    }
                }
                let phase = Complex64::from_polar(1.0, t * flat_term(x1, p));
                Sample {
                    value: phase * acc.value,
                    noise: acc.abs_error_estimate,
                }
            };
            let mut total = QuadratureResult::zero();
            for (a, b) in [(-r1, 0.0), (0.0, r1)] {
                total = total.combine(integrate_adaptive_noisy(
                    inner,
                    Interval::finite(a, b)?,
                    tol,
                )?);
            }
            if !total.value.re.is_finite() || !total.value.im.is_finite() {
                return Err(Error::Precondition("non-finite inner evaluation".into()));
            }
            Ok(PieceValue::new(total, Representation::Direct))
        }
    }
}
