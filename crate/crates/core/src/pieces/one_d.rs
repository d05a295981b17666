//! The one-dimensional flat-phase integrals
//! `L(t;ψ) = ∫_0^∞ e^{it e^{−1/x^p}} ψ(x) dx` and its pieces.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::inner::{inner_rule, InnerKind};
use super::{resolve, PieceValue, Representation};
use crate::error::Result;
use crate::jet::{Jet, Scalar};
use crate::phase::{a_of_z, Profile, ProfileDeriv, Smooth1D};
use crate::quad::{
    integrate_oscillatory, Interval, OscAmplitude, OscillatoryIntegrand, QuadratureResult, Sample,
    TailOptions, ToleranceConfig,
};

fn eval_inner(
    kind: InnerKind,
    x_log: f64,
    psi: &Smooth1D,
    p: f64,
    repr: Representation,
    tol: &ToleranceConfig,
) -> Result<PieceValue> {
    let used = resolve(repr, x_log)?;
    let rule = inner_rule(kind, used == Representation::Direct, x_log, p, psi, tol)?;
    Ok(PieceValue::new(rule.apply(psi)?, used))
}

/// `L(t;ψ)` over `x > 0`.
pub fn eval_l(
    x_log: f64,
    psi: &Smooth1D,
    p: f64,
    repr: Representation,
    tol: &ToleranceConfig,
) -> Result<PieceValue> {
    eval_inner(InnerKind::L, x_log, psi, p, repr, tol)
}

/// `L⁽¹⁾`: the part of `L` over `0 < x < X^{−1/p}`.
pub fn eval_l1(
    x_log: f64,
    psi: &Smooth1D,
    p: f64,
    repr: Representation,
    tol: &ToleranceConfig,
) -> Result<PieceValue> {
    eval_inner(InnerKind::L1, x_log, psi, p, repr, tol)
}

/// `L⁽²⁾`: the part of `L` over `x > X^{−1/p}`.
pub fn eval_l2(
    x_log: f64,
    psi: &Smooth1D,
    p: f64,
    repr: Representation,
    tol: &ToleranceConfig,
) -> Result<PieceValue> {
    eval_inner(InnerKind::L2, x_log, psi, p, repr, tol)
}

/// Boundary term of the integration by parts of `L⁽²⁾`:
/// `(i/p) e^i ψ̃(e^{−X}) X^{−1/p−1}`.
pub fn eval_m1(x_log: f64, psi: &Smooth1D, p: f64) -> Result<PieceValue> {
    resolve(Representation::Transformed, x_log)?;
    let inv_p = 1.0 / p;
    let x = (-x_log.ln() * inv_p).exp();
    let modulus = inv_p * psi.value(x) * (-(inv_p + 1.0) * x_log.ln()).exp();
    let value = Complex64::new(0.0, 1.0) * Complex64::from_polar(modulus, 1.0);
    Ok(PieceValue {
        value,
        abs_error_estimate: 4.0 * f64::EPSILON * value.norm(),
        representation_used: Representation::Transformed,
        converged: true,
        n_evals: 1,
    })
}

/// `w^{−2} (X − ln w)^{−1/p−1} a(w/t)`
fn m2_amplitude<S: Scalar, P: ProfileDeriv>(w: S, x_log: f64, p: f64, psi: &P) -> S {
    let z = (-w.ln()).add_cst(x_log);
    if z.value() <= 0.0 {
        return S::cst(0.0);
    }
    a_of_z(z.recip(), psi, p) * z.powf(-1.0 / p - 1.0) / (w * w)
}

struct M2Amp<'a> {
    x_log: f64,
    p: f64,
    psi: &'a Smooth1D,
}

impl OscAmplitude for M2Amp<'_> {
    fn sample(&self, w: f64) -> Sample {
        Sample::exact(Complex64::new(
            m2_amplitude(w, self.x_log, self.p, self.psi),
            0.0,
        ))
    }
    fn derivatives(&self, w: f64, n: usize) -> Option<Vec<Complex64>> {
        let g = m2_amplitude(Jet::variable(w), self.x_log, self.p, self.psi);
        (n <= crate::jet::JET_LEN).then(|| {
            (0..n)
                .map(|k| Complex64::new(g.derivative(k), 0.0))
                .collect()
        })
    }
}

/// Remaining integral of `L⁽²⁾` after the integration by parts:
/// `(i/p) ∫_1 e^{iw} w^{−2} (X − ln w)^{−1/p−1} a(w/t) dw`.
pub fn eval_m2(
    x_log: f64,
    psi: &Smooth1D,
    p: f64,
    repr: Representation,
    tol: &ToleranceConfig,
) -> Result<PieceValue> {
    let used = resolve(repr, x_log)?;
    let r = psi.support_radius();
    if !r.is_finite() {
        return Err(crate::error::Error::Precondition(
            "amplitude must be compactly supported".into(),
        ));
    }
    let ln_wmax = x_log - r.powf(-p);
    let factor = Complex64::new(0.0, 1.0 / p);
    if ln_wmax <= 0.0 {
        return Ok(PieceValue::new(QuadratureResult::zero(), used));
    }
    let opts = TailOptions::default();
    let res = if used == Representation::Direct {
        // u = w/t: (i/p)(1/t) ∫_{1/t}^{u_r} e^{itu} u^{−2} z^{1/p+1} a(u) du
        let t = x_log.exp();
        let amp = |u: f64| {
            let z = -1.0 / u.ln();
            Complex64::new(a_of_z(z, psi, p) * z.powf(1.0 / p + 1.0) / (u * u * t), 0.0)
        };
        let spec = OscillatoryIntegrand {
            amplitude: &amp,
            omega: t,
            interval: Interval::finite(1.0 / t, (-r.powf(-p)).exp())?,
            grading_center: Some(0.0),
            options: opts,
        };
        integrate_oscillatory(&spec, tol)?
    } else {
        let w0 = 1.0 + opts.periods * 2.0 * PI;
        let interval = if ln_wmax > (1e3 * w0).ln() {
            Interval::semi_infinite(1.0)?
        } else {
            Interval::finite(1.0, ln_wmax.exp())?
        };
        let amp = M2Amp { x_log, p, psi };
        let spec = OscillatoryIntegrand {
            amplitude: &amp,
            omega: 1.0,
            interval,
            grading_center: Some(0.0),
            options: opts,
        };
        integrate_oscillatory(&spec, tol)?
    };
    Ok(PieceValue::new(res.scaled(factor), used))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::standard_bump;
    use crate::quad::integrate_adaptive;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::with_rel(1e-11)
    }

    fn bump() -> Smooth1D {
        standard_bump(0.5).unwrap()
    }

    #[test]
    fn l1_direct_matches_transformed() {
        for &p in &[0.5, 1.0, 2.0] {
            for &x in &[5.0, 10.0, 25.0] {
                let d = eval_l1(x, &bump(), p, Representation::Direct, &tol()).unwrap();
                let t = eval_l1(x, &bump(), p, Representation::Transformed, &tol()).unwrap();
                assert!(
                    (d.value - t.value).norm() < 1e-9 * t.value.norm(),
                    "p={p} X={x}: {} {}",
                    d.value,
                    t.value
                );
            }
        }
    }

    #[test]
    fn l2_and_m2_direct_match_transformed() {
        for &p in &[0.5, 1.0, 2.0] {
            for &x in &[5.0, 8.0, 12.0, 25.0] {
                let d = eval_l2(x, &bump(), p, Representation::Direct, &tol()).unwrap();
                let t = eval_l2(x, &bump(), p, Representation::Transformed, &tol()).unwrap();
                assert!(
                    (d.value - t.value).norm() < 1e-8 * t.value.norm(),
                    "L2 p={p} X={x}: {} {}",
                    d.value,
                    t.value
                );
                let d = eval_m2(x, &bump(), p, Representation::Direct, &tol()).unwrap();
                let t = eval_m2(x, &bump(), p, Representation::Transformed, &tol()).unwrap();
                assert!(
                    (d.value - t.value).norm() < 1e-8 * t.value.norm(),
                    "M2 p={p} X={x}: {} {}",
                    d.value,
                    t.value
                );
            }
        }
    }

    #[test]
    fn whole_line_oracle_in_x() {
        // brute force over x with the raw phase at small X
        for &p in &[0.5, 1.0, 2.0] {
            for &x_log in &[2.0, 4.0] {
                let t = f64::exp(x_log);
                let f = |x: f64| {
                    Complex64::from_polar(bump().value(x), t * crate::phase::flat_term(x, p))
                };
                let want = integrate_adaptive(
                    f,
                    Interval::finite(0.0, 0.5).unwrap(),
                    &ToleranceConfig::with_rel(1e-13),
                )
                .unwrap();
                let l = eval_l(x_log, &bump(), p, Representation::Transformed, &tol()).unwrap();
                let l1 = eval_l1(x_log, &bump(), p, Representation::Transformed, &tol()).unwrap();
                let l2 = eval_l2(x_log, &bump(), p, Representation::Transformed, &tol()).unwrap();
                assert!((l.value - want.value).norm() < 1e-9, "p={p} X={x_log}");
                assert!(
                    (l1.value + l2.value - want.value).norm() < 1e-9,
                    "p={p} X={x_log}"
                );
            }
        }
    }

    #[test]
    fn integration_by_parts_split() {
        for &p in &[0.5, 1.0, 2.0] {
            for &x in &[5.0, 10.0, 20.0, 100.0] {
                let l2 = eval_l2(x, &bump(), p, Representation::Transformed, &tol()).unwrap();
                let m1 = eval_m1(x, &bump(), p).unwrap();
                let m2 = eval_m2(x, &bump(), p, Representation::Transformed, &tol()).unwrap();
                let bound = 1e-9 * l2.value.norm() + l2.abs_error_estimate + m2.abs_error_estimate;
                assert!(
                    (l2.value - m1.value - m2.value).norm() < bound,
                    "p={p} X={x}"
                );
            }
        }
    }

    #[test]
    fn zero_amplitude() {
        let z = Smooth1D::Zero.times(bump());
        for repr in [Representation::Direct, Representation::Transformed] {
            assert_eq!(
                eval_l1(10.0, &z, 1.0, repr, &tol()).unwrap().value,
                Complex64::new(0.0, 0.0)
            );
            assert_eq!(
                eval_l2(10.0, &z, 1.0, repr, &tol()).unwrap().value,
                Complex64::new(0.0, 0.0)
            );
            assert_eq!(
                eval_m2(10.0, &z, 1.0, repr, &tol()).unwrap().value,
                Complex64::new(0.0, 0.0)
            );
        }
        assert_eq!(
            eval_m1(10.0, &z, 1.0).unwrap().value,
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn large_x_is_finite() {
        for &p in &[0.5, 1.0, 2.0] {
            let l1 = eval_l1(400.0, &bump(), p, Representation::Transformed, &tol()).unwrap();
            let scaled = l1.value * 400f64.powf(1.0 / p);
            assert!((scaled - 1.0).norm() < 0.05, "p={p}: {scaled}");
            let l2 = eval_l2(400.0, &bump(), p, Representation::Transformed, &tol()).unwrap();
            assert!(l2.value.norm().is_finite() && l2.converged);
        }
    }

    #[test]
    fn direct_rejected_beyond_range() {
        assert!(eval_l1(31.0, &bump(), 1.0, Representation::Direct, &tol()).is_err());
    }
}
