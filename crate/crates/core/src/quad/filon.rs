//! Filon–Clenshaw–Curtis panels.
//!
//! On a panel `[a, b] = m + h[-1, 1]` the amplitude is interpolated at the 17
//! Chebyshev extrema, expanded in Chebyshev polynomials, and each `T_k` is
//! integrated against `e^{iωx}` exactly. The 9-point interpolant on the nested
//! subset of nodes supplies the error estimate.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use super::adaptive::{adapt, PanelEstimate};
use super::gauss::gl64;
use super::{Interval, QuadratureResult, Sample, ToleranceConfig};
use crate::error::{Error, Result};

pub(crate) const DEGREE: usize = 16;
const HALF: usize = DEGREE / 2;
/// Below this |ωh| the moments come from a 64-point Gauss rule; above it the
/// forward recurrence is stable for every k ≤ DEGREE.
const RECURRENCE_MIN_KAPPA: f64 = 24.0;

struct Tables {
    nodes: [f64; DEGREE + 1],
    cos16: [[f64; DEGREE + 1]; DEGREE + 1],
    cos8: [[f64; HALF + 1]; HALF + 1],
    /// T_k at the 64 Gauss–Legendre nodes.
    cheb_at_gl: Vec<[f64; DEGREE + 1]>,
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| {
        let mut nodes = [0.0; DEGREE + 1];
        let mut cos16 = [[0.0; DEGREE + 1]; DEGREE + 1];
        let mut cos8 = [[0.0; HALF + 1]; HALF + 1];
        for j in 0..=DEGREE {
            nodes[j] = (PI * j as f64 / DEGREE as f64).cos();
            for k in 0..=DEGREE {
                cos16[k][j] = (PI * ((j * k) % (2 * DEGREE)) as f64 / DEGREE as f64).cos();
            }
        }
        for j in 0..=HALF {
            for k in 0..=HALF {
                cos8[k][j] = (PI * ((j * k) % (2 * HALF)) as f64 / HALF as f64).cos();
            }
        }
        // exact values at the symmetric nodes
        nodes[HALF] = 0.0;
        let cheb_at_gl = gl64()
            .nodes
            .iter()
            .map(|&y| {
                let mut t = [0.0; DEGREE + 1];
                t[0] = 1.0;
                t[1] = y;
                for k in 2..=DEGREE {
                    t[k] = 2.0 * y * t[k - 1] - t[k - 2];
                }
                t
            })
            .collect();
        Tables {
            nodes,
            cos16,
            cos8,
            cheb_at_gl,
        }
    })
}

/// `ν_k = ∫_{-1}^{1} T_k(y) e^{iω(m + h y)} dy` for k = 0..=DEGREE.
fn moments(omega: f64, a: f64, b: f64) -> [Complex64; DEGREE + 1] {
    let h = 0.5 * (b - a);
    let kappa = omega * h;
    let mut nu = [Complex64::new(0.0, 0.0); DEGREE + 1];
    let ea = Complex64::from_polar(1.0, omega * a);
    if kappa.abs() < RECURRENCE_MIN_KAPPA {
        let gl = gl64();
        let tb = tables();
        for (i, (&y, &w)) in gl.nodes.iter().zip(&gl.weights).enumerate() {
            let e = ea * Complex64::from_polar(w, kappa * (1.0 + y));
            let t = &tb.cheb_at_gl[i];
            for k in 0..=DEGREE {
                nu[k] += e * t[k];
            }
        }
        return nu;
    }
    let eb = Complex64::from_polar(1.0, omega * b);
    let ik = Complex64::new(0.0, kappa);
    let boundary = |k: usize| {
        if k.is_multiple_of(2) {
            eb - ea
        } else {
            eb + ea
        }
    };
    // ν_k = (B_k − D_k)/(iκ), D_k = ∫ T_k' e^{iκy}, with
    // D_{k+1}/(k+1) − D_{k−1}/(k−1) = 2ν_k for k ≥ 2.
    nu[0] = (eb - ea) / ik;
    let mut d_prev = nu[0]; // D_1
    nu[1] = (boundary(1) - d_prev) / ik;
    let mut d_cur = nu[1] * 4.0; // D_2
    nu[2] = (boundary(2) - d_cur) / ik;
    for k in 2..DEGREE {
        let d_next = (nu[k] * 2.0 + d_prev / (k as f64 - 1.0)) * (k as f64 + 1.0);
        nu[k + 1] = (boundary(k + 1) - d_next) / ik;
        d_prev = d_cur;
        d_cur = d_next;
    }
    nu
}

pub(crate) fn filon_panel_sampled<F>(f: &F, omega: f64, a: f64, b: f64) -> PanelEstimate
where
    F: Fn(f64) -> Sample + ?Sized,
{
    let tb = tables();
    let m = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut vals = [Complex64::new(0.0, 0.0); DEGREE + 1];
    let mut noise: f64 = 0.0;
    let mut fmax: f64 = 0.0;
    for j in 0..=DEGREE {
        let x = if j == 0 {
            b
        } else if j == DEGREE {
            a
        } else {
            m + h * tb.nodes[j]
        };
        let s = f(x);
        vals[j] = s.value;
        noise = noise.max(s.noise);
        fmax = fmax.max(s.value.norm());
    }
    let nu = moments(omega, a, b);

    let mut c16 = [Complex64::new(0.0, 0.0); DEGREE + 1];
    for (k, ck) in c16.iter_mut().enumerate() {
        let row = &tb.cos16[k];
        let mut s = (vals[0] * row[0] + vals[DEGREE] * row[DEGREE]) * 0.5;
        for j in 1..DEGREE {
            s += vals[j] * row[j];
        }
        *ck = s * (2.0 / DEGREE as f64);
    }
    let mut c8 = [Complex64::new(0.0, 0.0); HALF + 1];
    for (k, ck) in c8.iter_mut().enumerate() {
        let row = &tb.cos8[k];
        let mut s = (vals[0] * row[0] + vals[DEGREE] * row[HALF]) * 0.5;
        for j in 1..HALF {
            s += vals[2 * j] * row[j];
        }
        *ck = s * (2.0 / HALF as f64);
    }
    let sum_cheb = |c: &[Complex64]| {
        let n = c.len() - 1;
        let mut s = Complex64::new(0.0, 0.0);
        for (k, ck) in c.iter().enumerate() {
            let w = if k == 0 || k == n { 0.5 } else { 1.0 };
            s += ck * nu[k] * w;
        }
        s * h
    };
    let i16 = sum_cheb(&c16);
    let i8 = sum_cheb(&c8);
    let hh = h.abs();
    let coarse = (i16 - i8).norm();
    let tail = c16[DEGREE - 1].norm() + 0.5 * c16[DEGREE].norm();
    let head = c16[HALF - 1].norm() + c16[HALF].norm();
    let ratio = if head > 0.0 {
        tail / head
    } else if tail > 0.0 {
        1.0
    } else {
        0.0
    };
    // rounding in the sum is relative to the size of the moments, O(min(1, 1/κ))
    let floor = 100.0 * f64::EPSILON * hh * fmax * (4.0 / (omega * hh).abs()).min(2.0);
    let err = (coarse * ratio.sqrt().min(1.0)).max(floor) + 2.0 * hh * noise;
    PanelEstimate {
        value: i16,
        err,
        evals: DEGREE + 1,
    }
}

/// Nodes `x_j` and complex weights `W_j` such that `Σ W_j s(x_j)` is the
/// degree-16 panel value of `∫_a^b e^{iωx} s(x) dx`.
pub(crate) fn filon_nodes(
    omega: f64,
    a: f64,
    b: f64,
) -> ([f64; DEGREE + 1], [Complex64; DEGREE + 1]) {
    let tb = tables();
    let m = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let nu = moments(omega, a, b);
    let mut x = [0.0; DEGREE + 1];
    let mut w = [Complex64::new(0.0, 0.0); DEGREE + 1];
    for j in 0..=DEGREE {
        x[j] = if j == 0 {
            b
        } else if j == DEGREE {
            a
        } else {
            m + h * tb.nodes[j]
        };
        let mut s = Complex64::new(0.0, 0.0);
        for k in 0..=DEGREE {
            let wk = if k == 0 || k == DEGREE { 0.5 } else { 1.0 };
            s += nu[k] * (wk * tb.cos16[k][j]);
        }
        let wj = if j == 0 || j == DEGREE { 0.5 } else { 1.0 };
        w[j] = s * (h * wj * 2.0 / DEGREE as f64);
    }
    (x, w)
}

/// A single Filon–Clenshaw–Curtis panel. Exact (to rounding) whenever `s` is
/// a polynomial of degree ≤ 16, for any `ω`.
pub fn filon_panel<F>(s: F, omega: f64, a: f64, b: f64) -> QuadratureResult
where
    F: Fn(f64) -> Complex64,
{
    let f = |x: f64| Sample::exact(s(x));
    let est = filon_panel_sampled(&f, omega, a, b);
    QuadratureResult {
        value: est.value,
        abs_error_estimate: est.err,
        n_evals: est.evals,
        converged: true,
    }
}

/// `∫_a^b e^{iωx} s(x) dx` by adaptive Filon–Clenshaw–Curtis panels.
pub fn integrate_filon<F>(
    s: F,
    omega: f64,
    iv: Interval,
    tol: &ToleranceConfig,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Complex64,
{
    tol.validate()?;
    if !iv.is_finite() {
        return Err(Error::InvalidInterval {
            lo: iv.lo,
            hi: iv.hi,
        });
    }
    let f = |x: f64| Sample::exact(s(x));
    Ok(adapt(
        |a, b| filon_panel_sampled(&f, omega, a, b),
        &[iv.lo, iv.hi],
        tol,
    ))
}
