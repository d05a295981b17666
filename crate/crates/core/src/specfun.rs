//! Γ on the positive reals, the sine and cosine integrals, the oscillatory
//! tail `∫_W^∞ e^{iw}/w dw`, principal complex powers and the limit
//! constants `C_q`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) for x > 0 (Lanczos, g = 7, with reflection below 1/2).
pub fn gamma_real(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            function: "gamma_real",
            value: x,
        });
    }
    Ok(gamma_pos(x))
}

fn gamma_pos(x: f64) -> f64 {
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma_pos(1.0 - x));
    }
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
}

/// `(Si(x), Ci(x))` for x > 0.
///
/// Power series up to x = 4; beyond that the auxiliary functions come from
/// the continued fraction of `E₁(ix)`, evaluated with the modified Lentz
/// algorithm.
pub fn sin_cos_integrals(x: f64) -> Result<(f64, f64)> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            function: "sin_cos_integrals",
            value: x,
        });
    }
    if x <= 4.0 {
        Ok(si_ci_series(x))
    } else {
        Ok(si_ci_continued_fraction(x))
    }
}

fn si_ci_series(x: f64) -> (f64, f64) {
    let x2 = x * x;
    // Si = Σ (-1)^k x^{2k+1} / ((2k+1)(2k+1)!)
    // Ci = γ + ln x + Σ_{k≥1} (-1)^k x^{2k} / (2k (2k)!)
    let mut si = 0.0;
    let mut ci = 0.0;
    let mut term_s = x; // x^{2k+1}/(2k+1)!
    let mut term_c = 1.0; // x^{2k}/(2k)!
    for k in 0..60 {
        let n = 2 * k as i64;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        si += sign * term_s / (n + 1) as f64;
        if k > 0 {
            ci += sign * term_c / n as f64;
        }
        term_c *= x2 / ((n + 1) * (n + 2)) as f64;
        term_s *= x2 / ((n + 2) * (n + 3)) as f64;
        if term_s < 1e-18 * si.abs() && term_c < 1e-18 {
            break;
        }
    }
    (si, EULER_GAMMA + x.ln() + ci)
}

fn si_ci_continued_fraction(x: f64) -> (f64, f64) {
    let tiny = 1e-300;
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 1..1000 {
        let a = -((i * i) as f64);
        b += 2.0;
        d = (d * a + b).inv();
        c = b + c.inv() * a;
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            break;
        }
    }
    // h = e^{ix} E₁(ix)
    let h = Complex64::new(x.cos(), -x.sin()) * h;
    (FRAC_PI_2 + h.im, -h.re)
}

/// `∫_W^∞ e^{iw}/w dw = −Ci(W) − i·si(W)` with `si(W) = Si(W) − π/2`.
pub fn e1_tail(w: f64) -> Result<Complex64> {
    if !(w >= 1.0) || !w.is_finite() {
        return Err(Error::Domain {
            function: "e1_tail",
            value: w,
        });
    }
    let (si, ci) = sin_cos_integrals(w)?;
    Ok(Complex64::new(-ci, -(si - FRAC_PI_2)))
}

/// Principal branch `z^e = exp(e·(ln|z| + i Arg z))`, `Arg ∈ (−π, π)`.
pub fn principal_power(z: Complex64, exponent: f64) -> Result<Complex64> {
    if z.im == 0.0 && z.re <= 0.0 || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::BranchCut(format!("{z}")));
    }
    let ln_r = z.norm().ln();
    let arg = z.im.atan2(z.re);
    Ok(Complex64::from_polar(
        (exponent * ln_r).exp(),
        exponent * arg,
    ))
}

/// The limit constant of the flat-phase theorem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoremConstant {
    pub q: u32,
    pub value: Complex64,
}

/// `C_q = 4Γ(1/q+1)·e^{iπ/(2q)}` for even q, `4Γ(1/q+1)·cos(π/(2q))` for odd q.
pub fn c_constant(q: u32) -> Result<TheoremConstant> {
    if q < 2 {
        return Err(Error::Domain {
            function: "c_constant",
            value: q as f64,
        });
    }
    let qf = q as f64;
    let g = 4.0 * gamma_pos(1.0 / qf + 1.0);
    let theta = PI / (2.0 * qf);
    let value = if q.is_multiple_of(2) {
        Complex64::from_polar(g, theta)
    } else {
        Complex64::new(g * theta.cos(), 0.0)
    };
    Ok(TheoremConstant { q, value })
}
