use num_complex::Complex64;

use crate::error::{Error, Result};

/// k-term integration-by-parts expansion of `∫_W^∞ e^{iωx} s(x) dx`:
///
/// `Σ_{j<k} (-1)^{j+1} e^{iωW} s^{(j)}(W) / (iω)^{j+1}`
///
/// `derivs[j]` holds `s^{(j)}(W)`; at least `k` entries are required.
pub fn oscillatory_tail(derivs: &[Complex64], omega: f64, w: f64, k: usize) -> Result<Complex64> {
    Ok(tail_terms(derivs, omega, w, k)?.0)
}

/// Tail value and the magnitude of the first omitted term (or of the last
/// included term when no further derivative is available).
pub(crate) fn tail_terms(
    derivs: &[Complex64],
    omega: f64,
    w: f64,
    k: usize,
) -> Result<(Complex64, f64)> {
    if omega == 0.0 {
        return Err(Error::ZeroFrequency);
    }
    if k == 0 || derivs.len() < k {
        return Err(Error::Precondition(format!(
            "tail of order {k} needs {k} derivatives, got {}",
            derivs.len()
        )));
    }
    let phase = Complex64::from_polar(1.0, omega * w);
    let inv = Complex64::new(0.0, omega).inv();
    let mut pw = inv;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut last = 0.0;
    for (j, d) in derivs.iter().enumerate().take(k + 1) {
        let sign = if j % 2 == 0 { -1.0 } else { 1.0 };
        let term = phase * d * pw * sign;
        if j < k {
            sum += term;
            last = term.norm();
        } else {
            last = term.norm();
        }
        pw *= inv;
    }
    Ok((sum, last))
}
