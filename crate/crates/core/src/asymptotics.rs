//! Scaled quantities, extrapolation in `s = 1/X`, and the verification
//! runners for the limits and decay bounds.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::phase::{Amplitude2D, FlatPhaseParams, Sign, Smooth1D};
use crate::pieces::{
    eval_i2d, eval_l1, eval_l2, eval_piece, AmplitudeRef, EvalRequest, Method2D, PieceId,
    PieceValue, Representation, X_ITERATED_MAX,
};
use crate::quad::ToleranceConfig;
use crate::specfun::{c_constant, e1_tail};

/// Largest last-octave log-log slope of `|scaled|` still counted as
/// non-increasing: sequences that have settled to within a percent of their
/// limit show slopes up to about 0.03.
pub const BOUND_SLOPE_MAX: f64 = 0.05;

/// Allowed deviation of the Newton-law octave ratio from `2^{1/p}`.
pub const FALSIFY_RATIO_TOL: f64 = 0.2;

/// Largest last-octave relative change of the correctly scaled sequence.
pub const FALSIFY_CONVERGENCE_TOL: f64 = 0.05;

/// Normalization `t^{a}(log t)^{b}`, with `a = t_exponent`, `b = logt_exponent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingLaw {
    pub t_exponent: f64,
    pub logt_exponent: f64,
}

impl ScalingLaw {
    pub const IDENTITY: ScalingLaw = ScalingLaw {
        t_exponent: 0.0,
        logt_exponent: 0.0,
    };

    pub fn new(t_exponent: f64, logt_exponent: f64) -> Result<Self> {
        if !t_exponent.is_finite() || !logt_exponent.is_finite() {
            return Err(Error::Precondition(format!(
                "scaling exponents must be finite, got ({t_exponent}, {logt_exponent})"
            )));
        }
        Ok(ScalingLaw {
            t_exponent,
            logt_exponent,
        })
    }

    /// `t^{1/q}(log t)^{1/p}`.
    pub fn theorem(p: f64, q: u32) -> Self {
        ScalingLaw {
            t_exponent: 1.0 / q as f64,
            logt_exponent: 1.0 / p,
        }
    }

    /// `ln(t^a X^b)` at `X = log t`.
    pub fn log_factor(&self, x_log: f64) -> f64 {
        let mut f = self.t_exponent * x_log;
        if self.logt_exponent != 0.0 {
            f += self.logt_exponent * x_log.ln();
        }
        f
    }
}

/// Normalization under which `piece` stays bounded (and, for the leading
/// pieces, tends to a nonzero limit). `K⁽²⁾` decays faster than any power
/// of `t`; it gets the law of `K⁽¹⁾`.
pub fn decay_law(piece: PieceId, p: f64, q: u32) -> ScalingLaw {
    let (a, b) = (1.0 / q as f64, 1.0 / p);
    let (t_exponent, logt_exponent) = match piece {
        PieceId::L | PieceId::L1 => (0.0, b),
        PieceId::L2 | PieceId::M1 | PieceId::M2 => (0.0, b + 1.0),
        PieceId::SPower => (a, 0.0),
        PieceId::I2D | PieceId::ITildePlus | PieceId::ITildeMinus => (a, b),
        PieceId::J1 | PieceId::K1 | PieceId::K2 => (a, b),
        PieceId::J2 | PieceId::N1 | PieceId::N2 => (a, b + 1.0),
        PieceId::K3 | PieceId::H1 | PieceId::H2 => (2.0 * a, b),
    };
    ScalingLaw {
        t_exponent,
        logt_exponent,
    }
}

/// `v·e^{f}`, applied in steps of at most `e^{600}` so that no factor
/// overflows on its own.
fn times_exp(mut v: Complex64, f: f64) -> Complex64 {
    const STEP: f64 = 600.0;
    let mut rest = f;
    while rest.abs() > STEP && v != Complex64::new(0.0, 0.0) {
        let step = STEP.copysign(rest);
        v *= step.exp();
        rest -= step;
    }
    v * rest.exp()
}

fn check_x(x_log: f64, function: &'static str) -> Result<()> {
    if !(x_log > 1.0) || !x_log.is_finite() {
        return Err(Error::Domain {
            function,
            value: x_log,
        });
    }
    Ok(())
}

/// `value · e^{X·a} · X^{b}`, with the factor kept in log form.
pub fn scaled_value(value: Complex64, x_log: f64, law: ScalingLaw) -> Result<Complex64> {
    check_x(x_log, "scaled_value")?;
    let s = times_exp(value, law.log_factor(x_log));
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::Precondition(format!(
            "scaled value overflows at X = {x_log}: |value| = {:e} is inconsistent with the law",
            value.norm()
        )));
    }
    Ok(s)
}

/// Inverse of [`scaled_value`].
pub fn unscaled_value(scaled: Complex64, x_log: f64, law: ScalingLaw) -> Result<Complex64> {
    check_x(x_log, "unscaled_value")?;
    Ok(times_exp(scaled, -law.log_factor(x_log)))
}

/// Strictly increasing list of `X = log t` values, all above 1.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    xs: Vec<f64>,
}

impl GridSpec {
    pub fn new(xs: Vec<f64>) -> Result<Self> {
        if xs.is_empty() {
            return Err(Error::DegenerateGrid("empty grid".into()));
        }
        if let Some(x) = xs.iter().find(|x| !(**x > 1.0) || !x.is_finite()) {
            return Err(Error::DegenerateGrid(format!(
                "grid values must be finite and > 1, got {x}"
            )));
        }
        if let Some(w) = xs.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::DegenerateGrid(format!(
                "grid must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        Ok(GridSpec { xs })
    }

    /// `{25, 50, 100, 200, 400}`.
    pub fn limits() -> Self {
        GridSpec {
            xs: vec![25.0, 50.0, 100.0, 200.0, 400.0],
        }
    }

    /// `{10, 15, 20, 25, 30}`.
    pub fn bounds() -> Self {
        GridSpec {
            xs: vec![10.0, 15.0, 20.0, 25.0, 30.0],
        }
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn max(&self) -> f64 {
        *self.xs.last().unwrap()
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec::limits()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitEstimate {
    pub c_hat: Complex64,
    pub fit_degree: usize,
    pub residual_rms: f64,
    pub grid: GridSpec,
}

/// Least-squares fit of `c₀ + c₁s + … + c_d s^d` in `s = 1/X`, separately
/// for real and imaginary parts; returns `c₀`.
pub fn extrapolate(values: &[(f64, Complex64)], degree: usize) -> Result<LimitEstimate> {
    if values.len() < degree + 2 {
        return Err(Error::DegenerateGrid(format!(
            "degree {degree} fit needs at least {} points, got {}",
            degree + 2,
            values.len()
        )));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let grid = GridSpec::new(sorted.iter().map(|v| v.0).collect())?;
    let n = sorted.len();
    let cols = degree + 1;
    let mut a = DMatrix::<f64>::from_fn(n, cols, |i, j| sorted[i].0.recip().powi(j as i32));
    // column scaling keeps the Vandermonde matrix well conditioned
    let scales: Vec<f64> = (0..cols).map(|j| a.column(j).amax()).collect();
    for (j, s) in scales.iter().enumerate() {
        a.column_mut(j).scale_mut(s.recip());
    }
    let b = DMatrix::<f64>::from_fn(n, 2, |i, j| {
        if j == 0 {
            sorted[i].1.re
        } else {
            sorted[i].1.im
        }
    });
    let svd = a.clone().svd(true, true);
    let coef = svd
        .solve(&b, 1e-14)
        .map_err(|e| Error::DegenerateGrid(e.to_string()))?;
    let resid = &a * &coef - &b;
    let residual_rms = (resid.norm_squared() / n as f64).sqrt();
    let c_hat = Complex64::new(coef[(0, 0)], coef[(0, 1)]) / scales[0];
    Ok(LimitEstimate {
        c_hat,
        fit_degree: degree,
        residual_rms,
        grid,
    })
}

/// One evaluated grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridValue {
    pub x_log: f64,
    pub value: Complex64,
    pub abs_err: f64,
    pub scaled: Complex64,
    pub converged: bool,
}

fn grid_values<F>(grid: &GridSpec, law: ScalingLaw, eval: F) -> Result<Vec<GridValue>>
where
    F: Fn(f64) -> Result<PieceValue> + Sync,
{
    grid.xs()
        .par_iter()
        .map(|&x| {
            let v = eval(x)?;
            Ok(GridValue {
                x_log: x,
                value: v.value,
                abs_err: v.abs_error_estimate,
                scaled: scaled_value(v.value, x, law)?,
                converged: v.converged,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub claim: String,
    pub piece: PieceId,
    pub law: ScalingLaw,
    pub target: Complex64,
    pub estimate: LimitEstimate,
    pub rel_error: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub values: Vec<GridValue>,
}

impl VerificationReport {
    fn assemble(
        claim: String,
        piece: PieceId,
        law: ScalingLaw,
        target: Complex64,
        values: Vec<GridValue>,
        opts: &VerifyOptions,
    ) -> Result<Self> {
        let pts: Vec<_> = values.iter().map(|v| (v.x_log, v.scaled)).collect();
        let estimate = extrapolate(&pts, opts.fit_degree)?;
        let diff = (estimate.c_hat - target).norm();
        let rel_error = if target.norm() > 0.0 {
            diff / target.norm()
        } else {
            diff
        };
        Ok(VerificationReport {
            claim,
            piece,
            law,
            target,
            estimate,
            rel_error,
            tolerance: opts.tolerance,
            pass: rel_error <= opts.tolerance,
            values,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub fit_degree: usize,
    /// Relative tolerance on the extrapolated limit.
    pub tolerance: f64,
    pub quad: ToleranceConfig,
}

impl VerifyOptions {
    pub fn with_tolerance(tolerance: f64) -> Self {
        VerifyOptions {
            fit_degree: 2,
            tolerance,
            quad: ToleranceConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaPart {
    /// `X^{1/p}·L⁽¹⁾ → ψ(0)`.
    I,
    /// `X^{1/p+1}·L⁽²⁾ → ψ(0)·∫_1^∞ e^{iw}/w dw`.
    II,
}

impl LemmaPart {
    pub fn default_tolerance(self) -> f64 {
        match self {
            LemmaPart::I => 0.02,
            LemmaPart::II => 0.05,
        }
    }

    pub fn law(self, p: f64) -> ScalingLaw {
        match self {
            LemmaPart::I => ScalingLaw {
                t_exponent: 0.0,
                logt_exponent: 1.0 / p,
            },
            LemmaPart::II => ScalingLaw {
                t_exponent: 0.0,
                logt_exponent: 1.0 / p + 1.0,
            },
        }
    }

    /// The stated limit: `ψ(0)` or `ψ(0)·E₁(−i)`.
    pub fn target(self, psi: &Smooth1D) -> Result<Complex64> {
        let psi0 = psi.value_at_0();
        Ok(match self {
            LemmaPart::I => Complex64::new(psi0, 0.0),
            LemmaPart::II => e1_tail(1.0)? * psi0,
        })
    }
}

/// `ψ(0)·E₁(−i)/p`, the limit of `X^{1/p+1}·L⁽²⁾` once the Jacobian factor
/// `1/p` of `u = e^{−1/x^p}` is kept.
pub fn l2_limit_with_jacobian(psi: &Smooth1D, p: f64) -> Result<Complex64> {
    Ok(LemmaPart::II.target(psi)? / p)
}

pub fn verify_lemma21(
    part: LemmaPart,
    p: f64,
    psi: &Smooth1D,
    grid: &GridSpec,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::Domain {
            function: "verify_lemma21",
            value: p,
        });
    }
    let law = part.law(p);
    let (piece, claim) = match part {
        LemmaPart::I => (PieceId::L1, "lemma-i"),
        LemmaPart::II => (PieceId::L2, "lemma-ii"),
    };
    let repr = Representation::Transformed;
    let values = grid_values(grid, law, |x| match part {
        LemmaPart::I => eval_l1(x, psi, p, repr, &opts.quad),
        LemmaPart::II => eval_l2(x, psi, p, repr, &opts.quad),
    })?;
    VerificationReport::assemble(
        format!("{claim} p={p}"),
        piece,
        law,
        part.target(psi)?,
        values,
        opts,
    )
}

fn i2d_values(
    params: &FlatPhaseParams,
    phi: &Amplitude2D,
    grid: &GridSpec,
    method: Method2D,
    law: ScalingLaw,
    quad: &ToleranceConfig,
) -> Result<Vec<GridValue>> {
    match method {
        Method2D::Factored => {
            if !matches!(phi, Amplitude2D::Product(..)) {
                return Err(Error::Precondition(
                    "factored method needs a product amplitude".into(),
                ));
            }
        }
        Method2D::Iterated => {
            if grid.max() > X_ITERATED_MAX {
                return Err(Error::Precondition(format!(
                    "iterated method is limited to X <= {X_ITERATED_MAX}, grid reaches {}",
                    grid.max()
                )));
            }
        }
        Method2D::Direct2D => {
            return Err(Error::Precondition(
                "limits are verified with the factored or iterated method".into(),
            ))
        }
    }
    grid_values(grid, law, |x| {
        eval_i2d(x, phi, params, method, Representation::Transformed, quad)
    })
}

/// Checks `t^{1/q}(log t)^{1/p}·I → C_q·φ(0,0)` for the phase
/// `x₂^q + e^{−1/|x₁|^p}`.
pub fn verify_theorem11(
    p: f64,
    q: u32,
    phi: &Amplitude2D,
    grid: &GridSpec,
    method: Method2D,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let params = FlatPhaseParams::new(p, q, Sign::Plus)?;
    let law = ScalingLaw::theorem(p, q);
    let values = i2d_values(&params, phi, grid, method, law, &opts.quad)?;
    let target = c_constant(q)?.value * phi.value_at_origin();
    VerificationReport::assemble(
        format!("theorem p={p} q={q} method={method}"),
        PieceId::I2D,
        law,
        target,
        values,
        opts,
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub claim: String,
    pub piece: PieceId,
    pub law: ScalingLaw,
    /// `max |scaled|` over the grid.
    pub sup: f64,
    /// Log-log slope of `|scaled|` against `X` over the last octave.
    pub trend_slope: f64,
    pub slope_limit: f64,
    pub pass: bool,
    pub values: Vec<GridValue>,
}

/// Least-squares slope of `ln|s|` against `ln X` over `X ≥ X_max/2`.
/// Zero values carry no trend.
fn last_octave_slope(values: &[GridValue]) -> f64 {
    let Some(last) = values.last() else {
        return 0.0;
    };
    let pts: Vec<(f64, f64)> = values
        .iter()
        .filter(|v| v.x_log >= 0.5 * last.x_log && v.scaled.norm() > 0.0)
        .map(|v| (v.x_log.ln(), v.scaled.norm().ln()))
        .collect();
    if pts.len() < 2 {
        return 0.0;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Evaluates `piece` on the grid, scales by `law`, and reports the supremum
/// and the last-octave trend.
pub fn check_bound(
    piece: PieceId,
    params: &FlatPhaseParams,
    amplitude: AmplitudeRef<'_>,
    law: ScalingLaw,
    grid: &GridSpec,
    quad: &ToleranceConfig,
) -> Result<BoundReport> {
    let values = grid_values(grid, law, |x| {
        eval_piece(&EvalRequest {
            piece,
            params: *params,
            amplitude,
            x_log: x,
            representation: Representation::Auto,
            tol: *quad,
        })
    })?;
    let sup = values.iter().map(|v| v.scaled.norm()).fold(0.0, f64::max);
    let trend_slope = last_octave_slope(&values);
    Ok(BoundReport {
        claim: format!("bound {piece}"),
        piece,
        law,
        sup,
        trend_slope,
        slope_limit: BOUND_SLOPE_MAX,
        pass: sup.is_finite() && trend_slope <= BOUND_SLOPE_MAX,
        values,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FalsificationReport {
    pub newton_law: ScalingLaw,
    pub true_law: ScalingLaw,
    /// `(X, |s_N(X)| / |s_N(2X)|)` for every octave in the grid, where `s_N`
    /// is the Newton-normalized sequence.
    pub octave_ratios: Vec<(f64, f64)>,
    /// `2^{1/p}`: the ratio if the missing factor grows like `X^{1/p}`.
    pub expected_ratio: f64,
    pub max_ratio_deviation: f64,
    /// Relative change of the correctly normalized sequence over the last octave.
    pub true_law_change: f64,
    pub pass: bool,
    pub newton_values: Vec<GridValue>,
    pub true_values: Vec<GridValue>,
}

/// Compares the Newton-polyhedron normalization `newton_law` with the
/// flat-phase normalization `t^{1/q}(log t)^{1/p}` on factored `I` data.
pub fn falsify_newton_law(
    p: f64,
    q: u32,
    phi: &Amplitude2D,
    grid: &GridSpec,
    newton_law: ScalingLaw,
    quad: &ToleranceConfig,
) -> Result<FalsificationReport> {
    let params = FlatPhaseParams::new(p, q, Sign::Plus)?;
    let true_law = ScalingLaw::theorem(p, q);
    let true_values = i2d_values(&params, phi, grid, Method2D::Factored, true_law, quad)?;
    let newton_values = true_values
        .iter()
        .map(|v| {
            Ok(GridValue {
                scaled: scaled_value(v.value, v.x_log, newton_law)?,
                ..*v
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let find = |x: f64| {
        newton_values
            .iter()
            .position(|v| (v.x_log - x).abs() <= 1e-9 * x)
    };
    let mut octave_ratios = Vec::new();
    let mut last_octave = None;
    for (i, v) in newton_values.iter().enumerate() {
        if let Some(j) = find(2.0 * v.x_log) {
            octave_ratios.push((v.x_log, v.scaled.norm() / newton_values[j].scaled.norm()));
            last_octave = Some((i, j));
        }
    }
    let Some((i, j)) = last_octave else {
        return Err(Error::DegenerateGrid(
            "grid contains no octave (X, 2X)".into(),
        ));
    };
    let expected_ratio = 2f64.powf(1.0 / p);
    let max_ratio_deviation = octave_ratios
        .iter()
        .map(|(_, r)| (r / expected_ratio - 1.0).abs())
        .fold(0.0, f64::max);
    let (a, b) = (true_values[i].scaled, true_values[j].scaled);
    let true_law_change = (b - a).norm() / b.norm();
    Ok(FalsificationReport {
        newton_law,
        true_law,
        octave_ratios,
        expected_ratio,
        max_ratio_deviation,
        true_law_change,
        pass: max_ratio_deviation <= FALSIFY_RATIO_TOL
            && true_law_change <= FALSIFY_CONVERGENCE_TOL,
        newton_values,
        true_values,
    })
}
