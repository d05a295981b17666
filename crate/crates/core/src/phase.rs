//! The phase family `f(x₁,x₂) = ±x₂^q + e^{−1/|x₁|^p}`, compactly supported
//! amplitudes, the smooth cutoff pair (α, β) and the derived functions ψ̃,
//! a(u) and R(x₁,x₂) that appear after the changes of variables.

use crate::error::{Error, Result};
use crate::jet::{Jet, Scalar};
use crate::quad::gauss::gl32;

/// Sign of the power term in the phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlatPhaseParams {
    pub p: f64,
    pub q: u32,
    pub sign: Sign,
}

impl FlatPhaseParams {
    pub fn new(p: f64, q: u32, sign: Sign) -> Result<Self> {
        if !(p > 0.0) || !p.is_finite() {
            return Err(Error::Precondition(format!("p must be > 0, got {p}")));
        }
        if q < 2 {
            return Err(Error::Precondition(format!("q must be >= 2, got {q}")));
        }
        Ok(FlatPhaseParams { p, q, sign })
    }
}

/// `e^{−1/|x|^p}`, with value 0 at the origin. Computed as
/// `exp(−exp(−p·ln|x|))` so that `1/|x|^p` never overflows.
pub fn flat_term(x: f64, p: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    (-(-p * x.abs().ln()).exp()).exp()
}

/// Inverse of [`flat_term`] on (0, ∞): `x = (−1/ln u)^{1/p}`.
pub fn flat_inverse(u: f64, p: f64) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::Domain {
            function: "flat_inverse",
            value: u,
        });
    }
    Ok((-1.0 / u.ln()).powf(1.0 / p))
}

/// A real function of one variable that can be evaluated generically, so
/// that Taylor jets give its derivatives.
pub trait Profile: Sync {
    fn eval<S: Scalar>(&self, x: S) -> S;

    /// Vanishes for `|x| >= support_radius()` (may be infinite).
    fn support_radius(&self) -> f64;

    fn value(&self, x: f64) -> f64 {
        self.eval(x)
    }
}

/// A [`Profile`] with an analytic first derivative.
pub trait ProfileDeriv: Profile {
    fn eval_d1<S: Scalar>(&self, x: S) -> S;
}

fn h_gen<S: Scalar>(s: S) -> S {
    if s.value() > 0.0 {
        (-s.recip()).exp()
    } else {
        S::cst(0.0)
    }
}

/// Smooth plateau: 1 on |x| ≤ 1, 0 on |x| ≥ 2.
fn alpha_gen<S: Scalar>(x: S) -> S {
    let ax = x.abs();
    let v = ax.value();
    if v <= 1.0 {
        return S::cst(1.0);
    }
    if v >= 2.0 {
        return S::cst(0.0);
    }
    let a = h_gen(S::cst(2.0) - ax);
    let b = h_gen(ax.add_cst(-1.0));
    a / (a + b)
}

fn alpha_d1_gen<S: Scalar>(x: S) -> S {
    let v = x.value().abs();
    if v <= 1.0 || v >= 2.0 {
        return S::cst(0.0);
    }
    let sgn = if x.value() < 0.0 { -1.0 } else { 1.0 };
    let ax = x.abs();
    let sa = S::cst(2.0) - ax;
    let sb = ax.add_cst(-1.0);
    let a = h_gen(sa);
    let b = h_gen(sb);
    // dA/d|x| = −A/sa², dB/d|x| = B/sb²
    let da = -(a / (sa * sa));
    let db = b / (sb * sb);
    let den = a + b;
    ((da * b - a * db) / (den * den)).scale(sgn)
}

/// One-dimensional smooth functions built from bumps, the cutoff pair and
/// polynomials.
#[derive(Debug, Clone, PartialEq)]
pub enum Smooth1D {
    Zero,
    /// `height·exp(−x²/(r²−x²))` on |x| < r, else 0.
    Bump {
        radius: f64,
        height: f64,
    },
    /// α of the cutoff pair.
    Cutoff,
    /// β = 1 − α.
    CutoffComplement,
    /// `Σ c_k x^k` (not compactly supported; use inside products).
    Poly(Vec<f64>),
    Scaled(f64, Box<Smooth1D>),
    /// `f(−x)`.
    Reflected(Box<Smooth1D>),
    Product(Box<Smooth1D>, Box<Smooth1D>),
}

/// `exp(−x²/(r²−x²))` on |x| < r.
pub fn standard_bump(r: f64) -> Result<Smooth1D> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Precondition(format!(
            "bump radius must be > 0, got {r}"
        )));
    }
    Ok(Smooth1D::Bump {
        radius: r,
        height: 1.0,
    })
}

impl Smooth1D {
    pub fn scaled(self, c: f64) -> Self {
        Smooth1D::Scaled(c, Box::new(self))
    }

    pub fn reflected(self) -> Self {
        Smooth1D::Reflected(Box::new(self))
    }

    pub fn times(self, other: Smooth1D) -> Self {
        Smooth1D::Product(Box::new(self), Box::new(other))
    }

    pub fn value_at_0(&self) -> f64 {
        self.eval(0.0)
    }

    /// k-th derivative (k < 8) from a Taylor jet of the analytic evaluator.
    pub fn derivative(&self, x: f64, k: usize) -> f64 {
        self.eval(Jet::variable(x)).derivative(k)
    }
}

impl Profile for Smooth1D {
    fn eval<S: Scalar>(&self, x: S) -> S {
        match self {
            Smooth1D::Zero => S::cst(0.0),
            Smooth1D::Bump { radius, height } => {
                if x.value().abs() >= *radius {
                    return S::cst(0.0);
                }
                let x2 = x * x;
                (-(x2 / (S::cst(radius * radius) - x2)))
                    .exp()
                    .scale(*height)
            }
            Smooth1D::Cutoff => alpha_gen(x),
            Smooth1D::CutoffComplement => S::cst(1.0) - alpha_gen(x),
            Smooth1D::Poly(c) => {
                let mut acc = S::cst(0.0);
                for &ck in c.iter().rev() {
                    acc = acc * x + S::cst(ck);
                }
                acc
            }
            Smooth1D::Scaled(c, f) => f.eval(x).scale(*c),
            Smooth1D::Reflected(f) => f.eval(-x),
            Smooth1D::Product(f, g) => f.eval(x) * g.eval(x),
        }
    }

    fn support_radius(&self) -> f64 {
        match self {
            Smooth1D::Zero => 0.0,
            Smooth1D::Bump { radius, .. } => *radius,
            Smooth1D::Cutoff => 2.0,
            Smooth1D::CutoffComplement | Smooth1D::Poly(_) => f64::INFINITY,
            Smooth1D::Scaled(c, f) => {
                if *c == 0.0 {
                    0.0
                } else {
                    f.support_radius()
                }
            }
            Smooth1D::Reflected(f) => f.support_radius(),
            Smooth1D::Product(f, g) => f.support_radius().min(g.support_radius()),
        }
    }
}

impl ProfileDeriv for Smooth1D {
    fn eval_d1<S: Scalar>(&self, x: S) -> S {
        match self {
            Smooth1D::Zero => S::cst(0.0),
            Smooth1D::Bump { radius, .. } => {
                if x.value().abs() >= *radius {
                    return S::cst(0.0);
                }
                let r2 = S::cst(radius * radius);
                let d = r2 - x * x;
                self.eval(x) * (-(x * r2).scale(2.0) / (d * d))
            }
            Smooth1D::Cutoff => alpha_d1_gen(x),
            Smooth1D::CutoffComplement => -alpha_d1_gen(x),
            Smooth1D::Poly(c) => {
                let mut acc = S::cst(0.0);
                for (k, &ck) in c.iter().enumerate().skip(1).rev() {
                    acc = acc * x + S::cst(ck * k as f64);
                }
                acc
            }
            Smooth1D::Scaled(c, f) => f.eval_d1(x).scale(*c),
            Smooth1D::Reflected(f) => -f.eval_d1(-x),
            Smooth1D::Product(f, g) => f.eval_d1(x) * g.eval(x) + f.eval(x) * g.eval_d1(x),
        }
    }
}

/// The cutoff pair α (plateau on |x| ≤ 1, zero on |x| ≥ 2) and β = 1 − α.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CutoffPair;

pub fn cutoff_pair() -> CutoffPair {
    CutoffPair
}

impl CutoffPair {
    pub fn alpha(&self, x: f64) -> f64 {
        alpha_gen(x)
    }

    pub fn beta(&self, x: f64) -> f64 {
        1.0 - alpha_gen(x)
    }

    pub fn alpha_gen<S: Scalar>(&self, x: S) -> S {
        alpha_gen(x)
    }

    pub fn beta_gen<S: Scalar>(&self, x: S) -> S {
        S::cst(1.0) - alpha_gen(x)
    }

    pub fn alpha_d1(&self, x: f64) -> f64 {
        alpha_d1_gen(x)
    }
}

/// `ψ̃(u) = ψ((−1/ln u)^{1/p})` on (0, 1/2), extended by `ψ̃(0) = ψ(0)`.
pub fn psi_tilde<P: Profile>(u: f64, psi: &P, p: f64) -> Result<f64> {
    if !(0.0..0.5).contains(&u) {
        return Err(Error::Domain {
            function: "psi_tilde",
            value: u,
        });
    }
    if u == 0.0 {
        return Ok(psi.value(0.0));
    }
    Ok(psi.value((-1.0 / u.ln()).powf(1.0 / p)))
}

/// `a` expressed through `z = −1/ln u`:
/// `[−1 + (1/p+1) z] ψ(z^{1/p}) + (1/p) ψ'(z^{1/p}) z^{1/p+1}`.
pub(crate) fn a_of_z<S: Scalar, P: ProfileDeriv>(z: S, psi: &P, p: f64) -> S {
    if z.value() == 0.0 {
        return -psi.eval(S::cst(0.0));
    }
    let inv_p = 1.0 / p;
    let x = z.powf(inv_p);
    let bracket = z.scale(inv_p + 1.0).add_cst(-1.0);
    bracket * psi.eval(x) + (psi.eval_d1(x) * z.powf(inv_p + 1.0)).scale(inv_p)
}

/// The smooth function `a(u)` produced by differentiating
/// `u^{-1}(−1/ln u)^{1/p+1} ψ̃(u)`; `a(0) = −ψ(0)`.
pub fn a_of_u<P: ProfileDeriv>(u: f64, psi: &P, p: f64) -> Result<f64> {
    if !(0.0..0.5).contains(&u) {
        return Err(Error::Domain {
            function: "a_of_u",
            value: u,
        });
    }
    let z = if u == 0.0 { 0.0 } else { -1.0 / u.ln() };
    Ok(a_of_z(z, psi, p))
}

/// Two-dimensional amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub enum Amplitude2D {
    /// `ψ₁(x₁)·ψ₂(x₂)`.
    Product(Smooth1D, Smooth1D),
    /// `(1 + tilt·x₂)·exp(−ρ²/(r²−ρ²))`, `ρ² = x₁² + x₂²`; not separable.
    Tilted { radius: f64, tilt: f64 },
}

impl Amplitude2D {
    pub fn product_bump(r1: f64, r2: f64) -> Result<Self> {
        Ok(Amplitude2D::Product(standard_bump(r1)?, standard_bump(r2)?))
    }

    pub fn eval<S: Scalar>(&self, x1: S, x2: S) -> S {
        match self {
            Amplitude2D::Product(f, g) => f.eval(x1) * g.eval(x2),
            Amplitude2D::Tilted { radius, tilt } => {
                let rho2 = x1 * x1 + x2 * x2;
                if rho2.value() >= radius * radius {
                    return S::cst(0.0);
                }
                let b = (-(rho2 / (S::cst(radius * radius) - rho2))).exp();
                x2.scale(*tilt).add_cst(1.0) * b
            }
        }
    }

    pub fn value(&self, x1: f64, x2: f64) -> f64 {
        self.eval(x1, x2)
    }

    pub fn d_dx1<S: Scalar>(&self, x1: S, x2: S) -> S {
        match self {
            Amplitude2D::Product(f, g) => f.eval_d1(x1) * g.eval(x2),
            Amplitude2D::Tilted { radius, tilt } => {
                let rho2 = x1 * x1 + x2 * x2;
                if rho2.value() >= radius * radius {
                    return S::cst(0.0);
                }
                let r2 = S::cst(radius * radius);
                let d = r2 - rho2;
                let b = (-(rho2 / d)).exp();
                let db = b * (-(x1 * r2).scale(2.0) / (d * d));
                x2.scale(*tilt).add_cst(1.0) * db
            }
        }
    }

    pub fn d_dx2<S: Scalar>(&self, x1: S, x2: S) -> S {
        match self {
            Amplitude2D::Product(f, g) => f.eval(x1) * g.eval_d1(x2),
            Amplitude2D::Tilted { radius, tilt } => {
                let rho2 = x1 * x1 + x2 * x2;
                if rho2.value() >= radius * radius {
                    return S::cst(0.0);
                }
                let r2 = S::cst(radius * radius);
                let d = r2 - rho2;
                let b = (-(rho2 / d)).exp();
                let db = b * (-(x2 * r2).scale(2.0) / (d * d));
                b.scale(*tilt) + x2.scale(*tilt).add_cst(1.0) * db
            }
        }
    }

    /// Half-widths `(r₁, r₂)` of a box containing the support.
    pub fn support_box(&self) -> (f64, f64) {
        match self {
            Amplitude2D::Product(f, g) => (f.support_radius(), g.support_radius()),
            Amplitude2D::Tilted { radius, .. } => (*radius, *radius),
        }
    }

    pub fn value_at_origin(&self) -> f64 {
        self.value(0.0, 0.0)
    }
}

/// Below this |x₂| the mean-value integral in R uses the fixed 32-point
/// Gauss rule; above it the exact difference quotient.
const R_QUADRATURE_RADIUS: f64 = 0.05;

/// `R(x₁,x₂) = e^{−x₂^q}(β(x₂)P(x₁,0)/x₂ + ∫₀¹ ∂P/∂x₂(x₁,s x₂) ds)` with
/// `P = e^{x₂^q} φ`, so that
/// `φ = e^{−x₂^q}φ(x₁,0) − e^{−x₂^q}β(x₂)φ(x₁,0) + x₂ R`.
pub fn remainder_r<S: Scalar>(x1: S, x2: f64, phi: &Amplitude2D, q: u32) -> S {
    let x2s = S::cst(x2);
    if x2 == 0.0 {
        return phi.d_dx2(x1, x2s);
    }
    let qi = q as i32;
    let ex = |y: f64| y.powi(qi).exp();
    let mean = if x2.abs() < R_QUADRATURE_RADIUS {
        let gl = gl32();
        let mut acc = S::cst(0.0);
        for (&y, &w) in gl.nodes.iter().zip(&gl.weights) {
            let s = 0.5 * (1.0 + y);
            let y2 = s * x2;
            let dp = phi.eval(x1, S::cst(y2)).scale(q as f64 * y2.powi(qi - 1))
                + phi.d_dx2(x1, S::cst(y2));
            acc = acc + dp.scale(0.5 * w * ex(y2));
        }
        acc
    } else {
        (phi.eval(x1, x2s).scale(ex(x2)) - phi.eval(x1, S::cst(0.0))).scale(1.0 / x2)
    };
    let beta = 1.0 - alpha_gen(x2);
    let boundary = phi.eval(x1, S::cst(0.0)).scale(beta / x2);
    (boundary + mean).scale((-x2.powi(qi)).exp())
}

/// `R(x₁,x₂)` at a point.
pub fn remainder_at(x1: f64, x2: f64, phi: &Amplitude2D, q: u32) -> f64 {
    remainder_r(x1, x2, phi, q)
}

/// `x₁ ↦ φ(s₁x₁, s₂x₂)` for fixed x₂ and quadrant signs.
pub struct X1Slice<'a> {
    pub amp: &'a Amplitude2D,
    pub x2: f64,
    pub s1: f64,
    pub s2: f64,
}

impl Profile for X1Slice<'_> {
    fn eval<S: Scalar>(&self, x: S) -> S {
        self.amp.eval(x.scale(self.s1), S::cst(self.s2 * self.x2))
    }
    fn support_radius(&self) -> f64 {
        self.amp.support_box().0
    }
}

impl ProfileDeriv for X1Slice<'_> {
    fn eval_d1<S: Scalar>(&self, x: S) -> S {
        self.amp
            .d_dx1(x.scale(self.s1), S::cst(self.s2 * self.x2))
            .scale(self.s1)
    }
}

/// `x₁ ↦ R(x₁, x₂)` for fixed x₂.
pub struct RemainderSlice<'a> {
    pub amp: &'a Amplitude2D,
    pub x2: f64,
    pub q: u32,
}

impl Profile for RemainderSlice<'_> {
    fn eval<S: Scalar>(&self, x: S) -> S {
        remainder_r(x, self.x2, self.amp, self.q)
    }
    fn support_radius(&self) -> f64 {
        self.amp.support_box().0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_term_values() {
        assert_eq!(flat_term(0.0, 1.3), 0.0);
        for &p in &[0.5, 1.0, 2.0, 3.7] {
            let x = (1.0 / 2f64.ln()).powf(1.0 / p);
            assert!((flat_term(x, p) - 0.5).abs() < 1e-15);
            let big_x: f64 = 17.0;
            let split = (1.0 / big_x).powf(1.0 / p);
            assert!((flat_term(split, p) / (-big_x).exp() - 1.0).abs() < 1e-13);
            assert!((flat_term(-x, p) - 0.5).abs() < 1e-15);
        }
        // underflow to exact zero is accepted
        assert_eq!(flat_term(1e-3, 2.0), 0.0);
        assert!(flat_term(0.3, 1.0) < flat_term(0.31, 1.0));
    }

    #[test]
    fn flat_inverse_round_trip() {
        assert!((flat_inverse(0.5, 1.0).unwrap() - 1.0 / 2f64.ln()).abs() < 1e-15);
        assert!((flat_inverse((-1f64).exp(), 2.3).unwrap() - 1.0).abs() < 1e-15);
        for &p in &[0.5, 1.0, 2.0] {
            for k in 0..=60 {
                let u = 1e-12 * (0.49f64 / 1e-12).powf(k as f64 / 60.0);
                let x = flat_inverse(u, p).unwrap();
                assert!((flat_term(x, p) / u - 1.0).abs() < 1e-13, "u={u} p={p}");
            }
        }
        assert!(flat_inverse(0.0, 1.0).is_err());
        assert!(flat_inverse(1.0, 1.0).is_err());
    }

    #[test]
    fn bump_values() {
        let psi = standard_bump(0.4).unwrap();
        assert_eq!(psi.value(0.0), 1.0);
        assert_eq!(psi.derivative(0.0, 1), 0.0);
        assert_eq!(psi.value(0.4), 0.0);
        assert_eq!(psi.value(-0.4), 0.0);
        assert!(psi.eval_d1(0.4 - 1e-9).abs() < 1e-300);
        assert!((psi.value(0.2) - (-1.0f64 / 3.0).exp()).abs() < 1e-15);
        assert!(standard_bump(0.0).is_err());
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let fns = [
            standard_bump(0.5).unwrap(),
            standard_bump(0.5)
                .unwrap()
                .times(Smooth1D::Poly(vec![1.0, 0.7, -0.3])),
            Smooth1D::Cutoff,
            Smooth1D::CutoffComplement.scaled(2.0),
            standard_bump(0.3)
                .unwrap()
                .reflected()
                .times(Smooth1D::Poly(vec![0.0, 1.0])),
        ];
        let h = 1e-5;
        for f in &fns {
            let r = f.support_radius().min(2.0);
            for i in 1..40 {
                let x = -r + 2.0 * r * i as f64 / 40.0;
                let fd1 = (f.value(x + h) - f.value(x - h)) / (2.0 * h);
                let fd2 = (f.value(x + h) - 2.0 * f.value(x) + f.value(x - h)) / (h * h);
                let d1 = f.eval_d1(x);
                let d2 = f.derivative(x, 2);
                assert!((d1 - fd1).abs() <= 1e-6 * (1.0 + d1.abs()), "{f:?} x={x}");
                assert!((f.derivative(x, 1) - d1).abs() <= 1e-10 * (1.0 + d1.abs()));
                assert!(
                    (d2 - fd2).abs() <= 1e-4 * (1.0 + d2.abs()),
                    "{f:?} x={x} {d2} {fd2}"
                );
            }
        }
    }

    #[test]
    fn cutoff_pair_partition() {
        let c = cutoff_pair();
        assert_eq!(c.alpha(0.5), 1.0);
        assert_eq!(c.beta(0.5), 0.0);
        assert_eq!(c.alpha(3.0), 0.0);
        assert_eq!(c.beta(3.0), 1.0);
        assert!((c.alpha(1.5) - 0.5).abs() < 1e-15);
        assert!((c.alpha(-1.5) - 0.5).abs() < 1e-15);
        for i in 0..=400 {
            let x = -3.0 + 6.0 * i as f64 / 400.0;
            let (a, b) = (c.alpha(x), c.beta(x));
            assert_eq!(a + b, 1.0);
            assert!((0.0..=1.0).contains(&a));
            let fd = (c.alpha(x + 1e-6) - c.alpha(x - 1e-6)) / 2e-6;
            if x.abs() < 0.99 || x.abs() > 2.01 {
                assert!(fd.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn psi_tilde_and_a() {
        let psi = standard_bump(0.5).unwrap();
        let p = 1.0;
        assert_eq!(psi_tilde(0.0, &psi, p).unwrap(), 1.0);
        let x_big: f64 = 12.0;
        let u = (-x_big).exp();
        let want = psi.value((1.0 / x_big).powf(1.0 / p));
        assert!((psi_tilde(u, &psi, p).unwrap() - want).abs() < 1e-15);
        // support: ψ(x)=0 for x ≥ 0.5  <=> u ≥ e^{-2}
        assert_eq!(psi_tilde(0.2, &psi, p).unwrap(), 0.0);
        assert!(psi_tilde(0.5, &psi, p).is_err());

        assert!((a_of_u(0.0, &psi, p).unwrap() + 1.0).abs() < 1e-15);
        assert!((a_of_u(1e-300, &psi, p).unwrap() + 1.0).abs() < 1e-2);
        assert_eq!(a_of_u(0.3, &psi, p).unwrap(), 0.0);
    }

    #[test]
    fn a_is_the_derivative_identity() {
        // d/du [u^{-1} z^{1/p+1} ψ̃(u)] = u^{-2} z^{1/p+1} a(u), z = −1/ln u
        let psi = standard_bump(0.5).unwrap();
        for &p in &[0.5, 1.0, 2.0] {
            let g = |u: f64| {
                let z: f64 = -1.0 / u.ln();
                z.powf(1.0 / p + 1.0) / u * psi_tilde(u, &psi, p).unwrap()
            };
            for &u in &[1e-6, 1e-4, 1e-3, 0.01, 0.05] {
                let h = u * 1e-5;
                let fd = (g(u + h) - g(u - h)) / (2.0 * h);
                let z: f64 = -1.0 / u.ln();
                let an = z.powf(1.0 / p + 1.0) / (u * u) * a_of_u(u, &psi, p).unwrap();
                assert!((fd - an).abs() <= 1e-6 * an.abs().max(1e-12), "p={p} u={u}");
            }
        }
    }

    fn amplitudes() -> Vec<Amplitude2D> {
        vec![
            Amplitude2D::product_bump(0.5, 0.5).unwrap(),
            Amplitude2D::Product(
                standard_bump(0.45).unwrap(),
                standard_bump(0.4)
                    .unwrap()
                    .times(Smooth1D::Poly(vec![1.0, 0.8])),
            ),
            Amplitude2D::Tilted {
                radius: 0.5,
                tilt: 0.7,
            },
        ]
    }

    #[test]
    fn remainder_reconstruction() {
        let c = cutoff_pair();
        for phi in amplitudes() {
            let (r1, r2) = phi.support_box();
            for &q in &[2u32, 3] {
                for i in 0..20 {
                    for j in 0..20 {
                        let x1 = -r1 + 2.0 * r1 * (i as f64 + 0.5) / 20.0;
                        let x2 = -r2 + 2.0 * r2 * (j as f64 + 0.5) / 20.0;
                        let e = (-x2.powi(q as i32)).exp();
                        let phi0 = phi.value(x1, 0.0);
                        let rebuilt =
                            e * phi0 - e * c.beta(x2) * phi0 + x2 * remainder_at(x1, x2, &phi, q);
                        assert!((rebuilt - phi.value(x1, x2)).abs() < 1e-10);
                    }
                }
                // outside the support of φ but inside that of α
                for &x2 in &[0.7, 1.2, 1.8, 2.5] {
                    let e = (-f64::powi(x2, q as i32)).exp();
                    let x1 = 0.1;
                    let phi0 = phi.value(x1, 0.0);
                    let rebuilt =
                        e * phi0 - e * c.beta(x2) * phi0 + x2 * remainder_at(x1, x2, &phi, q);
                    assert!(rebuilt.abs() < 1e-12);
                }
                assert_eq!(remainder_at(0.1, 2.5, &phi, q), 0.0);
            }
        }
    }

    #[test]
    fn remainder_at_origin() {
        let phi = Amplitude2D::product_bump(0.5, 0.5).unwrap();
        assert_eq!(remainder_at(0.0, 0.0, &phi, 2), 0.0);
        let zero = Amplitude2D::Product(Smooth1D::Zero, standard_bump(0.5).unwrap());
        for &x2 in &[0.0, 0.01, 0.3, 1.5] {
            assert_eq!(remainder_at(0.2, x2, &zero, 3), 0.0);
        }
        let tilted = Amplitude2D::Tilted {
            radius: 0.5,
            tilt: 0.7,
        };
        assert!((remainder_at(0.0, 0.0, &tilted, 2) - 0.7).abs() < 1e-15);
        // continuity across the quadrature switch
        let a = remainder_at(0.1, R_QUADRATURE_RADIUS * (1.0 - 1e-13), &tilted, 2);
        let b = remainder_at(0.1, R_QUADRATURE_RADIUS * (1.0 + 1e-13), &tilted, 2);
        assert!((a - b).abs() < 1e-12, "{a} {b}");
    }
}
