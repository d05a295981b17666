//! Truncated Taylor arithmetic.
//!
//! Amplitudes are written once, generically over [`Scalar`], and evaluated
//! either on plain `f64` (the quadrature hot path) or on a [`Jet`] to obtain
//! exact derivatives for asymptotic tail expansions.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Number of Taylor coefficients carried by a [`Jet`].
pub const JET_LEN: usize = 8;

/// Real scalar abstraction shared by `f64` and [`Jet`].
pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn cst(v: f64) -> Self;
    /// The zeroth-order value.
    fn value(self) -> f64;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn scale(self, k: f64) -> Self;

    fn powf(self, e: f64) -> Self {
        (self.ln().scale(e)).exp()
    }

    fn recip(self) -> Self {
        Self::cst(1.0) / self
    }

    fn add_cst(self, c: f64) -> Self {
        self + Self::cst(c)
    }

    fn abs(self) -> Self {
        if self.value() < 0.0 {
            -self
        } else {
            self
        }
    }

    fn powi(self, n: u32) -> Self {
        let mut acc = Self::cst(1.0);
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }
}

impl Scalar for f64 {
    #[inline]
    fn cst(v: f64) -> Self {
        v
    }
    #[inline]
    fn value(self) -> f64 {
        self
    }
    #[inline]
    fn exp(self) -> Self {
        f64::exp(self)
    }
    #[inline]
    fn ln(self) -> Self {
        f64::ln(self)
    }
    #[inline]
    fn scale(self, k: f64) -> Self {
        self * k
    }
    #[inline]
    fn powf(self, e: f64) -> Self {
        f64::powf(self, e)
    }
    #[inline]
    fn recip(self) -> Self {
        1.0 / self
    }
    #[inline]
    fn abs(self) -> Self {
        f64::abs(self)
    }
    #[inline]
    fn powi(self, n: u32) -> Self {
        f64::powi(self, n as i32)
    }
}

/// Taylor polynomial `c[0] + c[1] h + ... + c[JET_LEN-1] h^(JET_LEN-1)`
/// of a function around an expansion point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub c: [f64; JET_LEN],
}

impl Jet {
    /// The identity function expanded at `x`.
    pub fn variable(x: f64) -> Self {
        let mut c = [0.0; JET_LEN];
        c[0] = x;
        c[1] = 1.0;
        Jet { c }
    }

    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; JET_LEN];
        c[0] = v;
        Jet { c }
    }

    /// k-th derivative at the expansion point.
    pub fn derivative(&self, k: usize) -> f64 {
        let mut f = 1.0;
        for i in 2..=k {
            f *= i as f64;
        }
        self.c[k] * f
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(mut self, o: Jet) -> Jet {
        for (a, b) in self.c.iter_mut().zip(o.c) {
            *a += b;
        }
        self
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(mut self, o: Jet) -> Jet {
        for (a, b) in self.c.iter_mut().zip(o.c) {
            *a -= b;
        }
        self
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(mut self) -> Jet {
        for a in self.c.iter_mut() {
            *a = -*a;
        }
        self
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let mut c = [0.0; JET_LEN];
        for i in 0..JET_LEN {
            let mut s = 0.0;
            for j in 0..=i {
                s += self.c[j] * o.c[i - j];
            }
            c[i] = s;
        }
        Jet { c }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, o: Jet) -> Jet {
        // q * o = self, solved order by order
        let mut q = [0.0; JET_LEN];
        let inv = 1.0 / o.c[0];
        for i in 0..JET_LEN {
            let mut s = self.c[i];
            for j in 1..=i {
                s -= o.c[j] * q[i - j];
            }
            q[i] = s * inv;
        }
        Jet { c: q }
    }
}

impl Scalar for Jet {
    fn cst(v: f64) -> Self {
        Jet::constant(v)
    }

    fn value(self) -> f64 {
        self.c[0]
    }

    fn exp(self) -> Self {
        // f = e^g  =>  k f_k = sum_{j=1}^{k} j g_j f_{k-j}
        let mut f = [0.0; JET_LEN];
        f[0] = self.c[0].exp();
        for k in 1..JET_LEN {
            let mut s = 0.0;
            for j in 1..=k {
                s += j as f64 * self.c[j] * f[k - j];
            }
            f[k] = s / k as f64;
        }
        Jet { c: f }
    }

    fn ln(self) -> Self {
        // f = ln g  =>  g f' = g'
        let g0 = self.c[0];
        let mut f = [0.0; JET_LEN];
        f[0] = g0.ln();
        for k in 1..JET_LEN {
            let mut s = k as f64 * self.c[k];
            for j in 1..k {
                s -= j as f64 * f[j] * self.c[k - j];
            }
            f[k] = s / (k as f64 * g0);
        }
        Jet { c: f }
    }

    fn scale(mut self, k: f64) -> Self {
        for a in self.c.iter_mut() {
            *a *= k;
        }
        self
    }
}
