//! Numerical evaluation of the flat-phase integral and of every piece of
//! its decomposition, each in a representation as defined ("direct") and
//! one rescaled for large `X = log t` ("transformed").

mod inner;
mod one_d;
mod power;
mod two_d;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::phase::{Amplitude2D, FlatPhaseParams, Smooth1D};
use crate::quad::{QuadratureResult, ToleranceConfig};

pub use one_d::{eval_l, eval_l1, eval_l2, eval_m1, eval_m2};
pub use power::{eval_k1_factor, eval_k2_factor, eval_s_power};
pub use two_d::{eval_i2d, eval_piece_2d};

/// Direct representations are refused above this `X`.
pub const X_DIRECT_MAX: f64 = 30.0;
/// Iterated two-dimensional evaluations are refused above this `X`.
pub const X_ITERATED_MAX: f64 = 60.0;
/// Brute-force two-dimensional cubature is refused above this `X`.
pub const X_DIRECT2D_MAX: f64 = 15.0;
/// `Auto` picks the direct representation below this `X`.
const AUTO_DIRECT_BELOW: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PieceId {
    L,
    L1,
    L2,
    M1,
    M2,
    I2D,
    ITildePlus,
    ITildeMinus,
    J1,
    J2,
    K1,
    K2,
    K3,
    H1,
    H2,
    N1,
    N2,
    SPower,
}

impl PieceId {
    pub const ALL: [PieceId; 18] = [
        PieceId::L,
        PieceId::L1,
        PieceId::L2,
        PieceId::M1,
        PieceId::M2,
        PieceId::I2D,
        PieceId::ITildePlus,
        PieceId::ITildeMinus,
        PieceId::J1,
        PieceId::J2,
        PieceId::K1,
        PieceId::K2,
        PieceId::K3,
        PieceId::H1,
        PieceId::H2,
        PieceId::N1,
        PieceId::N2,
        PieceId::SPower,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PieceId::L => "L",
            PieceId::L1 => "L1",
            PieceId::L2 => "L2",
            PieceId::M1 => "M1",
            PieceId::M2 => "M2",
            PieceId::I2D => "I2D",
            PieceId::ITildePlus => "ITILDE_PLUS",
            PieceId::ITildeMinus => "ITILDE_MINUS",
            PieceId::J1 => "J1",
            PieceId::J2 => "J2",
            PieceId::K1 => "K1",
            PieceId::K2 => "K2",
            PieceId::K3 => "K3",
            PieceId::H1 => "H1",
            PieceId::H2 => "H2",
            PieceId::N1 => "N1",
            PieceId::N2 => "N2",
            PieceId::SPower => "S_POWER",
        }
    }

    /// Pieces whose amplitude is a function of one variable.
    pub fn is_one_dimensional(self) -> bool {
        matches!(
            self,
            PieceId::L | PieceId::L1 | PieceId::L2 | PieceId::M1 | PieceId::M2 | PieceId::SPower
        )
    }
}

impl fmt::Display for PieceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PieceId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_uppercase().replace(['-', '+'], "_");
        let alias = match key.as_str() {
            "ITILDE+" | "ITILDE_" | "ITILDE_PLUS" | "IPLUS" => "ITILDE_PLUS",
            "ITILDE_MINUS" | "IMINUS" => "ITILDE_MINUS",
            "S" | "SPOWER" | "S_POWER" => "S_POWER",
            "I" | "I2D" => "I2D",
            other => other,
        };
        PieceId::ALL
            .into_iter()
            .find(|p| p.name() == alias)
            .ok_or_else(|| Error::Precondition(format!("unknown piece '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Representation {
    Direct,
    Transformed,
    Auto,
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Representation::Direct => "direct",
            Representation::Transformed => "transformed",
            Representation::Auto => "auto",
        })
    }
}

impl FromStr for Representation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "direct" => Ok(Representation::Direct),
            "transformed" => Ok(Representation::Transformed),
            "auto" => Ok(Representation::Auto),
            _ => Err(Error::Precondition(format!("unknown representation '{s}'"))),
        }
    }
}

/// Evaluation methods for the full two-dimensional integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method2D {
    /// Brute-force nested cubature with the raw phase.
    Direct2D,
    /// Outer `x₂` integral over inner `L(t; φ(·,x₂))`.
    Iterated,
    /// Product of one-dimensional factors; product amplitudes only.
    Factored,
}

impl fmt::Display for Method2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method2D::Direct2D => "direct2d",
            Method2D::Iterated => "iterated",
            Method2D::Factored => "factored",
        })
    }
}

impl FromStr for Method2D {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "direct2d" => Ok(Method2D::Direct2D),
            "iterated" => Ok(Method2D::Iterated),
            "factored" => Ok(Method2D::Factored),
            _ => Err(Error::Precondition(format!("unknown method '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PieceValue {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    pub representation_used: Representation,
    pub converged: bool,
    pub n_evals: usize,
}

impl PieceValue {
    pub(crate) fn new(r: QuadratureResult, used: Representation) -> Self {
        PieceValue {
            value: r.value,
            abs_error_estimate: r.abs_error_estimate,
            representation_used: used,
            converged: r.converged,
            n_evals: r.n_evals,
        }
    }

    pub fn result(&self) -> QuadratureResult {
        QuadratureResult {
            value: self.value,
            abs_error_estimate: self.abs_error_estimate,
            n_evals: self.n_evals,
            converged: self.converged,
        }
    }
}

/// Chooses the representation actually used at `X`, rejecting requests
/// outside its range.
pub(crate) fn resolve(repr: Representation, x_log: f64) -> Result<Representation> {
    if !(x_log >= 0.0) || !x_log.is_finite() {
        return Err(Error::Domain {
            function: "X",
            value: x_log,
        });
    }
    match repr {
        Representation::Direct if x_log > X_DIRECT_MAX => Err(Error::RepresentationRange {
            repr: "direct",
            x: x_log,
            limit: X_DIRECT_MAX,
        }),
        Representation::Transformed if x_log == 0.0 => Err(Error::RepresentationRange {
            repr: "transformed",
            x: x_log,
            limit: 0.0,
        }),
        Representation::Auto if x_log < AUTO_DIRECT_BELOW => Ok(Representation::Direct),
        Representation::Auto => Ok(Representation::Transformed),
        r => Ok(r),
    }
}

#[derive(Debug, Clone, Copy)]
pub enum AmplitudeRef<'a> {
    OneD(&'a Smooth1D),
    TwoD(&'a Amplitude2D),
}

#[derive(Debug, Clone, Copy)]
pub struct EvalRequest<'a> {
    pub piece: PieceId,
    pub params: FlatPhaseParams,
    pub amplitude: AmplitudeRef<'a>,
    /// `X = log t`
    pub x_log: f64,
    pub representation: Representation,
    pub tol: ToleranceConfig,
}

/// Evaluates any piece. One-dimensional pieces take a [`Smooth1D`] (for
/// `S_POWER` it is the `x₂` profile); the others take an [`Amplitude2D`].
/// `I2D` uses the factored method for product amplitudes and the iterated
/// one otherwise.
pub fn eval_piece(req: &EvalRequest<'_>) -> Result<PieceValue> {
    let p = req.params.p;
    let tol = &req.tol;
    match (req.piece, req.amplitude) {
        (PieceId::L, AmplitudeRef::OneD(f)) => eval_l(req.x_log, f, p, req.representation, tol),
        (PieceId::L1, AmplitudeRef::OneD(f)) => eval_l1(req.x_log, f, p, req.representation, tol),
        (PieceId::L2, AmplitudeRef::OneD(f)) => eval_l2(req.x_log, f, p, req.representation, tol),
        (PieceId::M1, AmplitudeRef::OneD(f)) => eval_m1(req.x_log, f, p),
        (PieceId::M2, AmplitudeRef::OneD(f)) => eval_m2(req.x_log, f, p, req.representation, tol),
        (PieceId::SPower, AmplitudeRef::OneD(f)) => {
            eval_s_power(req.params.q, req.x_log, f, req.params.sign.as_f64(), tol)
        }
        (PieceId::I2D, AmplitudeRef::TwoD(phi)) => {
            let method = if matches!(phi, Amplitude2D::Product(..)) {
                Method2D::Factored
            } else {
                Method2D::Iterated
            };
            eval_i2d(req.x_log, phi, &req.params, method, req.representation, tol)
        }
        (piece, AmplitudeRef::TwoD(phi)) if !piece.is_one_dimensional() => {
            eval_piece_2d(piece, req.x_log, phi, &req.params, req.representation, tol)
        }
        (piece, _) => Err(Error::Precondition(format!(
            "piece {piece} does not accept this amplitude type"
        ))),
    }
}
