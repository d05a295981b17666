//! CSV, JSON and plain-text rendering. Numbers carry 17 significant digits.

use std::fmt::Write as _;

use flatphase_core::asymptotics::{
    BoundReport, FalsificationReport, GridValue, LimitEstimate, ScalingLaw, VerificationReport,
};
use num_complex::Complex64;

pub const CSV_HEADER: &str = "piece,X,re,im,abs_err,scaled_re,scaled_im";

pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

/// One `(piece, X)` row.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub piece: String,
    pub x_log: f64,
    pub value: Complex64,
    pub abs_err: f64,
    pub scaled: Complex64,
}

impl Row {
    pub fn from_grid(piece: &str, v: &GridValue) -> Self {
        Row {
            piece: piece.to_string(),
            x_log: v.x_log,
            value: v.value,
            abs_err: v.abs_err,
            scaled: v.scaled,
        }
    }
}

pub fn csv(rows: &[Row]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.piece,
            num(r.x_log),
            num(r.value.re),
            num(r.value.im),
            num(r.abs_err),
            num(r.scaled.re),
            num(r.scaled.im)
        );
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub enum Json {
    Num(f64),
    Int(i64),
    Bool(bool),
    Str(String),
    Arr(Vec<Json>),
    Obj(Vec<(&'static str, Json)>),
}

impl Json {
    pub fn complex(z: Complex64) -> Json {
        Json::Obj(vec![("re", Json::Num(z.re)), ("im", Json::Num(z.im))])
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, 0);
        out.push('\n');
        out
    }

    fn write(&self, out: &mut String, indent: usize) {
        let pad = |n: usize| "  ".repeat(n);
        match self {
            Json::Num(x) if x.is_finite() => out.push_str(&num(*x)),
            Json::Num(_) => out.push_str("null"),
            Json::Int(i) => out.push_str(&i.to_string()),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Str(s) => {
                out.push('"');
                for c in s.chars() {
                    match c {
                        '"' => out.push_str("\\\""),
                        '\\' => out.push_str("\\\\"),
                        c if (c as u32) < 0x20 => {
                            let _ = write!(out, "\\u{:04x}", c as u32);
                        }
                        c => out.push(c),
                    }
                }
                out.push('"');
            }
            Json::Arr(items) if items.is_empty() => out.push_str("[]"),
            Json::Arr(items) => {
                out.push_str("[\n");
                for (i, item) in items.iter().enumerate() {
                    out.push_str(&pad(indent + 1));
                    item.write(out, indent + 1);
                    out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
                }
                out.push_str(&pad(indent));
                out.push(']');
            }
            Json::Obj(fields) if fields.is_empty() => out.push_str("{}"),
            Json::Obj(fields) => {
                out.push_str("{\n");
                for (i, (k, v)) in fields.iter().enumerate() {
                    let _ = write!(out, "{}\"{k}\": ", pad(indent + 1));
                    v.write(out, indent + 1);
                    out.push_str(if i + 1 < fields.len() { ",\n" } else { "\n" });
                }
                out.push_str(&pad(indent));
                out.push('}');
            }
        }
    }
}

pub fn law_json(law: &ScalingLaw) -> Json {
    Json::Obj(vec![
        ("t_exponent", Json::Num(law.t_exponent)),
        ("logt_exponent", Json::Num(law.logt_exponent)),
    ])
}

pub fn values_json(values: &[GridValue]) -> Json {
    Json::Arr(
        values
            .iter()
            .map(|v| {
                Json::Obj(vec![
                    ("X", Json::Num(v.x_log)),
                    ("re", Json::Num(v.value.re)),
                    ("im", Json::Num(v.value.im)),
                    ("abs_err", Json::Num(v.abs_err)),
                    ("scaled_re", Json::Num(v.scaled.re)),
                    ("scaled_im", Json::Num(v.scaled.im)),
                    ("converged", Json::Bool(v.converged)),
                ])
            })
            .collect(),
    )
}

fn estimate_json(e: &LimitEstimate) -> Json {
    Json::Obj(vec![
        ("c_hat", Json::complex(e.c_hat)),
        ("fit_degree", Json::Int(e.fit_degree as i64)),
        ("residual_rms", Json::Num(e.residual_rms)),
        (
            "grid",
            Json::Arr(e.grid.xs().iter().map(|&x| Json::Num(x)).collect()),
        ),
    ])
}

pub fn report_json(r: &VerificationReport) -> Json {
    Json::Obj(vec![
        ("claim", Json::Str(r.claim.clone())),
        ("piece", Json::Str(r.piece.to_string())),
        ("law", law_json(&r.law)),
        ("target", Json::complex(r.target)),
        ("estimate", estimate_json(&r.estimate)),
        ("rel_error", Json::Num(r.rel_error)),
        ("tolerance", Json::Num(r.tolerance)),
        ("pass", Json::Bool(r.pass)),
        ("values", values_json(&r.values)),
    ])
}

pub fn bound_json(r: &BoundReport) -> Json {
    Json::Obj(vec![
        ("claim", Json::Str(r.claim.clone())),
        ("piece", Json::Str(r.piece.to_string())),
        ("law", law_json(&r.law)),
        ("sup", Json::Num(r.sup)),
        ("trend_slope", Json::Num(r.trend_slope)),
        ("slope_limit", Json::Num(r.slope_limit)),
        ("pass", Json::Bool(r.pass)),
        ("values", values_json(&r.values)),
    ])
}

pub fn falsification_json(r: &FalsificationReport) -> Json {
    Json::Obj(vec![
        ("newton_law", law_json(&r.newton_law)),
        ("true_law", law_json(&r.true_law)),
        (
            "octave_ratios",
            Json::Arr(
                r.octave_ratios
                    .iter()
                    .map(|&(x, ratio)| {
                        Json::Obj(vec![("X", Json::Num(x)), ("ratio", Json::Num(ratio))])
                    })
                    .collect(),
            ),
        ),
        ("expected_ratio", Json::Num(r.expected_ratio)),
        ("max_ratio_deviation", Json::Num(r.max_ratio_deviation)),
        ("true_law_change", Json::Num(r.true_law_change)),
        ("pass", Json::Bool(r.pass)),
        ("newton_values", values_json(&r.newton_values)),
        ("true_values", values_json(&r.true_values)),
    ])
}

pub fn complex_text(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:.10} {sign} {:.10}i", z.re, z.im.abs())
}

pub fn report_text(r: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "claim      {}", r.claim);
    let _ = writeln!(
        out,
        "law        t^{} (log t)^{}",
        r.law.t_exponent, r.law.logt_exponent
    );
    let _ = writeln!(
        out,
        "{:>8}  {:>22}  {:>22}  {:>10}",
        "X", "scaled re", "scaled im", "abs_err"
    );
    for v in &r.values {
        let _ = writeln!(
            out,
            "{:>8}  {:>22.15}  {:>22.15}  {:>10.2e}{}",
            v.x_log,
            v.scaled.re,
            v.scaled.im,
            v.abs_err,
            if v.converged { "" } else { "  (not converged)" }
        );
    }
    let _ = writeln!(out, "target     {}", complex_text(r.target));
    let _ = writeln!(
        out,
        "estimate   {}  (degree {}, residual rms {:.2e})",
        complex_text(r.estimate.c_hat),
        r.estimate.fit_degree,
        r.estimate.residual_rms
    );
    let _ = writeln!(
        out,
        "rel_error  {:.3e}  (tolerance {})",
        r.rel_error, r.tolerance
    );
    let _ = writeln!(out, "{}", if r.pass { "PASS" } else { "FAIL" });
    out
}

pub fn bound_text(r: &BoundReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}: law t^{} (log t)^{}",
        r.claim, r.law.t_exponent, r.law.logt_exponent
    );
    for v in &r.values {
        let _ = writeln!(
            out,
            "{:>8}  |scaled| = {:.10e}{}",
            v.x_log,
            v.scaled.norm(),
            if v.converged { "" } else { "  (not converged)" }
        );
    }
    let _ = writeln!(
        out,
        "sup {:.6e}, last-octave slope {:.4} (limit {})",
        r.sup, r.trend_slope, r.slope_limit
    );
    let _ = writeln!(out, "{}", if r.pass { "PASS" } else { "FAIL" });
    out
}

pub fn falsification_text(r: &FalsificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "Newton law t^{} (log t)^{} vs flat-phase law t^{} (log t)^{}",
        r.newton_law.t_exponent,
        r.newton_law.logt_exponent,
        r.true_law.t_exponent,
        r.true_law.logt_exponent
    );
    for (x, ratio) in &r.octave_ratios {
        let _ = writeln!(
            out,
            "  octave {x} -> {}: ratio {ratio:.6} (growth X^(1/p) predicts {:.6})",
            2.0 * x,
            r.expected_ratio
        );
    }
    let _ = writeln!(
        out,
        "max ratio deviation {:.4}, last-octave change under the flat-phase law {:.3e}",
        r.max_ratio_deviation, r.true_law_change
    );
    let _ = writeln!(out, "{}", if r.pass { "PASS" } else { "FAIL" });
    out
}
