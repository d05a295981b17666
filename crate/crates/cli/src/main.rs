//! `flatphase`: verification runs, convergence tables and constants for
//! oscillatory integrals with flat phases.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
mod output;

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use flatphase_core::asymptotics::{
    check_bound, decay_law, falsify_newton_law, scaled_value, verify_lemma21, verify_theorem11,
    GridSpec, GridValue, LemmaPart, ScalingLaw, VerifyOptions,
};
use flatphase_core::error::Error;
use flatphase_core::newton::{newton_data, predicted_law, SupportSet};
use flatphase_core::phase::{standard_bump, Amplitude2D, FlatPhaseParams, Sign};
use flatphase_core::pieces::{
    eval_i2d, eval_piece, AmplitudeRef, EvalRequest, Method2D, PieceId, Representation,
};
use flatphase_core::quad::ToleranceConfig;
use flatphase_core::specfun::{c_constant, e1_tail};
use num_complex::Complex64;

use output::{Json, Row};

#[derive(Parser, Debug)]
#[command(name = "flatphase", version, about, args_override_self = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// `key = value` file with optional `[command]` sections; flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Limit constants C_q and E1(-i).
    Constants(ConstantsArgs),
    /// Evaluate one piece at a list of X = log t values.
    Eval(EvalArgs),
    /// Limits of the one-dimensional pieces L1 and L2.
    Lemma(LemmaArgs),
    /// Limit of t^(1/q) (log t)^(1/p) times the full integral.
    Theorem(TheoremArgs),
    /// Table of every piece over a grid, scaled by its decay law.
    Pieces(PiecesArgs),
    /// Boundedness of a scaled piece over a grid.
    Bound(BoundArgs),
    /// Newton distance, multiplicity and predicted decay law of a support set.
    Newton(NewtonArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum AmpKind {
    Product,
    Tilted,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum PartArg {
    I,
    Ii,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Factored,
    Iterated,
    Direct2d,
}

impl From<MethodArg> for Method2D {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Factored => Method2D::Factored,
            MethodArg::Iterated => Method2D::Iterated,
            MethodArg::Direct2d => Method2D::Direct2D,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ReprArg {
    Auto,
    Direct,
    Transformed,
}

impl From<ReprArg> for Representation {
    fn from(r: ReprArg) -> Self {
        match r {
            ReprArg::Auto => Representation::Auto,
            ReprArg::Direct => Representation::Direct,
            ReprArg::Transformed => Representation::Transformed,
        }
    }
}

#[derive(Args, Debug)]
struct PhaseArgs {
    /// Flatness exponent p > 0 of e^{-1/|x1|^p}.
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    /// Power q >= 2 of x2.
    #[arg(long, default_value_t = 2)]
    q: u32,
    /// Sign of the x2^q term.
    #[arg(long, value_enum, default_value_t = SignArg::Plus)]
    sign: SignArg,
}

impl PhaseArgs {
    fn params(&self) -> Result<FlatPhaseParams, Error> {
        let sign = match self.sign {
            SignArg::Plus => Sign::Plus,
            SignArg::Minus => Sign::Minus,
        };
        FlatPhaseParams::new(self.p, self.q, sign)
    }
}

#[derive(Args, Debug)]
struct AmpArgs {
    /// Product of bumps, or a non-separable tilted bump.
    #[arg(long, value_enum, default_value_t = AmpKind::Product)]
    amplitude: AmpKind,
    /// x1 bump radius (the radius of the tilted bump); also the 1D profile.
    #[arg(long, default_value_t = 0.5)]
    r1: f64,
    /// x2 bump radius.
    #[arg(long, default_value_t = 0.5)]
    r2: f64,
    /// Slope of the tilted amplitude's linear factor.
    #[arg(long, default_value_t = 0.3)]
    tilt: f64,
}

impl AmpArgs {
    fn two_d(&self) -> Result<Amplitude2D, Error> {
        match self.amplitude {
            AmpKind::Product => Amplitude2D::product_bump(self.r1, self.r2),
            AmpKind::Tilted => {
                if !(self.r1 > 0.0) || !self.r1.is_finite() || !self.tilt.is_finite() {
                    return Err(Error::Precondition(
                        "tilted amplitude needs a finite radius > 0 and finite tilt".into(),
                    ));
                }
                Ok(Amplitude2D::Tilted {
                    radius: self.r1,
                    tilt: self.tilt,
                })
            }
        }
    }
}

#[derive(Args, Debug)]
struct OutArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(args_override_self = true)]
struct ConstantsArgs {
    #[arg(long, default_value_t = 2)]
    q: u32,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
#[command(args_override_self = true)]
struct EvalArgs {
    #[arg(long, value_parser = parse_piece)]
    piece: PieceId,
    /// Comma-separated X = log t values.
    #[arg(long, default_value = "10", value_delimiter = ',', num_args = 1..)]
    x: Vec<f64>,
    /// Scaling law "a,b" for t^a (log t)^b; needs X > 1.
    #[arg(long, value_parser = parse_law)]
    law: Option<ScalingLaw>,
    #[arg(long, value_enum, default_value_t = ReprArg::Auto)]
    repr: ReprArg,
    /// Method for I2D (default: factored for products, iterated otherwise).
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    /// Relative quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    quad_tol: f64,
    #[command(flatten)]
    phase: PhaseArgs,
    #[command(flatten)]
    amp: AmpArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
#[command(args_override_self = true)]
struct LemmaArgs {
    #[arg(long, value_enum, default_value_t = PartArg::I)]
    part: PartArg,
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    /// Radius of the bump profile.
    #[arg(long, default_value_t = 0.5)]
    r1: f64,
    #[arg(long, default_value = "25,50,100,200,400", value_parser = parse_grid)]
    grid: GridSpec,
    #[arg(long, default_value_t = 2)]
    fit_degree: usize,
    /// Relative tolerance on the limit (default 0.02 for i, 0.05 for ii).
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 1e-10)]
    quad_tol: f64,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
#[command(args_override_self = true)]
struct TheoremArgs {
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    #[arg(long, default_value_t = 2)]
    q: u32,
    #[arg(long, value_enum, default_value_t = MethodArg::Factored)]
    method: MethodArg,
    #[arg(long, default_value = "25,50,100,200,400", value_parser = parse_grid)]
    grid: GridSpec,
    #[arg(long, default_value_t = 2)]
    fit_degree: usize,
    #[arg(long, default_value_t = 0.02)]
    tol: f64,
    #[arg(long, default_value_t = 1e-10)]
    quad_tol: f64,
    #[command(flatten)]
    amp: AmpArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
#[command(args_override_self = true)]
struct PiecesArgs {
    #[arg(long, default_value = "5,10,20", value_parser = parse_grid)]
    grid: GridSpec,
    #[arg(long, default_value_t = 1e-10)]
    quad_tol: f64,
    #[command(flatten)]
    phase: PhaseArgs,
    #[command(flatten)]
    amp: AmpArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
#[command(args_override_self = true)]
struct BoundArgs {
    #[arg(long, value_parser = parse_piece)]
    piece: PieceId,
    /// Scaling law "a,b"; defaults to the piece's decay law.
    #[arg(long, value_parser = parse_law)]
    law: Option<ScalingLaw>,
    #[arg(long, default_value = "10,15,20,25,30", value_parser = parse_grid)]
    grid: GridSpec,
    #[arg(long, default_value_t = 1e-10)]
    quad_tol: f64,
    #[command(flatten)]
    phase: PhaseArgs,
    #[command(flatten)]
    amp: AmpArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
#[command(args_override_self = true)]
struct NewtonArgs {
    /// Taylor support "a1,a2;b1,b2;..." (flat terms have none).
    #[arg(long, value_parser = parse_support)]
    support: SupportSet,
    /// Test the predicted law on the flat phase x2^q + e^{-1/|x1|^p}.
    #[arg(long)]
    falsify: bool,
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    /// Power q of the flat phase; defaults to b for a support {(0, b)}.
    #[arg(long)]
    q: Option<u32>,
    #[arg(long, default_value = "25,50,100,200,400", value_parser = parse_grid)]
    grid: GridSpec,
    #[arg(long, default_value_t = 1e-10)]
    quad_tol: f64,
    #[command(flatten)]
    amp: AmpArgs,
    #[command(flatten)]
    out: OutArgs,
}

fn parse_piece(s: &str) -> Result<PieceId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|v| {
            let v = v.trim();
            v.parse::<f64>()
                .map_err(|_| format!("'{v}' is not a number"))
        })
        .collect()
}

fn parse_grid(s: &str) -> Result<GridSpec, String> {
    GridSpec::new(parse_list(s)?).map_err(|e| e.to_string())
}

fn parse_law(s: &str) -> Result<ScalingLaw, String> {
    match parse_list(s)?.as_slice() {
        [a, b] => ScalingLaw::new(*a, *b).map_err(|e| e.to_string()),
        _ => Err("law must be \"t_exponent,logt_exponent\"".into()),
    }
}

fn parse_support(s: &str) -> Result<SupportSet, String> {
    let mut pts = Vec::new();
    for pair in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (a, b) = pair
            .split_once(',')
            .ok_or_else(|| format!("support point '{pair}' must be 'a1,a2'"))?;
        let parse = |v: &str| {
            v.trim()
                .parse::<u32>()
                .map_err(|_| format!("'{}' is not a nonnegative integer", v.trim()))
        };
        pts.push((parse(a)?, parse(b)?));
    }
    SupportSet::new(pts).map_err(|e| e.to_string())
}

/// Outcome of a successful run.
struct Outcome {
    text: String,
    pass: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, pass: true }
    }
}

/// A usage, configuration or parameter error (exit code 2).
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

fn quad_config(rel_tol: f64) -> Result<ToleranceConfig, Failure> {
    let mut tol = ToleranceConfig::with_rel(rel_tol);
    if let Ok(v) = std::env::var("FLATPHASE_MAX_EVALS") {
        tol.max_evals = v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| {
                Failure(format!(
                    "FLATPHASE_MAX_EVALS='{v}' is not a positive integer"
                ))
            })?;
    }
    tol.validate()?;
    Ok(tol)
}

fn render<T>(
    format: Format,
    item: &T,
    text: impl Fn(&T) -> String,
    rows: impl Fn(&T) -> Vec<Row>,
    json: impl Fn(&T) -> Json,
) -> String {
    match format {
        Format::Text => text(item),
        Format::Csv => output::csv(&rows(item)),
        Format::Json => json(item).render(),
    }
}

fn run_constants(a: &ConstantsArgs) -> Result<Outcome, Failure> {
    let c = c_constant(a.q)?.value;
    let e1 = e1_tail(1.0)?;
    let name = format!("C_{}", a.q);
    let text = match a.out.format {
        Format::Text => format!(
            "{name} = {}\nE1(-i) = {}\n",
            output::complex_text(c),
            output::complex_text(e1)
        ),
        Format::Csv => format!(
            "name,re,im\n{name},{},{}\nE1(-i),{},{}\n",
            output::num(c.re),
            output::num(c.im),
            output::num(e1.re),
            output::num(e1.im)
        ),
        Format::Json => Json::Obj(vec![
            ("q", Json::Int(a.q as i64)),
            ("c_q", Json::complex(c)),
            ("e1_minus_i", Json::complex(e1)),
        ])
        .render(),
    };
    Ok(Outcome::ok(text))
}

fn scaled_or_value(v: Complex64, x: f64, law: Option<ScalingLaw>) -> Result<Complex64, Error> {
    match law {
        Some(law) => scaled_value(v, x, law),
        None => Ok(v),
    }
}

fn run_eval(a: &EvalArgs) -> Result<Outcome, Failure> {
    let params = a.phase.params()?;
    let tol = quad_config(a.quad_tol)?;
    let psi = if a.piece == PieceId::SPower {
        standard_bump(a.amp.r2)?
    } else {
        standard_bump(a.amp.r1)?
    };
    let phi = a.amp.two_d()?;
    let mut rows = Vec::new();
    for &x in &a.x {
        let v = match (a.piece, a.method) {
            (PieceId::I2D, Some(m)) => eval_i2d(x, &phi, &params, m.into(), a.repr.into(), &tol)?,
            _ => eval_piece(&EvalRequest {
                piece: a.piece,
                params,
                amplitude: if a.piece.is_one_dimensional() {
                    AmplitudeRef::OneD(&psi)
                } else {
                    AmplitudeRef::TwoD(&phi)
                },
                x_log: x,
                representation: a.repr.into(),
                tol,
            })?,
        };
        rows.push(Row {
            piece: a.piece.to_string(),
            x_log: x,
            value: v.value,
            abs_err: v.abs_error_estimate,
            scaled: scaled_or_value(v.value, x, a.law)?,
        });
    }
    let text = render(a.out.format, &rows, rows_text, |r| r.clone(), rows_json);
    Ok(Outcome::ok(text))
}

fn rows_text(rows: &Vec<Row>) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<12} {:>8}  {:>24}  {:>24}  {:>10}  {:>24}  {:>24}",
        "piece", "X", "re", "im", "abs_err", "scaled re", "scaled im"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:<12} {:>8}  {:>24.16e}  {:>24.16e}  {:>10.2e}  {:>24.16e}  {:>24.16e}",
            r.piece, r.x_log, r.value.re, r.value.im, r.abs_err, r.scaled.re, r.scaled.im
        );
    }
    out
}

#[allow(clippy::ptr_arg)]
fn rows_json(rows: &Vec<Row>) -> Json {
    Json::Arr(
        rows.iter()
            .map(|r| {
                Json::Obj(vec![
                    ("piece", Json::Str(r.piece.clone())),
                    ("X", Json::Num(r.x_log)),
                    ("re", Json::Num(r.value.re)),
                    ("im", Json::Num(r.value.im)),
                    ("abs_err", Json::Num(r.abs_err)),
                    ("scaled_re", Json::Num(r.scaled.re)),
                    ("scaled_im", Json::Num(r.scaled.im)),
                ])
            })
            .collect(),
    )
}

fn grid_rows(piece: &str, values: &[GridValue]) -> Vec<Row> {
    values.iter().map(|v| Row::from_grid(piece, v)).collect()
}

fn run_lemma(a: &LemmaArgs) -> Result<Outcome, Failure> {
    let part = match a.part {
        PartArg::I => LemmaPart::I,
        PartArg::Ii => LemmaPart::II,
    };
    let psi = standard_bump(a.r1)?;
    let opts = VerifyOptions {
        fit_degree: a.fit_degree,
        tolerance: a.tol.unwrap_or(part.default_tolerance()),
        quad: quad_config(a.quad_tol)?,
    };
    let r = verify_lemma21(part, a.p, &psi, &a.grid, &opts)?;
    let text = render(
        a.out.format,
        &r,
        output::report_text,
        |r| grid_rows(r.piece.name(), &r.values),
        output::report_json,
    );
    Ok(Outcome { text, pass: r.pass })
}

fn run_theorem(a: &TheoremArgs) -> Result<Outcome, Failure> {
    let phi = a.amp.two_d()?;
    let opts = VerifyOptions {
        fit_degree: a.fit_degree,
        tolerance: a.tol,
        quad: quad_config(a.quad_tol)?,
    };
    let r = verify_theorem11(a.p, a.q, &phi, &a.grid, a.method.into(), &opts)?;
    let text = render(
        a.out.format,
        &r,
        output::report_text,
        |r| grid_rows(r.piece.name(), &r.values),
        output::report_json,
    );
    Ok(Outcome { text, pass: r.pass })
}

fn run_pieces(a: &PiecesArgs) -> Result<Outcome, Failure> {
    let params = a.phase.params()?;
    let tol = quad_config(a.quad_tol)?;
    let psi1 = standard_bump(a.amp.r1)?;
    let psi2 = standard_bump(a.amp.r2)?;
    let phi = a.amp.two_d()?;
    let mut rows = Vec::new();
    for piece in PieceId::ALL {
        let amplitude = match piece {
            PieceId::SPower => AmplitudeRef::OneD(&psi2),
            p if p.is_one_dimensional() => AmplitudeRef::OneD(&psi1),
            _ => AmplitudeRef::TwoD(&phi),
        };
        let law = decay_law(piece, params.p, params.q);
        for &x in a.grid.xs() {
            let v = eval_piece(&EvalRequest {
                piece,
                params,
                amplitude,
                x_log: x,
                representation: Representation::Auto,
                tol,
            })?;
            rows.push(Row {
                piece: piece.to_string(),
                x_log: x,
                value: v.value,
                abs_err: v.abs_error_estimate,
                scaled: scaled_value(v.value, x, law)?,
            });
        }
    }
    let text = render(a.out.format, &rows, rows_text, |r| r.clone(), rows_json);
    Ok(Outcome::ok(text))
}

fn run_bound(a: &BoundArgs) -> Result<Outcome, Failure> {
    let params = a.phase.params()?;
    let tol = quad_config(a.quad_tol)?;
    let psi = if a.piece == PieceId::SPower {
        standard_bump(a.amp.r2)?
    } else {
        standard_bump(a.amp.r1)?
    };
    let phi = a.amp.two_d()?;
    let amplitude = if a.piece.is_one_dimensional() {
        AmplitudeRef::OneD(&psi)
    } else {
        AmplitudeRef::TwoD(&phi)
    };
    let law = a.law.unwrap_or(decay_law(a.piece, params.p, params.q));
    let r = check_bound(a.piece, &params, amplitude, law, &a.grid, &tol)?;
    let text = render(
        a.out.format,
        &r,
        output::bound_text,
        |r| grid_rows(r.piece.name(), &r.values),
        output::bound_json,
    );
    Ok(Outcome { text, pass: r.pass })
}

fn run_newton(a: &NewtonArgs) -> Result<Outcome, Failure> {
    let data = newton_data(&a.support)?;
    let law = predicted_law(data.d, data.m)?;
    let note = "flat term ignored (no Taylor support)";
    let falsified = if a.falsify {
        let q = match (a.q, a.support.points()) {
            (Some(q), _) => q,
            (None, [(0, b)]) => *b,
            _ => {
                return Err(Failure(
                    "--falsify needs --q unless the support is {(0, q)}".into(),
                ))
            }
        };
        let phi = a.amp.two_d()?;
        let tol = quad_config(a.quad_tol)?;
        Some(falsify_newton_law(a.p, q, &phi, &a.grid, law, &tol)?)
    } else {
        None
    };
    let vertices = data
        .vertices
        .iter()
        .map(|(x, y)| format!("({x},{y})"))
        .collect::<Vec<_>>()
        .join(" ");
    let text = match a.out.format {
        Format::Text => {
            let mut out = format!(
                "vertices {vertices}\nd = {}\nm = {}\npredicted law: |I| ~ t^(-{}) (log t)^({})\nnote: {note}\n",
                data.d, data.m, law.t_exponent, data.m - 1
            );
            if let Some(f) = &falsified {
                out.push_str(&output::falsification_text(f));
            }
            out
        }
        Format::Csv => match &falsified {
            Some(f) => {
                let mut rows = grid_rows("I2D_NEWTON", &f.newton_values);
                rows.extend(grid_rows("I2D_FLAT", &f.true_values));
                output::csv(&rows)
            }
            None => output::csv(&[]),
        },
        Format::Json => {
            let mut fields = vec![
                (
                    "vertices",
                    Json::Arr(
                        data.vertices
                            .iter()
                            .map(|&(x, y)| {
                                Json::Arr(vec![Json::Int(x as i64), Json::Int(y as i64)])
                            })
                            .collect(),
                    ),
                ),
                ("d", Json::Num(data.d)),
                ("m", Json::Int(data.m as i64)),
                ("predicted_law", output::law_json(&law)),
                ("note", Json::Str(note.into())),
            ];
            if let Some(f) = &falsified {
                fields.push(("falsification", output::falsification_json(f)));
            }
            Json::Obj(fields).render()
        }
    };
    Ok(Outcome {
        text,
        pass: falsified.is_none_or(|f| f.pass),
    })
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Constants(a) => run_constants(a),
        Command::Eval(a) => run_eval(a),
        Command::Lemma(a) => run_lemma(a),
        Command::Theorem(a) => run_theorem(a),
        Command::Pieces(a) => run_pieces(a),
        Command::Bound(a) => run_bound(a),
        Command::Newton(a) => run_newton(a),
    }
}

fn destination(cli: &Cli) -> Option<&PathBuf> {
    match &cli.command {
        Command::Constants(a) => a.out.out.as_ref(),
        Command::Eval(a) => a.out.out.as_ref(),
        Command::Lemma(a) => a.out.out.as_ref(),
        Command::Theorem(a) => a.out.out.as_ref(),
        Command::Pieces(a) => a.out.out.as_ref(),
        Command::Bound(a) => a.out.out.as_ref(),
        Command::Newton(a) => a.out.out.as_ref(),
    }
}

fn main() -> ExitCode {
    let argv = match config::expand_config(std::env::args().collect()) {
        Ok(argv) => argv,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match destination(&cli) {
        Some(path) => {
            if let Err(e) = fs::write(path, &outcome.text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", outcome.text),
    }
    if outcome.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
