//! Argument handling for `trig-engine`. [`run`] does all the work and returns
//! the exit code with the text to print, so it can be driven in-process.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use trigint_core::closed_form::{even_branch, odd_branch, star_discrepancy_report, BranchExpansion};
use trigint_core::gr_table::{gr_rows, render_markdown, GrEntry, RowParams};
use trigint_core::half_line::{
    check_ode_system, check_sum99, double_log, fresnel_c, halfline_power, linear_phase, log_weighted, multidim_log,
    power_arg, TrigKind,
};
use trigint_core::quadrature::{integrate_finite, integrate_halfline_osc, OscillatorySpec};
use trigint_core::recurrence::{check_wallis_identities, CompleteIntegrals};
use trigint_core::verify::{complete_oracle, default_tol, verify_sweep, SweepBounds, SweepFamily};
use trigint_core::{PiPoly, PrecisionFloat, Rational, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "trig-engine", version, about = "Exact and numeric evaluation of x^p·trig^n integrals")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Exact, global = true)]
    pub format: Format,
    /// Significant digits for numeric output
    #[arg(long, env = "TRIG_ENGINE_DIGITS", default_value_t = 20, global = true,
          value_parser = clap::value_parser!(u32).range(1..=1000))]
    pub digits: u32,
    /// Tolerance for numeric comparisons (overrides the per-family default)
    #[arg(long, global = true)]
    pub tol: Option<f64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Exact,
    Latex,
    Float,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Cos,
    Sin,
}

impl From<Kind> for TrigKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Cos => TrigKind::Cos,
            Kind::Sin => TrigKind::Sin,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// ∫₀^{π/2} xᵖ cosⁿx dx
    C,
    /// ∫₀^{π/2} xᵖ sinⁿx dx
    S,
    /// c(2n, p) as a π-expansion with nested-sum coefficients
    Even,
    /// c(2n+1, p) as a π-expansion with nested-sum coefficients
    Odd,
    /// ∫₀^∞ trig^{2n+1}(x^p) dx, p > 1
    PowerArg,
    /// ∫₀^∞ log x · cos^{2n+1}(x²) dx
    LogWeighted,
    /// ∬ cos^{2n+1}(x+y) / (x^p y^q) dx dy
    DoubleLog,
    /// n-fold ∫ log x₁⋯log x_n cos(x₁²+⋯+x_n²) dx
    Multidim,
    /// ∫₀^x cos(πt²/2) dt
    Fresnel,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    /// Σ 4^{-i} C(n,2i) C(2i,i) = 2^{-n} C(2n,n), its recurrence, and the cos^{2n} expansion
    Sum1,
    /// the binomial identity behind the odd-power expansion, with its recurrence
    Sum99,
    /// b-derivative system linking the cos and sin closed forms
    Ode,
    /// constant terms of the alternative coefficient statement vs the recurrence
    Star,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyFamily {
    Complete,
    Halfline,
    Examples,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate one integral
    Eval {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 0)]
        n: u32,
        /// Power (integer for c/s/even/odd, rational such as 1/2 elsewhere)
        #[arg(long, default_value = "0")]
        p: String,
        #[arg(long)]
        q: Option<String>,
        #[arg(long, value_enum, default_value_t = Kind::Cos)]
        kind: Kind,
        /// Upper limit for fresnel
        #[arg(long)]
        x: Option<String>,
        /// Check against quadrature
        #[arg(long)]
        verify: bool,
    },
    /// ∫₀^∞ x^{-p} trig^{2n+1}(a·x + b) dx in closed form
    Halfline {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 0)]
        n: u32,
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        b: f64,
        /// Frequency; only with --n 0
        #[arg(long)]
        a: Option<f64>,
        #[arg(long)]
        verify: bool,
    },
    /// Regenerate rows of a classical table entry
    Table {
        #[arg(long)]
        gr: String,
        /// Inclusive index range A..B
        #[arg(long, default_value = "0..4")]
        range: String,
        #[arg(long, default_value = "1/2")]
        p: String,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        b: f64,
    },
    /// Run an identity checker
    Identities {
        #[arg(long, value_enum)]
        check: Check,
        #[arg(long, default_value_t = 50)]
        max_n: u32,
        #[arg(long, default_value = "1/2")]
        p: String,
        #[arg(long, default_value_t = 0.3, allow_negative_numbers = true)]
        b: f64,
    },
    /// Run a verification sweep
    Verify {
        #[arg(long, value_enum)]
        family: VerifyFamily,
        #[arg(long)]
        max_n: Option<u32>,
        #[arg(long)]
        max_p: Option<u32>,
    },
}

/// Outcome of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn verified(stdout: String, pass: bool) -> Self {
        Outcome {
            code: if pass { EXIT_OK } else { EXIT_VERIFY_FAILED },
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: msg.into() }
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome::usage(text),
            };
        }
    };
    match dispatch(&cli) {
        Ok(o) => o,
        Err(msg) => Outcome::usage(format!("error: {msg}\n")),
    }
}

type CmdResult = Result<Outcome, String>;

fn parse_rational(name: &str, s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| format!("--{name}: {e}"))
}

fn parse_int_power(s: &str) -> Result<u32, String> {
    s.parse::<u32>().map_err(|_| format!("--p must be a non-negative integer for this family, got `{s}`"))
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("--range must look like A..B, got `{s}`"))?;
    let a: u32 = a.trim().parse().map_err(|_| format!("bad range start `{a}`"))?;
    let b: u32 = b.trim().parse().map_err(|_| format!("bad range end `{b}`"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    if b - a > 200 {
        return Err("ranges are limited to 201 rows".into());
    }
    Ok((a, b))
}

fn dispatch(cli: &Cli) -> CmdResult {
    let g = &cli.global;
    match &cli.command {
        Command::Eval { family, n, p, q, kind, x, verify } => cmd_eval(g, *family, *n, p, q.as_deref(), *kind, x.as_deref(), *verify),
        Command::Halfline { kind, n, p, b, a, verify } => cmd_halfline(g, *kind, *n, p, *b, *a, *verify),
        Command::Table { gr, range, p, b } => cmd_table(g, gr, range, p, *b),
        Command::Identities { check, max_n, p, b } => cmd_identities(g, *check, *max_n, p, *b),
        Command::Verify { family, max_n, max_p } => cmd_verify(g, *family, *max_n, *max_p),
    }
}

fn family_id(f: Family) -> &'static str {
    match f {
        Family::C => "c",
        Family::S => "s",
        Family::Even => "even",
        Family::Odd => "odd",
        Family::PowerArg => "power-arg",
        Family::LogWeighted => "log-weighted",
        Family::DoubleLog => "double-log",
        Family::Multidim => "multidim",
        Family::Fresnel => "fresnel",
    }
}

/// Everything a single evaluation produces.
struct Evaluation {
    id: String,
    params: Value,
    exact_plain: Option<String>,
    exact_latex: Option<String>,
    exact_json: Value,
    value: PrecisionFloat,
    /// (oracle value, tolerance)
    oracle: Option<(f64, f64)>,
}

impl Evaluation {
    fn verified(&self) -> Option<bool> {
        self.oracle.map(|(o, tol)| (self.value.to_f64() - o).abs() <= tol)
    }

    fn render(&self, format: Format, digits: u32) -> String {
        let float = self.value.to_decimal_string(digits);
        let mut out = match format {
            Format::Exact => self.exact_plain.clone().unwrap_or_else(|| float.clone()),
            Format::Latex => self.exact_latex.clone().unwrap_or_else(|| float.clone()),
            Format::Float => float.clone(),
            Format::Json => {
                let v = json!({
                    "integral": self.id,
                    "params": self.params,
                    "exact": self.exact_json,
                    "float": float,
                    "verified": self.verified(),
                });
                serde_json::to_string_pretty(&v).expect("json")
            }
        };
        out.push('\n');
        if format != Format::Json {
            if let (Some((o, tol)), Some(ok)) = (self.oracle, self.verified()) {
                let _ = writeln!(
                    out,
                    "verified: {} (quadrature {:.15e}, |diff| {:.3e}, tol {:.1e})",
                    ok,
                    o,
                    (self.value.to_f64() - o).abs(),
                    tol
                );
            }
        }
        out
    }

    fn into_outcome(self, g: &Global) -> Outcome {
        let text = self.render(g.format, g.digits);
        match self.verified() {
            Some(pass) => Outcome::verified(text, pass),
            None => Outcome::ok(text),
        }
    }
}

fn poly_eval(id: String, params: Value, poly: &PiPoly, digits: u32) -> Evaluation {
    Evaluation {
        id,
        params,
        exact_plain: Some(poly.render_plain()),
        exact_latex: Some(poly.render_latex()),
        exact_json: poly.to_json(),
        value: poly.eval(digits),
        oracle: None,
    }
}

fn branch_eval(id: String, params: Value, b: &BranchExpansion, digits: u32) -> Evaluation {
    Evaluation {
        exact_json: b.to_json(),
        ..poly_eval(id, params, &b.assembled, digits)
    }
}

fn osc_oracle(spec: OscillatorySpec) -> Result<f64, String> {
    integrate_halfline_osc(&spec).map(|r| r.value).map_err(|e| e.to_string())
}

#[allow(clippy::too_many_arguments)]
fn cmd_eval(g: &Global, family: Family, n: u32, p: &str, q: Option<&str>, kind: Kind, x: Option<&str>, verify: bool) -> CmdResult {
    let d = g.digits;
    let id = family_id(family).to_string();
    let err = |e: trigint_core::Error| e.to_string();
    let ev = match family {
        Family::C | Family::S | Family::Even | Family::Odd => {
            let pi = parse_int_power(p)?;
            let params = json!({ "n": n, "p": pi });
            let mut e = match family {
                Family::C => poly_eval(id, params, &CompleteIntegrals::new().cos(n, pi), d),
                Family::S => poly_eval(id, params, &CompleteIntegrals::new().sin(n, pi), d),
                Family::Even => branch_eval(id, params, &even_branch(n, pi), d),
                _ => branch_eval(id, params, &odd_branch(n, pi), d),
            };
            if verify {
                let (tk, full_n) = match family {
                    Family::C => (TrigKind::Cos, n),
                    Family::S => (TrigKind::Sin, n),
                    Family::Even => (TrigKind::Cos, 2 * n),
                    _ => (TrigKind::Cos, 2 * n + 1),
                };
                e.oracle = Some((complete_oracle(tk, full_n, pi), g.tol.unwrap_or(1e-10)));
            }
            e
        }
        Family::PowerArg => {
            let pr = parse_rational("p", p)?;
            let value = power_arg(kind.into(), n, &pr, d).map_err(err)?;
            let oracle = if verify {
                let pf = pr.to_f64();
                let spec = OscillatorySpec::new(kind.into(), n, 1.0 - 1.0 / pf, 0.0);
                Some((osc_oracle(spec)? / pf, g.tol.unwrap_or(1e-6)))
            } else {
                None
            };
            numeric(id, json!({ "kind": kind_str(kind), "n": n, "p": pr.to_fraction_string() }), value, oracle)
        }
        Family::LogWeighted => {
            let value = log_weighted(n, d);
            let oracle = if verify {
                let spec = OscillatorySpec::new(TrigKind::Cos, n, 0.5, 0.0).with_log_weight();
                Some((0.25 * osc_oracle(spec)?, g.tol.unwrap_or(1e-5)))
            } else {
                None
            };
            numeric(id, json!({ "n": n }), value, oracle)
        }
        Family::DoubleLog => {
            let pr = parse_rational("p", p)?;
            let qr = parse_rational("q", q.unwrap_or(p))?;
            let value = double_log(&pr, &qr, n, d).map_err(err)?;
            if verify {
                return Err("double-log has no one-dimensional quadrature oracle".into());
            }
            numeric(id, json!({ "n": n, "p": pr.to_fraction_string(), "q": qr.to_fraction_string() }), value, None)
        }
        Family::Multidim => {
            if verify {
                return Err("multidim has no quadrature oracle".into());
            }
            let m = multidim_log(n, d).map_err(err)?;
            let exact = json!({
                "delta": m.delta,
                "psi": { "re": m.psi.re.to_decimal_string(d), "im": m.psi.im.to_decimal_string(d) },
            });
            Evaluation {
                exact_json: exact,
                ..numeric(id, json!({ "n": n }), m.value, None)
            }
        }
        Family::Fresnel => {
            let xs = x.unwrap_or("1");
            let xv = PrecisionFloat::parse(xs, d).ok_or_else(|| format!("--x: cannot parse `{xs}`"))?;
            let value = fresnel_c(&xv).map_err(err)?;
            let oracle = if verify {
                let xf = xv.to_f64();
                let o = if xf > 0.0 {
                    integrate_finite(|t| (std::f64::consts::PI * t * t / 2.0).cos(), 0.0, xf, 1e-13).value
                } else {
                    0.0
                };
                Some((o, g.tol.unwrap_or(1e-10)))
            } else {
                None
            };
            numeric(id, json!({ "x": xs }), value, oracle)
        }
    };
    Ok(ev.into_outcome(g))
}

fn kind_str(k: Kind) -> &'static str {
    match k {
        Kind::Cos => "cos",
        Kind::Sin => "sin",
    }
}

fn numeric(id: String, params: Value, value: PrecisionFloat, oracle: Option<(f64, f64)>) -> Evaluation {
    Evaluation {
        id,
        params,
        exact_plain: None,
        exact_latex: None,
        exact_json: Value::Null,
        value,
        oracle,
    }
}

fn cmd_halfline(g: &Global, kind: Kind, n: u32, p: &str, b: f64, a: Option<f64>, verify: bool) -> CmdResult {
    let pr = parse_rational("p", p)?;
    let tol = g.tol.unwrap_or(1e-6);
    let mut params = json!({ "kind": kind_str(kind), "n": n, "p": pr.to_fraction_string(), "b": b });
    let ev = match a {
        Some(freq) => {
            if n != 0 {
                return Err("--a is only supported with --n 0".into());
            }
            params["a"] = json!(freq);
            let value = linear_phase(kind.into(), freq, b, &pr, g.digits).map_err(|e| e.to_string())?;
            let oracle = if verify {
                Some((osc_oracle(OscillatorySpec::new(kind.into(), 0, pr.to_f64(), b).with_frequency(freq))?, tol))
            } else {
                None
            };
            numeric("halfline-linear".into(), params, value, oracle)
        }
        None => {
            let h = halfline_power(kind.into(), n, &pr, b, g.digits).map_err(|e| e.to_string())?;
            let oracle = if verify {
                Some((osc_oracle(OscillatorySpec::new(kind.into(), n, pr.to_f64(), b).with_tol(tol))?, tol))
            } else {
                None
            };
            Evaluation {
                id: "halfline".into(),
                params,
                exact_plain: Some(h.form.render_plain()),
                exact_latex: Some(h.form.render_latex()),
                exact_json: h.form.to_json(),
                value: h.value,
                oracle,
            }
        }
    };
    Ok(ev.into_outcome(g))
}

fn cmd_table(g: &Global, gr: &str, range: &str, p: &str, b: f64) -> CmdResult {
    let entry: GrEntry = gr.parse()?;
    let (from, to) = parse_range(range)?;
    let params = RowParams {
        p: parse_rational("p", p)?,
        b,
        digits: g.digits,
        tol: g.tol,
    };
    let rows = gr_rows(entry, from, to, &params).map_err(|e| e.to_string())?;
    let pass = rows.iter().all(|r| r.verified);
    let text = match g.format {
        Format::Json => {
            let v: Vec<Value> = rows.iter().map(|r| r.to_json(&params)).collect();
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
        _ => render_markdown(entry, &rows),
    };
    Ok(Outcome::verified(text, pass))
}

fn render_report(g: &Global, r: &VerificationReport) -> String {
    match g.format {
        Format::Json => serde_json::to_string_pretty(&r.to_json()).expect("json") + "\n",
        _ => format!("{r}\n"),
    }
}

fn cmd_identities(g: &Global, check: Check, max_n: u32, p: &str, b: f64) -> CmdResult {
    let report = match check {
        Check::Sum1 => check_wallis_identities(max_n as u64),
        Check::Sum99 => check_sum99(max_n as u64),
        Check::Ode => {
            let pr = parse_rational("p", p)?;
            let mut all = VerificationReport::new(format!("b-derivative system, n ≤ {max_n}"));
            for n in 0..=max_n.min(12) {
                all.extend(check_ode_system(n, &pr, b, 1e-5, g.tol.unwrap_or(1e-7)).map_err(|e| e.to_string())?);
            }
            all
        }
        Check::Star => star_discrepancy_report(max_n.min(12), 7),
    };
    Ok(Outcome::verified(render_report(g, &report), report.all_passed()))
}

fn cmd_verify(g: &Global, family: VerifyFamily, max_n: Option<u32>, max_p: Option<u32>) -> CmdResult {
    let fam = match family {
        VerifyFamily::Complete => SweepFamily::Complete,
        VerifyFamily::Halfline => SweepFamily::Halfline,
        VerifyFamily::Examples => SweepFamily::Examples,
    };
    let mut bounds = SweepBounds::default_for(fam);
    if let Some(n) = max_n {
        bounds.n_max = n.min(if fam == SweepFamily::Complete { 30 } else { 8 });
    }
    if let Some(p) = max_p {
        bounds.p_max = p.min(30);
    }
    let tol = g.tol.unwrap_or(default_tol(fam));
    let report = verify_sweep(fam, &bounds, tol).map_err(|e| e.to_string())?;
    Ok(Outcome::verified(render_report(g, &report), report.all_passed()))
}
