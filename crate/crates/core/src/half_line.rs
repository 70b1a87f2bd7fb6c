//! Closed forms for oscillatory integrals over `(0, ∞)`:
//!
//! ```text
//! C_n(p,b) = ∫₀^∞ x^{-p} cos^{2n+1}(x+b) dx
//!          = Γ(1-p)/4^n Σ_{k=0}^{n} C(2n+1,n-k) sin(πp/2 - (2k+1)b) / (2k+1)^{1-p}
//! S_n(p,b) = ∫₀^∞ x^{-p} sin^{2n+1}(x+b) dx
//!          = Γ(1-p)/4^n Σ_{k=0}^{n} (-1)^k C(2n+1,n-k) cos(πp/2 - (2k+1)b) / (2k+1)^{1-p}
//! ```
//!
//! together with the forms that follow by substitution or by differentiating
//! in `p`.

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::gamma::gamma_rational;
use crate::precision::{ComplexFloat, PrecisionFloat};
use crate::rational::{binomial, Rational};
use crate::report::{Case, VerificationReport};

pub use crate::quadrature::Trig as TrigKind;

/// Distance from 0 and 1 inside which `p` is rejected.
const P_GUARD: (i64, i64) = (1, 1_000_000);

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Term {
    #[serde(serialize_with = "as_fraction")]
    pub weight: Rational,
    pub freq: u64,
    #[serde(serialize_with = "as_fraction")]
    pub exp: Rational,
    pub phase: TrigKind,
    pub shift: f64,
}

/// `Γ(gamma_arg) · scale · Σ weight · phase(shift) · freq^{exp}`
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosedFormSum {
    #[serde(serialize_with = "as_fraction")]
    pub gamma_arg: Rational,
    #[serde(serialize_with = "as_fraction")]
    pub scale: Rational,
    pub terms: Vec<Term>,
}

fn as_fraction<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_fraction_string())
}

impl ClosedFormSum {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("closed form serializes")
    }

    pub fn render_plain(&self) -> String {
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let phase = match t.phase {
                    TrigKind::Cos => "cos",
                    TrigKind::Sin => "sin",
                };
                format!("({})·{}({:.12})·{}^({})", t.weight, phase, t.shift, t.freq, t.exp)
            })
            .collect();
        format!("Γ({})·({})·[{}]", self.gamma_arg, self.scale, terms.join(" + "))
    }

    pub fn render_latex(&self) -> String {
        fn frac(r: &Rational) -> String {
            if r.is_integer() {
                r.to_string()
            } else {
                let sign = if r.is_negative() { "-" } else { "" };
                format!("{sign}\\frac{{{}}}{{{}}}", r.numer().magnitude(), r.denom())
            }
        }
        let mut body = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            let phase = match t.phase {
                TrigKind::Cos => "\\cos",
                TrigKind::Sin => "\\sin",
            };
            let w = frac(&t.weight);
            let sep = if i == 0 || w.starts_with('-') { "" } else { " + " };
            body.push_str(&format!("{sep}{w}\\,{phase}({:.12})\\,{}^{{{}}}", t.shift, t.freq, frac(&t.exp)));
        }
        format!("\\Gamma\\left({}\\right) {} \\left[{}\\right]", frac(&self.gamma_arg), frac(&self.scale), body)
    }
}

#[derive(Clone, Debug)]
pub struct HalfLineValue {
    pub form: ClosedFormSum,
    pub value: PrecisionFloat,
}

fn check_open_unit(name: &'static str, p: &Rational) -> Result<()> {
    let eps = Rational::new(P_GUARD.0, P_GUARD.1);
    if p <= &eps || p >= &(Rational::one() - &eps) {
        return Err(domain(name, p, "(0, 1), at least 1e-6 away from both ends"));
    }
    Ok(())
}

fn pf(n: i64, digits: u32) -> PrecisionFloat {
    PrecisionFloat::from_i64(n, digits)
}

fn phase_fn(kind: TrigKind, x: &PrecisionFloat) -> PrecisionFloat {
    match kind {
        TrigKind::Cos => x.cos(),
        TrigKind::Sin => x.sin(),
    }
}

/// `C_n(p,b)` (cos kind) or `S_n(p,b)` (sin kind).
pub fn halfline_power(kind: TrigKind, n: u32, p: &Rational, b: f64, digits: u32) -> Result<HalfLineValue> {
    check_open_unit("p", p)?;
    let bw = PrecisionFloat::from_f64(b, digits + 10);
    halfline_power_at(kind, n, p, &bw, digits)
}

/// Same, with the shift carried at full precision.
pub fn halfline_power_at(
    kind: TrigKind,
    n: u32,
    p: &Rational,
    b: &PrecisionFloat,
    digits: u32,
) -> Result<HalfLineValue> {
    check_open_unit("p", p)?;
    let work = digits + 10;
    let b = b.with_digits(work);
    let gamma_arg = Rational::one() - p;
    let exp = p - &Rational::one();
    let scale = Rational::pow2(-2 * n as i64);
    let half_pi_p = PrecisionFloat::pi(work) * PrecisionFloat::from_rational(&(p / &Rational::from(2)), work);
    let (phase, alternate) = match kind {
        TrigKind::Cos => (TrigKind::Sin, false),
        TrigKind::Sin => (TrigKind::Cos, true),
    };
    let mut terms = Vec::with_capacity(n as usize + 1);
    let mut sum = PrecisionFloat::zero(work);
    for k in 0..=n as u64 {
        let freq = 2 * k + 1;
        let mut weight = Rational::from_integer(binomial(2 * n as u64 + 1, n as i64 - k as i64));
        if alternate && k % 2 == 1 {
            weight = -weight;
        }
        let shift = &half_pi_p - &(pf(freq as i64, work) * &b);
        let t = PrecisionFloat::from_rational(&weight, work)
            * phase_fn(phase, &shift)
            * pf(freq as i64, work).pow_rational(&exp);
        sum = sum + t;
        terms.push(Term {
            weight,
            freq,
            exp: exp.clone(),
            phase,
            shift: shift.to_f64(),
        });
    }
    let value = gamma_rational(&gamma_arg, work)? * PrecisionFloat::from_rational(&scale, work) * sum;
    Ok(HalfLineValue {
        form: ClosedFormSum { gamma_arg, scale, terms },
        value: value.with_digits(digits),
    })
}

/// `∫₀^∞ cos^{2n+1}(x^p) dx` or the sine analogue, for `p > 1`:
/// `4^{-n} Γ((p+1)/p) cos(π/2p) Σ C(2n+1,n-k)/(2k+1)^{1/p}`, and with
/// `(-1)^k` and `sin(π/2p)` for the sine.
pub fn power_arg(kind: TrigKind, n: u32, p: &Rational, digits: u32) -> Result<PrecisionFloat> {
    if p <= &Rational::one() {
        return Err(domain("p", p, "p > 1"));
    }
    let work = digits + 10;
    let inv = p.recip();
    let angle = PrecisionFloat::pi(work) * PrecisionFloat::from_rational(&(&inv / &Rational::from(2)), work);
    let trig = match kind {
        TrigKind::Cos => angle.cos(),
        TrigKind::Sin => angle.sin(),
    };
    let neg_inv = -inv.clone();
    let mut sum = PrecisionFloat::zero(work);
    for k in 0..=n as u64 {
        let mut w = Rational::from_integer(binomial(2 * n as u64 + 1, n as i64 - k as i64));
        if kind == TrigKind::Sin && k % 2 == 1 {
            w = -w;
        }
        sum = sum + PrecisionFloat::from_rational(&w, work) * pf(2 * k as i64 + 1, work).pow_rational(&neg_inv);
    }
    let g = gamma_rational(&(Rational::one() + &inv), work)?;
    let value = g * trig * PrecisionFloat::from_rational(&Rational::pow2(-2 * n as i64), work) * sum;
    Ok(value.with_digits(digits))
}

#[derive(Clone, Debug)]
pub struct Gr8221 {
    pub form: ClosedFormSum,
    pub value: PrecisionFloat,
    /// Term-by-term agreement with `halfline_power(cos, n, 1/2, 0)`.
    pub matches_halfline: bool,
}

/// `∫₀^∞ cos^{2n+1}x / √x dx = 4^{-n} √(π/2) Σ C(2n+1,n+k+1)/√(2k+1)`,
/// evaluated as written.
pub fn gr_822_1(n: u32, digits: u32) -> Result<Gr8221> {
    let work = digits + 10;
    let half = Rational::new(1, 2);
    let shift_quarter = PrecisionFloat::pi(work) / pf(4, work);
    let mut terms = Vec::with_capacity(n as usize + 1);
    let mut sum = PrecisionFloat::zero(work);
    for k in 0..=n as u64 {
        let weight = Rational::from_integer(binomial(2 * n as u64 + 1, (n as u64 + k + 1) as i64));
        sum = sum + PrecisionFloat::from_rational(&weight, work) / pf(2 * k as i64 + 1, work).sqrt();
        terms.push(Term {
            weight,
            freq: 2 * k + 1,
            exp: -half.clone(),
            phase: TrigKind::Sin,
            shift: shift_quarter.to_f64(),
        });
    }
    let root = (PrecisionFloat::pi(work) / pf(2, work)).sqrt();
    let value = PrecisionFloat::from_rational(&Rational::pow2(-2 * n as i64), work) * root * sum;
    let form = ClosedFormSum {
        gamma_arg: half.clone(),
        scale: Rational::pow2(-2 * n as i64),
        terms,
    };
    let reference = halfline_power(TrigKind::Cos, n, &half, 0.0, digits)?;
    let matches_halfline = reference.form == form;
    Ok(Gr8221 {
        form,
        value: value.with_digits(digits),
        matches_halfline,
    })
}

/// `∫₀^∞ x^{-p} cos(ax+b) dx = -a^{p-1} Γ(1-p) sin(b - pπ/2)`,
/// `∫₀^∞ x^{-p} sin(ax+b) dx =  a^{p-1} Γ(1-p) cos(b - pπ/2)`.
pub fn linear_phase(kind: TrigKind, a: f64, b: f64, p: &Rational, digits: u32) -> Result<PrecisionFloat> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(domain("a", a, "a > 0"));
    }
    check_open_unit("p", p)?;
    let work = digits + 10;
    let a = PrecisionFloat::from_f64(a, work);
    let b = PrecisionFloat::from_f64(b, work);
    let angle = b - PrecisionFloat::pi(work) * PrecisionFloat::from_rational(&(p / &Rational::from(2)), work);
    let factor = a.pow_rational(&(p - &Rational::one())) * gamma_rational(&(Rational::one() - p), work)?;
    let value = match kind {
        TrigKind::Cos => -(factor * angle.sin()),
        TrigKind::Sin => factor * angle.cos(),
    };
    Ok(value.with_digits(digits))
}

fn cos_odd_weights(n: u32) -> impl Iterator<Item = (u64, Rational)> {
    (0..=n as u64).map(move |k| (2 * k + 1, Rational::from_integer(binomial(2 * n as u64 + 1, n as i64 - k as i64))))
}

/// `∫₀^∞ log x · cos^{2n+1}(x²) dx`
/// `= -(1/4) 4^{-n} √(π/2) [ (ξ + π/2) Σ C(2n+1,n-k)/√(2k+1) + Σ C(2n+1,n-k) log(2k+1)/√(2k+1) ]`
/// with `ξ = γ + 2 log 2`.
pub fn log_weighted(n: u32, digits: u32) -> PrecisionFloat {
    let work = digits + 10;
    let mut plain = PrecisionFloat::zero(work);
    let mut logged = PrecisionFloat::zero(work);
    for (f, w) in cos_odd_weights(n) {
        let fw = pf(f as i64, work);
        let t = PrecisionFloat::from_rational(&w, work) / fw.sqrt();
        logged = logged + &t * fw.ln();
        plain = plain + t;
    }
    let pi = PrecisionFloat::pi(work);
    let xi_plus = PrecisionFloat::xi(work) + &pi / pf(2, work);
    let pre = (pi / pf(2, work)).sqrt() * PrecisionFloat::from_rational(&Rational::pow2(-2 * n as i64 - 2), work);
    (-(pre * (xi_plus * plain + logged))).with_digits(digits)
}

/// `∫₀^∞∫₀^∞ cos^{2n+1}(x+y) / (x^p y^q) dx dy`
/// `= -Γ(1-p)Γ(1-q) cos(π(p+q)/2) 4^{-n} Σ C(2n+1,n-k) (2k+1)^{p+q-2}`.
pub fn double_log(p: &Rational, q: &Rational, n: u32, digits: u32) -> Result<PrecisionFloat> {
    check_open_unit("p", p)?;
    check_open_unit("q", q)?;
    let work = digits + 10;
    let s = p + q;
    let angle = PrecisionFloat::pi(work) * PrecisionFloat::from_rational(&(&s / &Rational::from(2)), work);
    let e = &s - &Rational::from(2);
    let mut sum = PrecisionFloat::zero(work);
    for (f, w) in cos_odd_weights(n) {
        sum = sum + PrecisionFloat::from_rational(&w, work) * pf(f as i64, work).pow_rational(&e);
    }
    let g = gamma_rational(&(Rational::one() - p), work)? * gamma_rational(&(Rational::one() - q), work)?;
    let value = -(g * angle.cos() * PrecisionFloat::from_rational(&Rational::pow2(-2 * n as i64), work) * sum);
    Ok(value.with_digits(digits))
}

/// `∫₀^∞∫₀^∞ log x log y cos(x+y) / √(xy) dx dy = (γ + 2 log 2) π²`,
/// the mixed `p`,`q` derivative of [`double_log`] at `p = q = 1/2`, `n = 0`.
pub fn double_log_special(digits: u32) -> PrecisionFloat {
    let pi = PrecisionFloat::pi(digits + 5);
    (PrecisionFloat::xi(digits + 5) * &pi * &pi).with_digits(digits)
}

#[derive(Clone, Debug)]
pub struct MultidimResult {
    pub n: u32,
    pub delta: u64,
    pub psi: ComplexFloat,
    pub value: PrecisionFloat,
}

/// `∫_{ℝ₊ⁿ} log x₁ ⋯ log x_n cos(x₁² + ⋯ + x_n²) dx`
/// `= (-1)^{n(n+1)/2} π^{n/2}/4^n · (Re ψ_n for even n, Im ψ_n for odd n)`,
/// `ψ_n = (ξ + iπ/2)^n e^{iπn/4}`.
pub fn multidim_log(n: u32, digits: u32) -> Result<MultidimResult> {
    if n == 0 {
        return Err(domain("n", n, "n ≥ 1"));
    }
    let work = digits + 10;
    let pi = PrecisionFloat::pi(work);
    let base = ComplexFloat::new(PrecisionFloat::xi(work), &pi / pf(2, work));
    let rot = ComplexFloat::cis(&(&pi * pf(n as i64, work) / pf(4, work)));
    let psi = base.powu(n).mul(&rot);
    let delta = n as u64 * (n as u64 + 1) / 2;
    let part = if n.is_multiple_of(2) { psi.re.clone() } else { psi.im.clone() };
    let mag = pi.pow_rational(&Rational::new(n as i64, 2)) * PrecisionFloat::from_rational(&Rational::pow2(-2 * n as i64), work);
    let signed = if delta % 2 == 1 { -(mag * part) } else { mag * part };
    Ok(MultidimResult {
        n,
        delta,
        psi,
        value: signed.with_digits(digits),
    })
}

/// `FresnelC(x) = ∫₀^x cos(πt²/2) dt` from its Taylor series, for `0 ≤ x ≤ 4`.
pub fn fresnel_c(x: &PrecisionFloat) -> Result<PrecisionFloat> {
    let digits = x.digits();
    if x.is_negative() {
        return Err(domain("x", x.to_decimal_string(17), "x ≥ 0"));
    }
    if x > &pf(4, digits) {
        return Err(Error::UnsupportedRange(format!(
            "FresnelC series is limited to 0 ≤ x ≤ 4, got {}",
            x.to_decimal_string(17)
        )));
    }
    // Terms peak near e^{πx²/2}; carry that many extra digits.
    let xf = x.to_f64();
    let extra = (std::f64::consts::PI * xf * xf / 2.0 / std::f64::consts::LN_10).ceil() as u32;
    let work = digits + extra + 10;
    let x = x.with_digits(work);
    let a = PrecisionFloat::pi(work) / pf(2, work);
    let a2x4 = &a * &a * x.powi(4);
    let eps = PrecisionFloat::parse(&format!("1e-{}", work), work).expect("literal");
    // u_k = (-1)^k a^{2k} x^{4k+1} / (2k)!
    let mut u = x.clone();
    let mut sum = PrecisionFloat::zero(work);
    for k in 0u64.. {
        let term = &u / pf(4 * k as i64 + 1, work);
        sum = sum + &term;
        if k > 2 && term.abs() < eps {
            break;
        }
        u = -(u * &a2x4) / pf(((2 * k + 1) * (2 * k + 2)) as i64, work);
    }
    Ok(sum.with_digits(digits))
}

/// `√(2π) · FresnelC(1)`, which equals `∫₀^{π/2} x^{-1/2} cos x dx`.
pub fn fresnel_identity_value(digits: u32) -> PrecisionFloat {
    let work = digits + 5;
    let c1 = fresnel_c(&PrecisionFloat::one(work)).expect("1 is in range");
    ((PrecisionFloat::pi(work) * pf(2, work)).sqrt() * c1).with_digits(digits)
}

fn sum99_lhs(n: u64, k: u64) -> Rational {
    Rational::sign_power(k)
        * Rational::pow2(-2 * n as i64)
        * Rational::from_integer(binomial(2 * n + 1, n as i64 - k as i64) * (2 * k + 1))
}

fn sum99_rhs(n: u64, k: u64) -> Rational {
    let s: Rational = (k..=n)
        .map(|j| {
            Rational::sign_power(j)
                * Rational::pow2(-2 * j as i64)
                * Rational::from_integer(binomial(n, j as i64) * binomial(2 * j + 1, j as i64 - k as i64))
        })
        .sum();
    Rational::from((2 * n + 1) as i64) * s
}

/// Exact check, for `0 ≤ k ≤ n ≤ n_max`, of
/// `(-1)^k 4^{-n} C(2n+1,n-k)(2k+1) = (2n+1) Σ_{j=k}^{n} (-1)^j 4^{-j} C(n,j) C(2j+1,j-k)`,
/// and that both sides obey `2(n+k+2)(n+1-k) u(n+1,k) = (n+1)(2n+3) u(n,k)`
/// with `u(0,0) = 1`.
pub fn check_sum99(n_max: u64) -> VerificationReport {
    let mut report = VerificationReport::new("binomial identity for the odd-power expansion");
    let lhs: Vec<Vec<Rational>> = (0..=n_max + 1).map(|n| (0..=n).map(|k| sum99_lhs(n, k)).collect()).collect();
    let rhs: Vec<Vec<Rational>> = (0..=n_max + 1).map(|n| (0..=n).map(|k| sum99_rhs(n, k)).collect()).collect();
    report.push(Case::exact("u(0,0) lhs", &lhs[0][0], &Rational::one()));
    report.push(Case::exact("u(0,0) rhs", &rhs[0][0], &Rational::one()));
    for n in 0..=n_max {
        for k in 0..=n {
            let (ni, ki) = (n as usize, k as usize);
            report.push(Case::exact(format!("sum99 n={n} k={k}"), &lhs[ni][ki], &rhs[ni][ki]));
            if n < n_max {
                let up = Rational::from((2 * (n + k + 2) * (n + 1 - k)) as i64);
                let down = Rational::from(((n + 1) * (2 * n + 3)) as i64);
                for (side, u) in [("lhs", &lhs), ("rhs", &rhs)] {
                    let l = &up * &u[ni + 1][ki];
                    let r = &down * &u[ni][ki];
                    report.push(Case::exact(format!("rec99 {side} n={n} k={k}"), &l, &r));
                }
            }
        }
    }
    report
}

/// Central-difference check of
/// `∂g_n/∂b − (−1)^n (2n+1) f_n = (2n+1) Σ_{j<n} (−1)^j C(n,j) f_j` and
/// `∂f_n/∂b + (−1)^n (2n+1) g_n = −(2n+1) Σ_{j<n} (−1)^j C(n,j) g_j`,
/// where `f = C(p,b)` and `g = S(p,b)`.
pub fn check_ode_system(n: u32, p: &Rational, b: f64, h: f64, tol: f64) -> Result<VerificationReport> {
    let digits = 30;
    let work = digits + 10;
    let bw = PrecisionFloat::from_f64(b, work);
    let hw = PrecisionFloat::from_f64(h, work);
    let eval = |kind, m, at: &PrecisionFloat| halfline_power_at(kind, m, p, at, digits).map(|v| v.value.with_digits(work));
    let deriv = |kind, m| -> Result<PrecisionFloat> {
        let up = eval(kind, m, &(&bw + &hw))?;
        let down = eval(kind, m, &(&bw - &hw))?;
        Ok((up - down) / (&hw * pf(2, work)))
    };
    let two_n1 = pf(2 * n as i64 + 1, work);
    let sign = if n.is_multiple_of(2) { pf(1, work) } else { pf(-1, work) };
    let mut sum_f = PrecisionFloat::zero(work);
    let mut sum_g = PrecisionFloat::zero(work);
    for j in 0..n {
        let w = Rational::sign_power(j as u64) * Rational::from_integer(binomial(n as u64, j as i64));
        let w = PrecisionFloat::from_rational(&w, work);
        sum_f = sum_f + &w * eval(TrigKind::Cos, j, &bw)?;
        sum_g = sum_g + &w * eval(TrigKind::Sin, j, &bw)?;
    }
    let f_n = eval(TrigKind::Cos, n, &bw)?;
    let g_n = eval(TrigKind::Sin, n, &bw)?;
    let lhs1 = deriv(TrigKind::Sin, n)? - &sign * &two_n1 * &f_n;
    let rhs1 = &two_n1 * &sum_f;
    let lhs2 = deriv(TrigKind::Cos, n)? + &sign * &two_n1 * &g_n;
    let rhs2 = -(&two_n1 * &sum_g);
    let mut report = VerificationReport::new(format!("b-derivative system, n={n}, p={p}, b={b}"));
    report.push(Case::numeric(format!("dg/db n={n} p={p} b={b}"), lhs1.to_f64(), rhs1.to_f64(), tol));
    report.push(Case::numeric(format!("df/db n={n} p={p} b={b}"), lhs2.to_f64(), rhs2.to_f64(), tol));
    Ok(report)
}
