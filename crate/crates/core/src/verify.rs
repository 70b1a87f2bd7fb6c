//! Sweeps that pit every closed form against an independent route.

use std::f64::consts::PI;

use crate::closed_form::{even_branch, odd_branch};
use crate::error::Result;
use crate::half_line::{
    double_log, double_log_special, fresnel_identity_value, gr_822_1, halfline_power, linear_phase, log_weighted,
    multidim_log, power_arg, TrigKind,
};
use crate::quadrature::{integrate_finite, integrate_halfline_osc, integrate_singular_power, OscillatorySpec};
use crate::rational::Rational;
use crate::recurrence::CompleteIntegrals;
use crate::report::{Case, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepFamily {
    Complete,
    Halfline,
    Examples,
}

impl std::str::FromStr for SweepFamily {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "complete" => Ok(SweepFamily::Complete),
            "halfline" => Ok(SweepFamily::Halfline),
            "examples" => Ok(SweepFamily::Examples),
            other => Err(format!("unknown family `{other}` (complete, halfline, examples)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepBounds {
    pub n_max: u32,
    pub p_max: u32,
    pub ps: Vec<Rational>,
    pub bs: Vec<f64>,
}

impl SweepBounds {
    pub fn default_for(family: SweepFamily) -> Self {
        match family {
            SweepFamily::Complete => SweepBounds {
                n_max: 8,
                p_max: 8,
                ps: Vec::new(),
                bs: Vec::new(),
            },
            SweepFamily::Halfline | SweepFamily::Examples => SweepBounds {
                n_max: 3,
                p_max: 0,
                ps: vec![Rational::new(1, 4), Rational::new(1, 2), Rational::new(3, 4)],
                bs: vec![0.0, 0.5],
            },
        }
    }
}

pub fn default_tol(family: SweepFamily) -> f64 {
    match family {
        SweepFamily::Complete => 1e-10,
        SweepFamily::Halfline => 1e-6,
        SweepFamily::Examples => 1e-5,
    }
}

/// Working precision for the exact side of the comparisons.
const DIGITS: u32 = 30;
/// Internal consistency between two closed forms.
const CONSISTENCY_TOL: f64 = 1e-12;

pub fn verify_sweep(family: SweepFamily, bounds: &SweepBounds, tol: f64) -> Result<VerificationReport> {
    match family {
        SweepFamily::Complete => Ok(sweep_complete(bounds, tol)),
        SweepFamily::Halfline => sweep_halfline(bounds, tol),
        SweepFamily::Examples => sweep_examples(tol),
    }
}

/// `∫₀^{π/2} xᵖ trigⁿx dx` by adaptive quadrature.
pub fn complete_oracle(kind: TrigKind, n: u32, p: u32) -> f64 {
    let r = integrate_finite(
        |x| {
            let t = match kind {
                TrigKind::Cos => x.cos(),
                TrigKind::Sin => x.sin(),
            };
            x.powi(p as i32) * t.powi(n as i32)
        },
        0.0,
        PI / 2.0,
        1e-13,
    );
    r.value
}

fn sweep_complete(bounds: &SweepBounds, tol: f64) -> VerificationReport {
    let mut report = VerificationReport::new("complete integrals on [0, π/2]");
    let mut ev = CompleteIntegrals::new();
    for n in 0..=bounds.n_max {
        for p in 0..=bounds.p_max {
            let c = ev.cos(n, p);
            let branch = if n % 2 == 0 { even_branch(n / 2, p) } else { odd_branch(n / 2, p) };
            report.push(Case::exact_poly(format!("branch c({n},{p})"), &branch.assembled, &c));
            let cv = c.eval(DIGITS).to_f64();
            report.push(Case::numeric(format!("quad c({n},{p})"), cv, complete_oracle(TrigKind::Cos, n, p), tol).with_exact(c.render_plain()));
            let s = ev.sin(n, p);
            let sv = s.eval(DIGITS).to_f64();
            report.push(Case::numeric(format!("quad s({n},{p})"), sv, complete_oracle(TrigKind::Sin, n, p), tol).with_exact(s.render_plain()));
        }
    }
    report
}

fn kind_name(kind: TrigKind) -> &'static str {
    match kind {
        TrigKind::Cos => "cos",
        TrigKind::Sin => "sin",
    }
}

fn sweep_halfline(bounds: &SweepBounds, tol: f64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("half-line closed forms against the oscillatory oracle");
    for kind in [TrigKind::Cos, TrigKind::Sin] {
        for n in 0..=bounds.n_max {
            for p in &bounds.ps {
                for &b in &bounds.bs {
                    let exact = halfline_power(kind, n, p, b, DIGITS)?.value.to_f64();
                    let oracle = integrate_halfline_osc(&OscillatorySpec::new(kind, n, p.to_f64(), b).with_tol(tol))?;
                    report.push(Case::numeric(
                        format!("{} n={n} p={p} b={b}", kind_name(kind)),
                        exact,
                        oracle.value,
                        tol,
                    ));
                }
            }
        }
    }
    Ok(report)
}

/// `∫₀^∞ log x cos^{2n+1}(x²) dx = (1/4) ∫₀^∞ t^{-1/2} log t cos^{2n+1} t dt`.
pub fn log_weighted_oracle(n: u32, tol: f64) -> Result<f64> {
    let spec = OscillatorySpec::new(TrigKind::Cos, n, 0.5, 0.0).with_log_weight().with_tol(tol);
    Ok(0.25 * integrate_halfline_osc(&spec)?.value)
}

/// `∫₀^{π/2} x^{-1/2} cos x dx` with the singularity removed by substitution.
pub fn fresnel_identity_oracle() -> f64 {
    integrate_singular_power(f64::cos, 0.5, PI / 2.0, 1e-13).value
}

fn sweep_examples(tol: f64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("worked examples");
    let half = Rational::new(1, 2);

    let m2 = multidim_log(2, DIGITS)?.value.to_f64();
    let special = double_log_special(DIGITS).to_f64();
    report.push(Case::numeric("multidim n=2 vs ξπ²/16", m2, special / 16.0, CONSISTENCY_TOL));

    let m1 = multidim_log(1, DIGITS)?.value.to_f64();
    let lw0 = log_weighted(0, DIGITS).to_f64();
    report.push(Case::numeric("multidim n=1 vs log weighted n=0", m1, lw0, CONSISTENCY_TOL));

    for n in 0..=2 {
        let lw = log_weighted(n, DIGITS).to_f64();
        report.push(Case::numeric(format!("log weighted n={n}"), lw, log_weighted_oracle(n, tol)?, tol));
    }

    let fres = fresnel_identity_value(DIGITS).to_f64();
    report.push(Case::numeric("√(2π)·FresnelC(1) vs singular quadrature", fres, fresnel_identity_oracle(), 1e-9));

    // mixed p,q difference quotient of the double integral at p = q = 1/2
    let h = Rational::new(1, 10i64.pow(12));
    let at = |dp: &Rational, dq: &Rational| double_log(&(&half + dp), &(&half + dq), 0, 60);
    let mh = -h.clone();
    let mixed = (at(&h, &h)? - at(&h, &mh)? - at(&mh, &h)? + at(&mh, &mh)?).to_f64() / (4.0 * h.to_f64() * h.to_f64());
    report.push(Case::numeric("double log special vs mixed difference", special, mixed, 1e-8));

    for kind in [TrigKind::Cos, TrigKind::Sin] {
        for n in 0..=2 {
            for p in [2i64, 3] {
                let pr = Rational::from(p);
                let v = power_arg(kind, n, &pr, DIGITS)?.to_f64();
                // t = x^p: ∫ trig(x^p) dx = (1/p) ∫ t^{1/p - 1} trig(t) dt
                let spec = OscillatorySpec::new(kind, n, 1.0 - 1.0 / p as f64, 0.0).with_tol(tol);
                let oracle = integrate_halfline_osc(&spec)?.value / p as f64;
                report.push(Case::numeric(format!("power arg {} n={n} p={p}", kind_name(kind)), v, oracle, tol));
            }
        }
        for (a, b) in [(1.0, 0.0), (3.0, 0.0), (2.0, 0.7)] {
            let v = linear_phase(kind, a, b, &half, DIGITS)?.to_f64();
            let spec = OscillatorySpec::new(kind, 0, 0.5, b).with_frequency(a).with_tol(tol);
            let oracle = integrate_halfline_osc(&spec)?.value;
            report.push(Case::numeric(format!("linear phase {} a={a} b={b}", kind_name(kind)), v, oracle, tol));
        }
    }

    for n in 0..=3 {
        let g = gr_822_1(n, DIGITS)?;
        let mut case = Case::numeric(
            format!("cos^(2n+1)/√x series n={n}"),
            g.value.to_f64(),
            integrate_halfline_osc(&OscillatorySpec::new(TrigKind::Cos, n, 0.5, 0.0).with_tol(tol))?.value,
            tol,
        );
        case.pass &= g.matches_halfline;
        report.push(case);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_complete_sweep_passes() {
        let b = SweepBounds {
            n_max: 3,
            p_max: 3,
            ..SweepBounds::default_for(SweepFamily::Complete)
        };
        let r = verify_sweep(SweepFamily::Complete, &b, 1e-10).unwrap();
        assert!(r.all_passed(), "{r}");
        assert_eq!(r.summary.total, 16 * 3);
    }

    #[test]
    fn impossible_tolerance_fails() {
        let b = SweepBounds {
            n_max: 1,
            p_max: 1,
            ..SweepBounds::default_for(SweepFamily::Complete)
        };
        let r = verify_sweep(SweepFamily::Complete, &b, 0.0).unwrap();
        assert!(!r.all_passed());
    }

    #[test]
    fn family_names() {
        assert_eq!("halfline".parse::<SweepFamily>(), Ok(SweepFamily::Halfline));
        assert!("other".parse::<SweepFamily>().is_err());
    }

    #[test]
    fn examples_sweep_passes() {
        let r = verify_sweep(SweepFamily::Examples, &SweepBounds::default_for(SweepFamily::Examples), 1e-5).unwrap();
        assert!(r.all_passed(), "{r}");
    }
}
