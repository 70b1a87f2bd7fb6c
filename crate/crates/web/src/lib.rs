//! Browser bindings. Each export returns a JSON string that `www/index.html`
//! parses; the work is done by plain functions so they can be tested natively.

use serde_json::{json, Value};
use trigint_core::euler_sums::{central_tail_value, SumKind};
use trigint_core::half_line::{halfline_power, TrigKind};
use trigint_core::quadrature::{integrate_halfline_osc, OscillatorySpec};
use trigint_core::recurrence::CompleteIntegrals;
use trigint_core::verify::complete_oracle;
use trigint_core::{Rational, Result};
use wasm_bindgen::prelude::*;

const MAX_N: u32 = 60;
const MAX_SAMPLES: u32 = 400;
const MAX_TAIL: usize = 2_000_000;

fn parse_kind(kind: &str) -> std::result::Result<TrigKind, String> {
    match kind {
        "cos" => Ok(TrigKind::Cos),
        "sin" => Ok(TrigKind::Sin),
        other => Err(format!("kind must be cos or sin, got `{other}`")),
    }
}

/// Exact `∫₀^{π/2} xᵖ cosⁿx dx` (or sin) with a quadrature cross-check.
pub fn complete(kind: &str, n: u32, p: u32, digits: u32) -> std::result::Result<Value, String> {
    let kind = parse_kind(kind)?;
    if n > MAX_N || p > MAX_N {
        return Err(format!("n and p are limited to {MAX_N} here"));
    }
    let mut ev = CompleteIntegrals::new();
    let exact = match kind {
        TrigKind::Cos => ev.cos(n, p),
        TrigKind::Sin => ev.sin(n, p),
    };
    let value = exact.eval(digits.clamp(1, 200));
    let oracle = complete_oracle(kind, n, p);
    Ok(json!({
        "plain": exact.render_plain(),
        "latex": exact.render_latex(),
        "float": value.to_decimal_string(digits.clamp(1, 200)),
        "oracle": oracle,
        "abs_err": (value.to_f64() - oracle).abs(),
    }))
}

/// Closed-form `∫₀^∞ x^{-p} cosⁿ(x+b) dx` sampled on `b ∈ [0, b_max]`, plus
/// a quadrature value at `b = 0`.
pub fn halfline_samples(kind: &str, n: u32, p: &str, b_max: f64, samples: u32) -> std::result::Result<Value, String> {
    let kind = parse_kind(kind)?;
    let p: Rational = p.parse().map_err(|e| format!("{e}"))?;
    if n > MAX_N {
        return Err(format!("n is limited to {MAX_N} here"));
    }
    let samples = samples.clamp(2, MAX_SAMPLES);
    let run = || -> Result<Value> {
        let first = halfline_power(kind, n, &p, 0.0, 20)?;
        let mut points = Vec::with_capacity(samples as usize);
        for i in 0..samples {
            let b = b_max * f64::from(i) / f64::from(samples - 1);
            points.push([b, halfline_power(kind, n, &p, b, 17)?.value.to_f64()]);
        }
        let oracle = integrate_halfline_osc(&OscillatorySpec::new(kind, n, p.to_f64(), 0.0))?;
        Ok(json!({
            "form": first.form.render_plain(),
            "latex": first.form.render_latex(),
            "at_zero": first.value.to_decimal_string(20),
            "oracle_at_zero": oracle.value,
            "points": points,
        }))
    };
    run().map_err(|e| e.to_string())
}

/// Gaps between the central-binomial partial sums and their limits at
/// logarithmically spaced `m`.
pub fn tail_gaps(m_max: usize, samples: u32) -> std::result::Result<Value, String> {
    if !(1..=MAX_TAIL).contains(&m_max) {
        return Err(format!("m must lie in 1..={MAX_TAIL}"));
    }
    let samples = samples.clamp(2, 60);
    let mut ms: Vec<usize> = (0..samples)
        .map(|i| (m_max as f64).powf(f64::from(i) / f64::from(samples - 1)).round() as usize)
        .collect();
    ms.dedup();
    let pi = std::f64::consts::PI;
    let mut rows = Vec::with_capacity(ms.len());
    for m in ms {
        let even = central_tail_value(SumKind::Even, m).map_err(|e| e.to_string())?;
        let odd = central_tail_value(SumKind::Odd, m).map_err(|e| e.to_string())?;
        rows.push(json!({
            "m": m,
            "even_gap": pi * pi / 2.0 - even,
            "odd_gap": pi / 2.0 - odd,
            "even_model": 2.0 * pi.sqrt() / (m as f64).sqrt(),
        }));
    }
    Ok(Value::Array(rows))
}

fn to_js(r: std::result::Result<Value, String>) -> std::result::Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = completeIntegral)]
pub fn complete_integral_js(kind: &str, n: u32, p: u32, digits: u32) -> std::result::Result<String, JsError> {
    to_js(complete(kind, n, p, digits))
}

#[wasm_bindgen(js_name = halflineCurve)]
pub fn halfline_curve_js(kind: &str, n: u32, p: &str, b_max: f64, samples: u32) -> std::result::Result<String, JsError> {
    to_js(halfline_samples(kind, n, p, b_max, samples))
}

#[wasm_bindgen(js_name = tailGaps)]
pub fn tail_gaps_js(m_max: usize, samples: u32) -> std::result::Result<String, JsError> {
    to_js(tail_gaps(m_max, samples))
}
