//! Numerical ground truth in double precision.
//!
//! Finite intervals use globally adaptive 7-point Gauss / 15-point Kronrod
//! panels. Half-line integrals of `x^{-p} (log x)^ℓ trig^{m}(a x + b)` are cut at
//! the zeros of the trigonometric factor; the first piece is straightened by
//! `x = u^{1/(1-p)}`, and the alternating arch sums are extrapolated by
//! repeated pairwise averaging.

use std::collections::BinaryHeap;
use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

/// Gauss weights for the nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

pub const DEFAULT_FINITE_TOL: f64 = 1e-11;
pub const DEFAULT_HALFLINE_TOL: f64 = 1e-6;
pub const DEFAULT_MAX_ARCHES: usize = 60;
const MAX_SUBDIVISIONS: usize = 4000;
/// Below this, double-precision panels cannot certify anything.
const MIN_TOL: f64 = 1e-13;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub subdivisions: usize,
    pub converged: bool,
    /// Partial sums over arches, for half-line results.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub partial_sums: Vec<f64>,
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn gk15(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let s = f(center - dx) + f(center + dx);
        kronrod += w * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    let value = kronrod * half;
    let diff = ((kronrod - gauss) * half).abs();
    // Floor the estimate at a few ulps of the panel value.
    let error = diff.max(50.0 * f64::EPSILON * value.abs());
    Panel { a, b, value, error }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Adaptive integration of `f` over `[a, b]` to absolute tolerance `tol`.
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate drops below `max(tol, 1e-13)`. `converged` compares against `tol`
/// itself. Running out of subdivisions yields `converged = false` with the
/// best available value.
pub fn integrate_finite(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, tol: f64) -> QuadratureResult {
    assert!(a < b, "integrate_finite needs a < b");
    let target = tol.max(MIN_TOL);
    let first = gk15(&mut f, a, b);
    let mut total_err = first.error;
    let mut panels = BinaryHeap::from([first]);
    let mut subdivisions = 0;
    while total_err > target && subdivisions < MAX_SUBDIVISIONS {
        let p = panels.pop().expect("non-empty");
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            // Interval exhausted at double precision.
            total_err -= p.error;
            panels.push(Panel { error: 0.0, ..p });
            continue;
        }
        let left = gk15(&mut f, p.a, mid);
        let right = gk15(&mut f, mid, p.b);
        total_err += left.error + right.error - p.error;
        panels.push(left);
        panels.push(right);
        subdivisions += 1;
    }
    // Re-sum in a fixed order so the result does not depend on heap layout.
    let mut all = panels.into_vec();
    all.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = all.iter().map(|p| p.value).sum();
    let error_estimate: f64 = all.iter().map(|p| p.error).sum();
    QuadratureResult {
        value,
        error_estimate,
        subdivisions,
        converged: error_estimate <= tol,
        partial_sums: Vec::new(),
    }
}

/// `∫₀^upper x^{-p} g(x) dx` for `0 ≤ p < 1`, through `x = u^{1/(1-p)}`,
/// which turns `x^{-p} dx` into `du/(1-p)`.
pub fn integrate_singular_power(mut g: impl FnMut(f64) -> f64, p: f64, upper: f64, tol: f64) -> QuadratureResult {
    assert!((0.0..1.0).contains(&p), "exponent must lie in [0, 1)");
    let e = 1.0 / (1.0 - p);
    let top = upper.powf(1.0 - p);
    let mut r = integrate_finite(|u| g(u.powf(e)), 0.0, top, tol * (1.0 - p));
    r.value *= e;
    r.error_estimate *= e;
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Trig {
    Cos,
    Sin,
}

/// `∫₀^∞ x^{-p} (log x)^{[log_weight]} trig(frequency·x + shift)^{power} dx`.
#[derive(Clone, Debug, PartialEq)]
pub struct OscillatorySpec {
    pub p: f64,
    pub kind: Trig,
    /// Odd power of the trigonometric factor.
    pub power: u32,
    pub shift: f64,
    pub frequency: f64,
    pub log_weight: bool,
    pub tol: f64,
    pub max_arches: usize,
}

impl OscillatorySpec {
    pub fn new(kind: Trig, n: u32, p: f64, shift: f64) -> Self {
        OscillatorySpec {
            p,
            kind,
            power: 2 * n + 1,
            shift,
            frequency: 1.0,
            log_weight: false,
            tol: DEFAULT_HALFLINE_TOL,
            max_arches: DEFAULT_MAX_ARCHES,
        }
    }

    pub fn with_log_weight(mut self) -> Self {
        self.log_weight = true;
        self
    }

    pub fn with_frequency(mut self, a: f64) -> Self {
        self.frequency = a;
        self
    }

    pub fn with_arches(mut self, m: usize) -> Self {
        self.max_arches = m;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    /// Trigonometric factor and log weight, without `x^{-p}`.
    fn kernel(&self, x: f64) -> f64 {
        let arg = self.frequency * x + self.shift;
        let t = match self.kind {
            Trig::Cos => arg.cos(),
            Trig::Sin => arg.sin(),
        };
        let v = t.powi(self.power as i32);
        if self.log_weight {
            v * x.ln()
        } else {
            v
        }
    }

    /// Zeros of the trig factor on `x > 0`, in increasing order.
    fn zero(&self, m: usize) -> f64 {
        let base = match self.kind {
            Trig::Cos => PI / 2.0 - self.shift,
            Trig::Sin => -self.shift,
        };
        // smallest index whose zero is positive
        let first = (-base / PI).floor() + 1.0;
        (base + (first + m as f64) * PI) / self.frequency
    }
}

/// Half-line oracle: head piece plus `max_arches` arch integrals, then
/// alternating-series acceleration of the partial sums.
pub fn integrate_halfline_osc(spec: &OscillatorySpec) -> Result<QuadratureResult> {
    if !(0.0..1.0).contains(&spec.p) {
        return Err(Error::Domain {
            name: "p",
            value: spec.p.to_string(),
            domain: "[0, 1)",
        });
    }
    if spec.power.is_multiple_of(2) || spec.frequency <= 0.0 {
        return Err(Error::Domain {
            name: "power/frequency",
            value: format!("{}/{}", spec.power, spec.frequency),
            domain: "odd power, positive frequency",
        });
    }
    let piece_tol = (spec.tol * 1e-3).max(MIN_TOL);
    let head = integrate_singular_power(|x| spec.kernel(x), spec.p, spec.zero(0), piece_tol);
    let mut subdivisions = head.subdivisions;
    let mut quad_err = head.error_estimate;
    let mut converged = head.converged;
    let mut sums = Vec::with_capacity(spec.max_arches + 1);
    let mut acc = head.value;
    sums.push(acc);
    for m in 0..spec.max_arches {
        let (lo, hi) = (spec.zero(m), spec.zero(m + 1));
        let arch = integrate_finite(|x| x.powf(-spec.p) * spec.kernel(x), lo, hi, piece_tol);
        subdivisions += arch.subdivisions;
        quad_err += arch.error_estimate;
        converged &= arch.converged;
        acc += arch.value;
        sums.push(acc);
    }
    let accel = accelerate_alternating(&sums)?;
    let error_estimate = accel.error_estimate + quad_err;
    Ok(QuadratureResult {
        value: accel.value,
        error_estimate,
        subdivisions,
        converged: converged && error_estimate <= spec.tol,
        partial_sums: sums,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Accelerated {
    pub value: f64,
    pub error_estimate: f64,
}

/// Limit of an eventually alternating sequence of partial sums by iterated
/// pairwise averaging. The error estimate is half the spread of the last two
/// entries before the final average, floored at the rounding level.
pub fn accelerate_alternating(partial_sums: &[f64]) -> Result<Accelerated> {
    if partial_sums.len() < 6 {
        return Err(Error::InsufficientData(partial_sums.len()));
    }
    let mut level = partial_sums.to_vec();
    while level.len() > 2 {
        level = level.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    let value = 0.5 * (level[0] + level[1]);
    let scale = partial_sums.iter().fold(0.0f64, |m, s| m.max(s.abs()));
    let error_estimate = (0.5 * (level[0] - level[1]).abs()).max(16.0 * f64::EPSILON * scale);
    Ok(Accelerated { value, error_estimate })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn partial_sums(term: impl Fn(usize) -> f64, n: usize) -> Vec<f64> {
        let mut acc = 0.0;
        (0..n)
            .map(|k| {
                acc += term(k);
                acc
            })
            .collect()
    }

    #[test]
    fn finite_examples() {
        let r = integrate_finite(f64::cos, 0.0, PI / 2.0, 1e-12);
        assert!(r.converged && (r.value - 1.0).abs() < 1e-12);
        let r = integrate_finite(|x| x * x.cos().powi(2), 0.0, PI / 2.0, 1e-11);
        assert!((r.value - (PI * PI / 16.0 - 0.25)).abs() < 1e-10);
        assert!((r.value - 0.366_850_275_1).abs() < 1e-10);
    }

    #[test]
    fn kronrod_rule_is_exact_on_high_degree_polynomials() {
        // the 15-point Kronrod rule integrates degree ≤ 22 exactly
        let p = |x: f64| x.powi(22) - 3.0 * x.powi(13) + 2.0;
        let exact = 2.0 / 23.0 + 4.0;
        let panel = gk15(&mut |x| p(x), -1.0, 1.0);
        assert!((panel.value - exact).abs() < 1e-14);
    }

    #[test]
    fn nonconvergence_is_reported() {
        let r = integrate_finite(|x| if x < 0.3 { 0.0 } else { 1.0 / (x - 0.3).sqrt() }, 0.0, 1.0, 1e-14);
        assert!(!r.converged);
        assert!(r.error_estimate > 1e-14);
    }

    #[test]
    fn singular_endpoint() {
        // ∫₀¹ x^{-1/2} dx = 2
        let r = integrate_singular_power(|_| 1.0, 0.5, 1.0, 1e-12);
        assert!((r.value - 2.0).abs() < 1e-12);
        // ∫₀¹ x^{-3/4} log x dx = -16
        let r = integrate_singular_power(f64::ln, 0.75, 1.0, 1e-10);
        assert!((r.value + 16.0).abs() < 1e-8, "{}", r.value);
    }

    #[test]
    fn acceleration_examples() {
        let ln2 = accelerate_alternating(&partial_sums(|k| (-1f64).powi(k as i32) / (k as f64 + 1.0), 20)).unwrap();
        assert!((ln2.value - std::f64::consts::LN_2).abs() < 1e-7);
        let quarter_pi =
            accelerate_alternating(&partial_sums(|k| (-1f64).powi(k as i32) / (2.0 * k as f64 + 1.0), 20)).unwrap();
        assert!((quarter_pi.value - PI / 4.0).abs() < 1e-7);
        let c = accelerate_alternating(&[2.5; 8]).unwrap();
        assert_eq!(c.value, 2.5);
        assert_eq!(accelerate_alternating(&[1.0; 5]), Err(Error::InsufficientData(5)));
    }

    #[test]
    fn halfline_examples() {
        let root = (PI / 2.0).sqrt();
        for kind in [Trig::Cos, Trig::Sin] {
            let r = integrate_halfline_osc(&OscillatorySpec::new(kind, 0, 0.5, 0.0)).unwrap();
            assert!(r.converged, "{r:?}");
            assert!((r.value - root).abs() < 1e-6, "{kind:?}: {}", r.value);
        }
    }

    #[test]
    fn zeros_follow_the_shift() {
        let s = OscillatorySpec::new(Trig::Cos, 0, 0.5, 0.5);
        assert!((s.zero(0) - (PI / 2.0 - 0.5)).abs() < 1e-15);
        let s = OscillatorySpec::new(Trig::Cos, 0, 0.5, PI / 2.0);
        assert!((s.zero(0) - PI).abs() < 1e-12);
        let s = OscillatorySpec::new(Trig::Sin, 0, 0.5, 0.0).with_frequency(2.0);
        assert!((s.zero(0) - PI / 2.0).abs() < 1e-15);
        let s = OscillatorySpec::new(Trig::Sin, 0, 0.5, 4.0);
        assert!(s.zero(0) > 0.0 && s.zero(0) < PI);
    }

    #[test]
    fn doubling_arches_stays_within_estimate() {
        for (n, p) in [(0, 0.5), (1, 0.25), (2, 0.75)] {
            let base = OscillatorySpec::new(Trig::Cos, n, p, 0.0);
            let a = integrate_halfline_osc(&base).unwrap();
            let b = integrate_halfline_osc(&base.clone().with_arches(120)).unwrap();
            assert!((a.value - b.value).abs() <= a.error_estimate, "n={n} p={p}");
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(integrate_halfline_osc(&OscillatorySpec::new(Trig::Cos, 0, 1.0, 0.0)).is_err());
        let mut s = OscillatorySpec::new(Trig::Cos, 0, 0.5, 0.0);
        s.power = 2;
        assert!(integrate_halfline_osc(&s).is_err());
    }
}
