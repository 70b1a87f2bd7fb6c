//! Exact elements of ℚ[π].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::precision::PrecisionFloat;
use crate::rational::Rational;

/// Dense polynomial in π with rational coefficients; `coeffs[j]` multiplies
/// `π^j`. Trailing zeros are always trimmed, so the zero polynomial has an
/// empty coefficient vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "PiPolyJson", into = "PiPolyJson")]
pub struct PiPoly {
    coeffs: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct PiPolyJson {
    pi_coeffs: Vec<Rational>,
}

impl From<PiPolyJson> for PiPoly {
    fn from(j: PiPolyJson) -> Self {
        PiPoly::new(j.pi_coeffs)
    }
}

impl From<PiPoly> for PiPolyJson {
    fn from(p: PiPoly) -> Self {
        PiPolyJson { pi_coeffs: p.coeffs }
    }
}

impl PiPoly {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = PiPoly { coeffs };
        p.normalize();
        p
    }

    pub fn zero() -> Self {
        PiPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        PiPoly::new(vec![c])
    }

    /// `c·π^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        PiPoly::new(coeffs)
    }

    pub fn pi() -> Self {
        PiPoly::monomial(Rational::one(), 1)
    }

    /// `(π/2)^k`
    pub fn half_pi_power(k: usize) -> Self {
        PiPoly::monomial(Rational::pow2(-(k as i64)), k)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Rational::is_zero) {
            self.coeffs.pop();
        }
    }

    /// A copy passed through normalization again; equal to `self`.
    pub fn normalized(&self) -> Self {
        PiPoly::new(self.coeffs.clone())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `π^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, r: &Rational) -> Self {
        PiPoly::new(self.coeffs.iter().map(|c| c * r).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(PiPoly::constant(Rational::one()), |acc, _| &acc * self)
    }

    /// Numeric value with `|error| < 10^{1-digits}·max(1, |value|)`.
    ///
    /// Alternating coefficients can cancel; the working precision is raised
    /// until the digits lost to cancellation are covered.
    pub fn eval(&self, digits: u32) -> PrecisionFloat {
        if self.is_zero() {
            return PrecisionFloat::zero(digits);
        }
        let mut work = digits + 20;
        loop {
            let pi = PrecisionFloat::pi(work);
            let mut acc = PrecisionFloat::zero(work);
            let mut abs_acc = PrecisionFloat::zero(work);
            for c in self.coeffs.iter().rev() {
                let cf = PrecisionFloat::from_rational(c, work);
                acc = &acc * &pi + &cf;
                abs_acc = &abs_acc * &pi + cf.abs();
            }
            let lost = if acc.is_zero() {
                f64::INFINITY
            } else {
                (abs_acc.to_f64() / acc.abs().to_f64()).log10().max(0.0)
            };
            if lost + 15.0 < (work - digits) as f64 {
                return acc.with_digits(digits);
            }
            work = digits + lost.min(10_000.0) as u32 + 30;
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.eval(30).to_f64()
    }

    /// Plain text, descending powers: `π³/48 − π/8`, `3π/16`, `π²/16 − 1/4`.
    pub fn render_plain(&self) -> String {
        self.render(|num, k, den| {
            let body = match (num.as_str(), k) {
                (n, 0) => n.to_string(),
                ("1", k) => format!("π{}", superscript(k)),
                (n, k) => format!("{n}π{}", superscript(k)),
            };
            match den {
                Some(d) => format!("{body}/{d}"),
                None => body,
            }
        }, " + ", " − ", "−")
    }

    /// LaTeX with `\frac` and `\pi`.
    pub fn render_latex(&self) -> String {
        self.render(|num, k, den| {
            let pi = match k {
                0 => String::new(),
                1 => "\\pi".to_string(),
                k => format!("\\pi^{{{k}}}"),
            };
            let body = match (num.as_str(), k) {
                (n, 0) => n.to_string(),
                ("1", _) => pi,
                (n, _) => format!("{n}{pi}"),
            };
            match den {
                Some(d) => format!("\\frac{{{body}}}{{{d}}}"),
                None => body,
            }
        }, " + ", " - ", "-")
    }

    fn render(
        &self,
        term: impl Fn(String, usize, Option<String>) -> String,
        plus: &str,
        minus: &str,
        lead_minus: &str,
    ) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let a = c.abs();
            let den = (!a.is_integer()).then(|| a.denom().to_string());
            let t = term(a.numer().to_string(), k, den);
            match (out.is_empty(), c.is_negative()) {
                (true, false) => {}
                (true, true) => out.push_str(lead_minus),
                (false, false) => out.push_str(plus),
                (false, true) => out.push_str(minus),
            }
            out.push_str(&t);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("PiPoly serializes")
    }
}

fn superscript(k: usize) -> String {
    if k == 1 {
        return String::new();
    }
    k.to_string()
        .chars()
        .map(|c| match c {
            '0' => '⁰',
            '1' => '¹',
            '2' => '²',
            '3' => '³',
            '4' => '⁴',
            '5' => '⁵',
            '6' => '⁶',
            '7' => '⁷',
            '8' => '⁸',
            _ => '⁹',
        })
        .collect()
}

impl fmt::Display for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_plain())
    }
}

impl Add<&PiPoly> for &PiPoly {
    type Output = PiPoly;
    fn add(self, rhs: &PiPoly) -> PiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PiPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub<&PiPoly> for &PiPoly {
    type Output = PiPoly;
    fn sub(self, rhs: &PiPoly) -> PiPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PiPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul<&PiPoly> for &PiPoly {
    type Output = PiPoly;
    fn mul(self, rhs: &PiPoly) -> PiPoly {
        if self.is_zero() || rhs.is_zero() {
            return PiPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PiPoly::new(out)
    }
}

impl Mul<&Rational> for &PiPoly {
    type Output = PiPoly;
    fn mul(self, rhs: &Rational) -> PiPoly {
        self.scale(rhs)
    }
}

impl Neg for &PiPoly {
    type Output = PiPoly;
    fn neg(self) -> PiPoly {
        PiPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident, $rhs:ty) => {
        impl $tr<$rhs> for PiPoly {
            type Output = PiPoly;
            fn $method(self, rhs: $rhs) -> PiPoly {
                $tr::$method(&self, &rhs)
            }
        }
        impl $tr<&$rhs> for PiPoly {
            type Output = PiPoly;
            fn $method(self, rhs: &$rhs) -> PiPoly {
                $tr::$method(&self, rhs)
            }
        }
    };
}

owned_binop!(Add, add, PiPoly);
owned_binop!(Sub, sub, PiPoly);
owned_binop!(Mul, mul, PiPoly);
owned_binop!(Mul, mul, Rational);

impl Neg for PiPoly {
    type Output = PiPoly;
    fn neg(self) -> PiPoly {
        -&self
    }
}

/// Ring operation selector for [`pipoly_combine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Combine {
    Add,
    Scale,
    Mul,
}

/// Right operand of [`pipoly_combine`]: a polynomial or a bare rational.
#[derive(Clone, Debug)]
pub enum Operand {
    Poly(PiPoly),
    Scalar(Rational),
}

impl Operand {
    fn as_poly(&self) -> PiPoly {
        match self {
            Operand::Poly(p) => p.clone(),
            Operand::Scalar(r) => PiPoly::constant(r.clone()),
        }
    }
}

pub fn pipoly_combine(op: Combine, a: &PiPoly, b: &Operand) -> PiPoly {
    match (op, b) {
        (Combine::Add, b) => a + &b.as_poly(),
        (Combine::Mul, b) => a * &b.as_poly(),
        (Combine::Scale, Operand::Scalar(r)) => a.scale(r),
        (Combine::Scale, Operand::Poly(p)) => a * p,
    }
}

pub fn pipoly_eval(p: &PiPoly, digits: u32) -> PrecisionFloat {
    p.eval(digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn poly(cs: &[(i64, i64)]) -> PiPoly {
        PiPoly::new(cs.iter().map(|&(n, d)| r(n, d)).collect())
    }

    #[test]
    fn combine_examples() {
        let half_pi = PiPoly::monomial(r(1, 2), 1);
        let sum = pipoly_combine(Combine::Add, &half_pi, &Operand::Poly(-&half_pi));
        assert!(sum.is_zero());
        assert!(sum.coeffs().is_empty());

        let sq = pipoly_combine(Combine::Mul, &PiPoly::pi(), &Operand::Poly(PiPoly::pi()));
        assert_eq!(sq.coeffs(), &[r(0, 1), r(0, 1), r(1, 1)]);

        let scaled = pipoly_combine(Combine::Scale, &PiPoly::monomial(r(1, 8), 2), &Operand::Scalar(r(1, 2)));
        assert_eq!(scaled, PiPoly::monomial(r(1, 16), 2));
    }

    #[test]
    fn eval_examples() {
        let v = PiPoly::monomial(r(1, 8), 2).eval(20);
        assert_eq!(v.to_decimal_string(20), "1.2337005501361698274");
        let c = PiPoly::constant(r(7, 3)).eval(20);
        assert_eq!(c.to_decimal_string(11), "2.3333333333");
        let c21 = poly(&[(-1, 4), (0, 1), (1, 16)]).eval(20);
        assert_eq!(c21.to_decimal_string(17), "0.36685027506808491");
    }

    #[test]
    fn eval_under_cancellation() {
        // 355/113 − π ≈ 2.67e-7; every requested digit must survive.
        let v = poly(&[(355, 113), (-1, 1)]).eval(30);
        let expect = PrecisionFloat::parse("2.667641890624223123689328864963338040519523e-7", 45).unwrap();
        let rel = (v.with_digits(45) - expect).abs().to_f64() / 2.667e-7;
        assert!(rel < 1e-29, "{rel}");
    }

    #[test]
    fn rendering() {
        assert_eq!(poly(&[(-1, 4), (0, 1), (1, 16)]).render_plain(), "π²/16 − 1/4");
        assert_eq!(PiPoly::monomial(r(3, 16), 1).render_plain(), "3π/16");
        assert_eq!(poly(&[(0, 1), (-1, 8), (0, 1), (1, 48)]).render_plain(), "π³/48 − π/8");
        assert_eq!(poly(&[(-7, 9), (1, 3)]).render_plain(), "π/3 − 7/9");
        assert_eq!(PiPoly::zero().render_plain(), "0");
        assert_eq!(PiPoly::constant(r(-2, 1)).render_plain(), "−2");
        assert_eq!(
            poly(&[(-1, 4), (0, 1), (1, 16)]).render_latex(),
            "\\frac{\\pi^{2}}{16} - \\frac{1}{4}"
        );
        assert_eq!(PiPoly::monomial(r(3, 16), 1).render_latex(), "\\frac{3\\pi}{16}");
    }

    #[test]
    fn json_shape() {
        let p = poly(&[(-1, 4), (0, 1), (1, 16)]);
        let j = p.to_json();
        assert_eq!(j, serde_json::json!({"pi_coeffs": ["-1/4", "0/1", "1/16"]}));
        let back: PiPoly = serde_json::from_value(j).unwrap();
        assert_eq!(back, p);
    }

    fn arb_poly() -> impl Strategy<Value = PiPoly> {
        prop::collection::vec((-20i64..20, 1i64..12), 0..5)
            .prop_map(|cs| PiPoly::new(cs.into_iter().map(|(n, d)| r(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn normalization_idempotent(cs in prop::collection::vec((-5i64..5, 1i64..4), 0..6)) {
            let p = PiPoly::new(cs.into_iter().map(|(n, d)| r(n, d)).collect());
            prop_assert_eq!(p.normalized(), p.clone());
            prop_assert!(p.coeffs().last().is_none_or(|c| !c.is_zero()));
        }
    }
}
