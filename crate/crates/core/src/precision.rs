//! Decimal-precision floating point backed by `astro-float`, with the
//! constants π, γ and log 2 available at any precision.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};

use crate::rational::Rational;

pub const DEFAULT_DIGITS: u32 = 50;

const RM: RoundingMode = RoundingMode::ToEven;
const GUARD_BITS: usize = 64;
const LOG2_10: f64 = std::f64::consts::LOG2_10;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
    static EULER_CACHE: RefCell<HashMap<u32, BigFloat>> = RefCell::new(HashMap::new());
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

fn bits_for(digits: u32) -> usize {
    (digits as f64 * LOG2_10).ceil() as usize + GUARD_BITS
}

/// A real number carried at a fixed number of significant decimal digits.
#[derive(Clone, Debug)]
pub struct PrecisionFloat {
    value: BigFloat,
    digits: u32,
}

impl PrecisionFloat {
    fn wrap(value: BigFloat, digits: u32) -> Self {
        PrecisionFloat { value, digits }
    }

    fn bits(&self) -> usize {
        bits_for(self.digits)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Same value re-rounded (or extended) to `digits`.
    pub fn with_digits(&self, digits: u32) -> Self {
        let mut v = self.value.clone();
        // Extending precision is exact; shrinking rounds.
        let _ = v.set_precision(bits_for(digits), RM);
        PrecisionFloat::wrap(v, digits)
    }

    pub fn zero(digits: u32) -> Self {
        Self::from_i64(0, digits)
    }

    pub fn one(digits: u32) -> Self {
        Self::from_i64(1, digits)
    }

    pub fn from_i64(n: i64, digits: u32) -> Self {
        PrecisionFloat::wrap(BigFloat::from_i64(n, bits_for(digits)), digits)
    }

    /// Exact binary value of `x`, widened to `digits`.
    pub fn from_f64(x: f64, digits: u32) -> Self {
        PrecisionFloat::wrap(BigFloat::from_f64(x, bits_for(digits)), digits)
    }

    pub fn from_rational(r: &Rational, digits: u32) -> Self {
        let p = bits_for(digits);
        let (num, den) = with_consts(|cc| {
            (
                BigFloat::parse(&r.numer().to_string(), Radix::Dec, p, RM, cc),
                BigFloat::parse(&r.denom().to_string(), Radix::Dec, p, RM, cc),
            )
        });
        PrecisionFloat::wrap(num.div(&den, p, RM), digits)
    }

    /// Parses a decimal literal such as `1.2533141373155` at `digits`.
    pub fn parse(s: &str, digits: u32) -> Option<Self> {
        let v = with_consts(|cc| BigFloat::parse(s.trim(), Radix::Dec, bits_for(digits), RM, cc));
        if v.is_nan() {
            None
        } else {
            Some(PrecisionFloat::wrap(v, digits))
        }
    }

    pub fn pi(digits: u32) -> Self {
        let p = bits_for(digits);
        PrecisionFloat::wrap(with_consts(|cc| cc.pi(p, RM)), digits)
    }

    pub fn ln2(digits: u32) -> Self {
        let p = bits_for(digits);
        PrecisionFloat::wrap(with_consts(|cc| cc.ln_2(p, RM)), digits)
    }

    /// Euler–Mascheroni constant γ, computed by the Brent–McMillan
    /// Bessel-function algorithm and cached per precision.
    pub fn euler_gamma(digits: u32) -> Self {
        if let Some(v) = EULER_CACHE.with(|c| c.borrow().get(&digits).cloned()) {
            return PrecisionFloat::wrap(v, digits);
        }
        let v = brent_mcmillan(digits);
        EULER_CACHE.with(|c| c.borrow_mut().insert(digits, v.value.clone()));
        v
    }

    /// `γ + 2 log 2`, the constant behind every log-weighted evaluation.
    pub fn xi(digits: u32) -> Self {
        let two = PrecisionFloat::from_i64(2, digits);
        Self::euler_gamma(digits) + two * Self::ln2(digits)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.value.is_negative()
    }

    pub fn abs(&self) -> Self {
        PrecisionFloat::wrap(self.value.abs(), self.digits)
    }

    pub fn sqrt(&self) -> Self {
        PrecisionFloat::wrap(self.value.sqrt(self.bits(), RM), self.digits)
    }

    pub fn exp(&self) -> Self {
        let p = self.bits();
        PrecisionFloat::wrap(with_consts(|cc| self.value.exp(p, RM, cc)), self.digits)
    }

    pub fn ln(&self) -> Self {
        let p = self.bits();
        PrecisionFloat::wrap(with_consts(|cc| self.value.ln(p, RM, cc)), self.digits)
    }

    pub fn sin(&self) -> Self {
        let r = self.reduce_two_pi();
        let p = r.bits();
        PrecisionFloat::wrap(with_consts(|cc| r.value.sin(p, RM, cc)), self.digits)
    }

    pub fn cos(&self) -> Self {
        let r = self.reduce_two_pi();
        let p = r.bits();
        PrecisionFloat::wrap(with_consts(|cc| r.value.cos(p, RM, cc)), self.digits)
    }

    /// Representative of `self` modulo 2π in `[-π, π]`.
    pub fn reduce_two_pi(&self) -> Self {
        let two_pi = PrecisionFloat::pi(self.digits + 10) * PrecisionFloat::from_i64(2, self.digits + 10);
        let x = self.with_digits(self.digits + 10);
        let k = (&x / &two_pi).round_nearest();
        if k.is_zero() {
            return self.clone();
        }
        (x - k * two_pi).with_digits(self.digits)
    }

    fn round_nearest(&self) -> Self {
        let half = PrecisionFloat::from_f64(0.5, self.digits);
        PrecisionFloat::wrap((self + &half).value.floor(), self.digits)
    }

    /// `self^e` for real `e`; requires `self > 0` unless `e` is integral.
    pub fn powf(&self, e: &PrecisionFloat) -> Self {
        let p = self.bits().max(e.bits());
        let digits = self.digits.max(e.digits);
        PrecisionFloat::wrap(with_consts(|cc| self.value.pow(&e.value, p, RM, cc)), digits)
    }

    pub fn powi(&self, e: i32) -> Self {
        let mag = PrecisionFloat::wrap(self.value.powi(e.unsigned_abs() as usize, self.bits(), RM), self.digits);
        if e < 0 {
            PrecisionFloat::one(self.digits) / mag
        } else {
            mag
        }
    }

    /// `self^r` for an exact rational exponent.
    pub fn pow_rational(&self, r: &Rational) -> Self {
        if r.is_integer() {
            if let Ok(e) = i32::try_from(r.numer()) {
                return self.powi(e);
            }
        }
        self.powf(&PrecisionFloat::from_rational(r, self.digits))
    }

    pub fn to_f64(&self) -> f64 {
        if self.value.is_zero() {
            return 0.0;
        }
        let s = with_consts(|cc| self.value.format(Radix::Dec, RM, cc)).unwrap_or_default();
        s.parse().unwrap_or(f64::NAN)
    }

    /// Rounds to `sig` significant digits and renders in plain decimal
    /// notation (scientific outside `1e-7 ..= 1e21`).
    pub fn to_decimal_string(&self, sig: u32) -> String {
        if self.value.is_zero() {
            return "0".to_string();
        }
        let raw = with_consts(|cc| self.value.format(Radix::Dec, RM, cc)).unwrap_or_default();
        render_decimal(&raw, sig.max(1) as usize)
    }
}

fn render_decimal(raw: &str, sig: usize) -> String {
    let (neg, body) = match raw.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, raw),
    };
    let (mant, exp) = match body.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().unwrap_or(0)),
        None => (body, 0),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    let mut digits: Vec<u8> = ip.bytes().chain(fp.bytes()).map(|b| b - b'0').collect();
    // Position of the decimal point relative to the start of `digits`.
    let mut point = ip.len() as i64 + exp;
    while digits.len() > 1 && digits[0] == 0 {
        digits.remove(0);
        point -= 1;
    }
    if digits.len() > sig {
        let round_up = digits[sig] >= 5;
        digits.truncate(sig);
        if round_up {
            let mut i = sig;
            loop {
                if i == 0 {
                    digits.insert(0, 1);
                    digits.truncate(sig);
                    point += 1;
                    break;
                }
                i -= 1;
                if digits[i] == 9 {
                    digits[i] = 0;
                } else {
                    digits[i] += 1;
                    break;
                }
            }
        }
    }
    while digits.len() > 1 && *digits.last().unwrap() == 0 {
        digits.pop();
    }
    let ds: String = digits.iter().map(|d| (b'0' + d) as char).collect();
    let sign = if neg { "-" } else { "" };
    if !(-6..=21).contains(&point) {
        let (h, t) = ds.split_at(1);
        let t = if t.is_empty() { String::new() } else { format!(".{t}") };
        return format!("{sign}{h}{t}e{}", point - 1);
    }
    if point <= 0 {
        format!("{sign}0.{}{ds}", "0".repeat((-point) as usize))
    } else if point as usize >= ds.len() {
        format!("{sign}{ds}{}", "0".repeat(point as usize - ds.len()))
    } else {
        let (h, t) = ds.split_at(point as usize);
        format!("{sign}{h}.{t}")
    }
}

/// Brent–McMillan: with `A_k`, `B_k` built from `N^{2k}/(k!)^2`,
/// γ = U/V − (error O(e^{-4N})).
fn brent_mcmillan(digits: u32) -> PrecisionFloat {
    let n = (digits as f64 * std::f64::consts::LN_10 / 4.0).ceil() as i64 + 2;
    // Terms grow to ~e^{2N}; carry that many extra digits.
    let work = digits + (2.0 * n as f64 / std::f64::consts::LN_10).ceil() as u32 + 10;
    let big_n = PrecisionFloat::from_i64(n, work);
    let n2 = &big_n * &big_n;
    let mut a = -big_n.ln();
    let mut b = PrecisionFloat::one(work);
    let mut u = a.clone();
    let mut v = b.clone();
    let terms = (3.5912 * n as f64).ceil() as i64 + 10;
    for k in 1..=terms {
        let kf = PrecisionFloat::from_i64(k, work);
        b = &b * &n2 / (&kf * &kf);
        a = (&a * &n2 / &kf + &b) / &kf;
        u = u + &a;
        v = v + &b;
    }
    (u / v).with_digits(digits)
}

impl fmt::Display for PrecisionFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string(self.digits))
    }
}

impl PartialEq for PrecisionFloat {
    fn eq(&self, other: &Self) -> bool {
        self.value.cmp(&other.value) == Some(0)
    }
}

impl PartialOrd for PrecisionFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.cmp(&other.value).map(|c| c.cmp(&0))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&PrecisionFloat> for &PrecisionFloat {
            type Output = PrecisionFloat;
            fn $method(self, rhs: &PrecisionFloat) -> PrecisionFloat {
                let digits = self.digits.max(rhs.digits);
                PrecisionFloat::wrap(self.value.$method(&rhs.value, bits_for(digits), RM), digits)
            }
        }
        impl $tr<PrecisionFloat> for PrecisionFloat {
            type Output = PrecisionFloat;
            fn $method(self, rhs: PrecisionFloat) -> PrecisionFloat {
                $tr::$method(&self, &rhs)
            }
        }
        impl $tr<&PrecisionFloat> for PrecisionFloat {
            type Output = PrecisionFloat;
            fn $method(self, rhs: &PrecisionFloat) -> PrecisionFloat {
                $tr::$method(&self, rhs)
            }
        }
        impl $tr<PrecisionFloat> for &PrecisionFloat {
            type Output = PrecisionFloat;
            fn $method(self, rhs: PrecisionFloat) -> PrecisionFloat {
                $tr::$method(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for PrecisionFloat {
    type Output = PrecisionFloat;
    fn neg(self) -> PrecisionFloat {
        PrecisionFloat::wrap(BigFloat::neg(&self.value), self.digits)
    }
}

impl Neg for &PrecisionFloat {
    type Output = PrecisionFloat;
    fn neg(self) -> PrecisionFloat {
        PrecisionFloat::wrap(BigFloat::neg(&self.value), self.digits)
    }
}

/// Complex number over [`PrecisionFloat`]; just enough for `(ξ + iπ/2)^n e^{iπn/4}`.
#[derive(Clone, Debug)]
pub struct ComplexFloat {
    pub re: PrecisionFloat,
    pub im: PrecisionFloat,
}

impl ComplexFloat {
    pub fn new(re: PrecisionFloat, im: PrecisionFloat) -> Self {
        ComplexFloat { re, im }
    }

    /// `e^{iθ}`
    pub fn cis(theta: &PrecisionFloat) -> Self {
        ComplexFloat::new(theta.cos(), theta.sin())
    }

    pub fn mul(&self, o: &ComplexFloat) -> ComplexFloat {
        ComplexFloat::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn powu(&self, n: u32) -> ComplexFloat {
        let digits = self.re.digits();
        let mut acc = ComplexFloat::new(PrecisionFloat::one(digits), PrecisionFloat::zero(digits));
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI_60: &str = "3.14159265358979323846264338327950288419716939937510582097494";
    const EULER_60: &str = "0.577215664901532860606512090082402431042159335939923598805767";
    const LN2_60: &str = "0.693147180559945309417232121458176568075500134360255254120680";

    fn close(a: &PrecisionFloat, lit: &str, digits: u32) -> bool {
        let b = PrecisionFloat::parse(lit, digits + 10).unwrap();
        let diff = (a.with_digits(digits + 10) - b).abs();
        diff < PrecisionFloat::parse(&format!("1e-{}", digits), digits + 10).unwrap()
    }

    #[test]
    fn constants_to_fifty_digits() {
        assert!(close(&PrecisionFloat::pi(55), PI_60, 55));
        assert!(close(&PrecisionFloat::euler_gamma(55), EULER_60, 55));
        assert!(close(&PrecisionFloat::ln2(55), LN2_60, 55));
    }

    #[test]
    fn euler_gamma_low_precision() {
        assert!((PrecisionFloat::euler_gamma(16).to_f64() - 0.5772156649015329).abs() < 1e-15);
    }

    #[test]
    fn rational_conversion_and_rendering() {
        let x = PrecisionFloat::from_rational(&Rational::new(7, 3), 20);
        assert_eq!(x.to_decimal_string(11), "2.3333333333");
        let y = PrecisionFloat::from_rational(&Rational::new(-1, 8), 20);
        assert_eq!(y.to_decimal_string(20), "-0.125");
        assert_eq!(PrecisionFloat::from_i64(0, 20).to_decimal_string(5), "0");
    }

    #[test]
    fn decimal_rendering_rounds_and_carries() {
        assert_eq!(render_decimal("9.9996e+0", 4), "10");
        assert_eq!(render_decimal("1.23456e+3", 3), "1230");
        assert_eq!(render_decimal("1.25e-1", 5), "0.125");
        assert_eq!(render_decimal("-4.5e-9", 3), "-4.5e-9");
        assert_eq!(render_decimal("1.0e+25", 3), "1e25");
    }

    #[test]
    fn phase_reduction_is_periodic() {
        let b = PrecisionFloat::from_f64(0.3, 40);
        let two_pi = PrecisionFloat::pi(40) * PrecisionFloat::from_i64(2, 40);
        let shifted = &b + &(two_pi * PrecisionFloat::from_i64(1000, 40));
        let d = (shifted.sin() - b.sin()).abs().to_f64();
        assert!(d < 1e-30, "{d}");
    }

    #[test]
    fn complex_power() {
        let d = 30;
        let i = ComplexFloat::new(PrecisionFloat::zero(d), PrecisionFloat::one(d));
        let i4 = i.powu(4);
        assert!((i4.re.to_f64() - 1.0).abs() < 1e-25);
        assert!(i4.im.to_f64().abs() < 1e-25);
    }

    #[test]
    fn pow_rational_matches_sqrt() {
        let three = PrecisionFloat::from_i64(3, 40);
        let a = three.pow_rational(&Rational::new(-1, 2));
        let b = PrecisionFloat::one(40) / three.sqrt();
        assert!((a - b).abs().to_f64() < 1e-38);
    }
}
