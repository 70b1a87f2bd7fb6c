//! Exact evaluation of the complete integrals
//!
//! ```text
//! c(n,p) = ∫₀^{π/2} xᵖ cosⁿx dx,   s(n,p) = ∫₀^{π/2} xᵖ sinⁿx dx
//! ```
//!
//! `c` is reduced by `c(n,p) = ((n-1)/n) c(n-2,p) - (p(p-1)/n²) c(n,p-2)` to the
//! four base families `c(0,p)`, `c(1,p)`, `c(n,0)`, `c(n,1)`; `s` follows from
//! the reflection `x ↦ π/2 - x`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::euler_sums::{central_tail_row, SumKind};
use crate::pipoly::PiPoly;
use crate::rational::{binomial, central_binomial, factorial, Rational};
use crate::report::{Case, VerificationReport};

/// Values a first-order recurrence can carry: anything that is a ℚ-module.
pub trait RecurrenceValue: Clone {
    fn zero() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
}

impl RecurrenceValue for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
}

impl RecurrenceValue for PiPoly {
    fn zero() -> Self {
        PiPoly::zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn scale(&self, r: &Rational) -> Self {
        PiPoly::scale(self, r)
    }
}

/// `a(n) z_n = b(n) z_{n-1} + r(n)` for `n ≥ 1`, with initial value `z₀`.
pub struct FirstOrderProblem<'a, V> {
    pub a: Box<dyn Fn(u64) -> Rational + 'a>,
    pub b: Box<dyn Fn(u64) -> Rational + 'a>,
    pub r: Box<dyn Fn(u64) -> V + 'a>,
    pub z0: V,
}

impl<'a, V: RecurrenceValue> FirstOrderProblem<'a, V> {
    pub fn new(
        a: impl Fn(u64) -> Rational + 'a,
        b: impl Fn(u64) -> Rational + 'a,
        r: impl Fn(u64) -> V + 'a,
        z0: V,
    ) -> Self {
        FirstOrderProblem {
            a: Box::new(a),
            b: Box::new(b),
            r: Box::new(r),
            z0,
        }
    }

    /// The recurrence `2n z_n = (2n-1) z_{n-1} + r(n)` behind the Wallis
    /// integrals and every even-branch coefficient.
    pub fn wallis(r: impl Fn(u64) -> V + 'a, z0: V) -> Self {
        Self::new(|n| Rational::from(2 * n as i64), |n| Rational::from(2 * n as i64 - 1), r, z0)
    }
}

/// Closed-form solution through the integrating factor:
///
/// ```text
/// z_n = (b₁⋯b_n)/(a₁⋯a_n) · ( z₀ + Σ_{k=1}^{n} (a₁⋯a_{k-1})/(b₁⋯b_k) · r_k )
/// ```
pub fn solve_first_order<V: RecurrenceValue>(prob: &FirstOrderProblem<'_, V>, n: u64) -> Result<V> {
    let mut prod_a = Rational::one(); // a₁⋯a_{k-1}
    let mut prod_b = Rational::one(); // b₁⋯b_k
    let mut acc = prob.z0.clone();
    for k in 1..=n {
        let ak = (prob.a)(k);
        let bk = (prob.b)(k);
        if ak.is_zero() {
            return Err(Error::ZeroCoefficient { which: "a", index: k });
        }
        if bk.is_zero() {
            return Err(Error::ZeroCoefficient { which: "b", index: k });
        }
        prod_b *= &bk;
        let weight = &prod_a / &prod_b;
        acc = acc.add(&(prob.r)(k).scale(&weight));
        prod_a *= &ak;
    }
    // After the loop prod_a = a₁⋯a_n and prod_b = b₁⋯b_n.
    Ok(acc.scale(&(&prod_b / &prod_a)))
}

/// The four families that seed the recurrence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseKind {
    /// `c(0, p)`
    C0p,
    /// `c(n, 0)`
    Wallis,
    /// `c(1, p)`
    C1p,
    /// `c(n, 1)`
    Cn1,
}

pub fn base_value(kind: BaseKind, idx: u64) -> PiPoly {
    match kind {
        BaseKind::C0p => c0p(idx),
        BaseKind::Wallis => wallis(idx),
        BaseKind::C1p => {
            let sum_form = c1p_sum_form(idx);
            let taylor_form = c1p_taylor_form(idx);
            assert_eq!(sum_form, taylor_form, "the two forms of c(1,{idx}) disagree");
            sum_form
        }
        BaseKind::Cn1 => cn1(idx),
    }
}

/// `(π/2)^{p+1} / (p+1)`
fn c0p(p: u64) -> PiPoly {
    PiPoly::half_pi_power(p as usize + 1).scale(&Rational::new(1, p + 1))
}

/// `c(2m,0) = π C(2m,m) / 2^{2m+1}`, `c(2m+1,0) = 2^{2m} / ((2m+1) C(2m,m))`.
fn wallis(n: u64) -> PiPoly {
    let m = n / 2;
    let c = Rational::from_integer(central_binomial(m));
    if n.is_multiple_of(2) {
        PiPoly::monomial(c * Rational::pow2(-(2 * m as i64 + 1)), 1)
    } else {
        PiPoly::constant(Rational::pow2(2 * m as i64) / (c * Rational::from(2 * m as i64 + 1)))
    }
}

/// `Σ_{k=0}^{⌊p/2⌋} (-1)^k p!/(p-2k)! (π/2)^{p-2k} − (-1)^{⌊p/2⌋} [p odd] p!`
fn c1p_sum_form(p: u64) -> PiPoly {
    let xi = p / 2;
    let pf = factorial(p);
    let mut out = PiPoly::zero();
    for k in 0..=xi {
        let coeff = Rational::sign_power(k) * Rational::new(pf.clone(), factorial(p - 2 * k));
        out = out + PiPoly::half_pi_power((p - 2 * k) as usize).scale(&coeff);
    }
    if p % 2 == 1 {
        out = out - PiPoly::constant(Rational::sign_power(xi) * Rational::from_integer(pf));
    }
    out
}

/// Same value through the truncated sine series
/// `f_p(x) = (-1)^{⌊p/2⌋} p! (−1 + Σ_{k=0}^{⌊p/2⌋} (-1)^k x^{2k+1}/(2k+1)!)`:
/// `c(1,p) = f_p(π/2)` for odd `p` and `f_p′(π/2)` for even `p`.
fn c1p_taylor_form(p: u64) -> PiPoly {
    let xi = p / 2;
    let lead = Rational::sign_power(xi) * Rational::from_integer(factorial(p));
    let mut inner = PiPoly::zero();
    for k in 0..=xi {
        let (power, fact) = if p % 2 == 1 { (2 * k + 1, 2 * k + 1) } else { (2 * k, 2 * k) };
        let c = Rational::sign_power(k) * Rational::new(1, factorial(fact));
        inner = inner + PiPoly::half_pi_power(power as usize).scale(&c);
    }
    if p % 2 == 1 {
        inner = inner - PiPoly::constant(Rational::one());
    }
    inner.scale(&lead)
}

/// `c(2m,1) = C(2m,m)/2^{2m+2} (π²/2 − Σ_{k=1}^{m} 2^{2k}/(k² C(2k,k)))`,
/// `c(2m+1,1) = 2^{2m}/((2m+1)C(2m,m)) (π/2 − Σ_{k=0}^{m} C(2k,k)/(2^{2k}(2k+1)))`.
fn cn1(n: u64) -> PiPoly {
    let m = n / 2;
    let c = Rational::from_integer(central_binomial(m));
    if n.is_multiple_of(2) {
        let tail = central_tail_row(SumKind::Even, m as usize).pop().expect("non-empty");
        let inner = &PiPoly::monomial(Rational::new(1, 2), 2) - &PiPoly::constant(tail);
        inner.scale(&(c * Rational::pow2(-(2 * m as i64 + 2))))
    } else {
        let tail = central_tail_row(SumKind::Odd, m as usize).pop().expect("non-empty");
        let inner = &PiPoly::monomial(Rational::new(1, 2), 1) - &PiPoly::constant(tail);
        inner.scale(&(Rational::pow2(2 * m as i64) / (c * Rational::from(2 * m as i64 + 1))))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Cos,
    Sin,
}

/// Identifies one complete integral `c(n,p)` or `s(n,p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CompleteIntegralKey {
    pub family: Family,
    pub n: u32,
    pub p: u32,
}

/// Memoizing evaluator. Confine one instance to one thread; values are
/// deterministic, so independent instances always agree.
#[derive(Debug, Default)]
pub struct CompleteIntegrals {
    memo: HashMap<CompleteIntegralKey, PiPoly>,
}

impl CompleteIntegrals {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, key: CompleteIntegralKey) -> PiPoly {
        match key.family {
            Family::Cos => self.cos(key.n, key.p),
            Family::Sin => self.sin(key.n, key.p),
        }
    }

    pub fn cos(&mut self, n: u32, p: u32) -> PiPoly {
        let key = CompleteIntegralKey { family: Family::Cos, n, p };
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let v = match (n, p) {
            (_, 0) => base_value(BaseKind::Wallis, n as u64),
            (_, 1) => base_value(BaseKind::Cn1, n as u64),
            (0, _) => base_value(BaseKind::C0p, p as u64),
            (1, _) => base_value(BaseKind::C1p, p as u64),
            _ => {
                let down_n = self.cos(n - 2, p).scale(&Rational::new(n - 1, n));
                let down_p = self.cos(n, p - 2).scale(&Rational::new(p as u64 * (p as u64 - 1), n as u64 * n as u64));
                &down_n - &down_p
            }
        };
        self.memo.insert(key, v.clone());
        v
    }

    /// `s(n,p) = Σ_{k=0}^{p} C(p,k) (π/2)^{p-k} (−1)^k c(n,k)`
    pub fn sin(&mut self, n: u32, p: u32) -> PiPoly {
        let key = CompleteIntegralKey { family: Family::Sin, n, p };
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut v = PiPoly::zero();
        for k in 0..=p {
            let w = Rational::sign_power(k as u64) * Rational::from_integer(binomial(p as u64, k as i64));
            let term = &PiPoly::half_pi_power((p - k) as usize) * &self.cos(n, k);
            v = v + term.scale(&w);
        }
        self.memo.insert(key, v.clone());
        v
    }
}

pub fn c_complete(n: u32, p: u32) -> PiPoly {
    CompleteIntegrals::new().cos(n, p)
}

pub fn s_complete(n: u32, p: u32) -> PiPoly {
    CompleteIntegrals::new().sin(n, p)
}

/// `f(n) = Σ_i 2^{-2i} C(n,2i) C(2i,i)`
fn wallis_sum(n: u64) -> Rational {
    (0..=n / 2)
        .map(|i| {
            Rational::pow2(-2 * i as i64)
                * Rational::from_integer(binomial(n, 2 * i as i64) * central_binomial(i))
        })
        .sum()
}

/// Exact sweep over `n ≤ n_max` of
/// (i) `f(n) = 2^{-n} C(2n,n)`,
/// (ii) `f(n+1) = (2n+1)/(n+1) f(n)`,
/// (iii) `c(2n,0) = 2^{-n} Σ_i C(n,2i) c(2i,0)`.
pub fn check_wallis_identities(n_max: u64) -> VerificationReport {
    let mut report = VerificationReport::new("wallis identities");
    let f: Vec<Rational> = (0..=n_max + 1).map(wallis_sum).collect();
    for n in 0..=n_max {
        let closed = Rational::pow2(-(n as i64)) * Rational::from_integer(central_binomial(n));
        report.push(Case::exact(format!("sum1 n={n}"), &f[n as usize], &closed));

        let stepped = Rational::new(2 * n + 1, n + 1) * &f[n as usize];
        report.push(Case::exact(format!("recur2 n={n}"), &f[n as usize + 1], &stepped));

        let lhs = wallis(2 * n);
        let rhs = (0..=n / 2)
            .map(|i| wallis(2 * i).scale(&Rational::from_integer(binomial(n, 2 * i as i64))))
            .fold(PiPoly::zero(), |acc, t| acc + t)
            .scale(&Rational::pow2(-(n as i64)));
        report.push(Case::exact_poly(format!("recur n={n}"), &lhs, &rhs));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn poly(cs: &[(i64, i64)]) -> PiPoly {
        PiPoly::new(cs.iter().map(|&(n, d)| r(n, d)).collect())
    }

    #[test]
    fn solver_examples() {
        let acc = FirstOrderProblem::new(|_| Rational::one(), |_| Rational::one(), |_| Rational::one(), Rational::zero());
        assert_eq!(solve_first_order(&acc, 5).unwrap(), Rational::from(5));

        let w = FirstOrderProblem::wallis(|_| PiPoly::zero(), PiPoly::monomial(r(1, 2), 1));
        assert_eq!(solve_first_order(&w, 2).unwrap(), PiPoly::monomial(r(3, 16), 1));

        let even_c1 = FirstOrderProblem::wallis(
            |n| PiPoly::constant(r(-1, 2 * n as i64)),
            PiPoly::monomial(r(1, 8), 2),
        );
        assert_eq!(solve_first_order(&even_c1, 1).unwrap(), poly(&[(-1, 4), (0, 1), (1, 16)]));
    }

    #[test]
    fn solver_rejects_zero_coefficients() {
        let p = FirstOrderProblem::new(|n| Rational::from(n as i64 - 3), |_| Rational::one(), |_| Rational::one(), Rational::zero());
        assert_eq!(solve_first_order(&p, 5), Err(Error::ZeroCoefficient { which: "a", index: 3 }));
        let q = FirstOrderProblem::new(|_| Rational::one(), |n| Rational::from(n as i64 - 2), |_| Rational::one(), Rational::zero());
        assert_eq!(solve_first_order(&q, 5), Err(Error::ZeroCoefficient { which: "b", index: 2 }));
    }

    #[test]
    fn c_n1_matches_first_order_solution() {
        // even branch: 2n x_n = (2n-1) x_{n-1} - 1/(2n), x₀ = π²/8
        let even = FirstOrderProblem::wallis(
            |n| PiPoly::constant(r(-1, 2 * n as i64)),
            PiPoly::monomial(r(1, 8), 2),
        );
        // odd branch: (2n+1) y_n = 2n y_{n-1} - 1/(2n+1), y₀ = π/2 - 1
        let odd = FirstOrderProblem::new(
            |n| Rational::from(2 * n as i64 + 1),
            |n| Rational::from(2 * n as i64),
            |n| PiPoly::constant(r(-1, 2 * n as i64 + 1)),
            poly(&[(-1, 1), (1, 2)]),
        );
        for m in 0..15u64 {
            assert_eq!(solve_first_order(&even, m).unwrap(), base_value(BaseKind::Cn1, 2 * m));
            assert_eq!(solve_first_order(&odd, m).unwrap(), base_value(BaseKind::Cn1, 2 * m + 1));
        }
    }

    #[test]
    fn base_value_examples() {
        assert_eq!(base_value(BaseKind::C1p, 1), poly(&[(-1, 1), (1, 2)]));
        assert_eq!(base_value(BaseKind::Wallis, 5), PiPoly::constant(r(8, 15)));
        assert_eq!(base_value(BaseKind::C1p, 2), poly(&[(-2, 1), (0, 1), (1, 4)]));
        assert_eq!(base_value(BaseKind::Cn1, 3), poly(&[(-7, 9), (1, 3)]));
        assert_eq!(base_value(BaseKind::C0p, 2), PiPoly::monomial(r(1, 24), 3));
    }

    #[test]
    fn c1p_forms_agree_and_satisfy_parts_recurrence() {
        // u_p + p(p−1) u_{p−2} = (π/2)^p
        for p in 0..30u64 {
            let u = base_value(BaseKind::C1p, p);
            if p >= 2 {
                let lower = base_value(BaseKind::C1p, p - 2).scale(&Rational::from((p * (p - 1)) as i64));
                assert_eq!(&u + &lower, PiPoly::half_pi_power(p as usize));
            }
        }
    }

    #[test]
    fn complete_examples() {
        assert_eq!(c_complete(0, 1), PiPoly::monomial(r(1, 8), 2));
        assert_eq!(c_complete(2, 2), poly(&[(0, 1), (-1, 8), (0, 1), (1, 48)]));
        assert_eq!(c_complete(2, 0), PiPoly::monomial(r(1, 4), 1));
        assert_eq!(s_complete(1, 0), PiPoly::constant(Rational::one()));
        assert_eq!(s_complete(2, 0), PiPoly::monomial(r(1, 4), 1));
        assert_eq!(s_complete(1, 1), PiPoly::constant(Rational::one()));
    }

    #[test]
    fn recurrence_closure_and_degree() {
        let mut ev = CompleteIntegrals::new();
        for n in 2..=15u32 {
            for p in 2..=15u32 {
                let lhs = ev.cos(n, p);
                let rhs = &ev.cos(n - 2, p).scale(&r(n as i64 - 1, n as i64))
                    - &ev.cos(n, p - 2).scale(&r((p * (p - 1)) as i64, (n * n) as i64));
                assert_eq!(lhs, rhs);
                assert!(lhs.degree().unwrap() <= p as usize + 1);
            }
        }
    }

    #[test]
    fn positivity_and_monotonicity() {
        let mut ev = CompleteIntegrals::new();
        for p in 0..=15u32 {
            for n in 0..=15u32 {
                let here = ev.cos(n, p).to_f64();
                assert!(here > 0.0, "c({n},{p})");
                assert!(ev.sin(n, p).to_f64() > 0.0, "s({n},{p})");
                assert!(ev.cos(n + 1, p).to_f64() < here, "c({},{p}) < c({n},{p})", n + 1);
            }
        }
    }

    #[test]
    fn wallis_identity_examples() {
        assert_eq!(wallis_sum(2), r(3, 2));
        let report = check_wallis_identities(12);
        assert!(report.all_passed(), "{report}");
        assert_eq!(report.summary.total, 13 * 3);
    }

    proptest::proptest! {
        #[test]
        fn solver_output_satisfies_recurrence(
            seeds in proptest::collection::vec((1i64..9, 1i64..9, -9i64..9, 1i64..5), 20),
            z0 in -5i64..5,
        ) {
            let a = |n: u64| Rational::from(seeds[(n - 1) as usize].0);
            let b = |n: u64| Rational::new(seeds[(n - 1) as usize].1, seeds[(n - 1) as usize].3);
            let rr = |n: u64| Rational::new(seeds[(n - 1) as usize].2, seeds[(n - 1) as usize].3);
            let prob = FirstOrderProblem::new(a, b, rr, Rational::from(z0));
            let mut prev = Rational::from(z0);
            for n in 1..=20u64 {
                let z = solve_first_order(&prob, n).unwrap();
                proptest::prop_assert_eq!(a(n) * &z, b(n) * &prev + rr(n));
                prev = z;
            }
        }
    }
}
