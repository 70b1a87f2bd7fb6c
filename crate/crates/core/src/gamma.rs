//! Γ on the positive reals at arbitrary precision.
//!
//! Method: shift the argument up by `N` with the functional equation,
//! `Γ(x) = Γ(x+N) / (x(x+1)⋯(x+N-1))`, then evaluate `log Γ(x+N)` with the
//! Stirling series
//!
//! ```text
//! log Γ(z) = (z - 1/2) log z - z + log(2π)/2 + Σ_{k≥1} B_{2k} / (2k(2k-1) z^{2k-1})
//! ```
//!
//! using exact Bernoulli numbers. For real `z > 0` the truncation error is
//! bounded by the first omitted term, and the series is summed until that term
//! falls below the working precision.

use std::cell::RefCell;

use num_bigint::BigInt;

use crate::error::{domain, Result};
use crate::precision::PrecisionFloat;
use crate::rational::{binomial, Rational};

thread_local! {
    static BERNOULLI: RefCell<Vec<Rational>> = RefCell::new(vec![Rational::one()]);
}

/// `B_m` with the `B_1 = -1/2` convention.
pub fn bernoulli(m: usize) -> Rational {
    BERNOULLI.with(|cache| {
        let mut b = cache.borrow_mut();
        while b.len() <= m {
            let n = b.len();
            // Σ_{j=0}^{n} C(n+1, j) B_j = 0
            let s: Rational = (0..n)
                .map(|j| Rational::from_integer(binomial(n as u64 + 1, j as i64)) * &b[j])
                .sum();
            let next = -s / Rational::from_integer(BigInt::from(n + 1));
            b.push(next);
        }
        b[m].clone()
    })
}

fn gamma_positive(x: &PrecisionFloat) -> PrecisionFloat {
    let digits = x.digits();
    let work = digits + 15;
    let x = x.with_digits(work);
    let shift = digits as i64 + 10;
    let z = &x + &PrecisionFloat::from_i64(shift, work);

    let half = PrecisionFloat::from_rational(&Rational::new(1, 2), work);
    let two_pi = PrecisionFloat::pi(work) * PrecisionFloat::from_i64(2, work);
    let mut log_gamma = (&z - &half) * z.ln() - &z + two_pi.ln() * &half;

    let eps = PrecisionFloat::parse(&format!("1e-{}", work + 2), work).expect("literal");
    let z2 = &z * &z;
    let mut z_pow = z.clone();
    for k in 1..=4 * work as usize {
        let coeff = bernoulli(2 * k) / Rational::from_integer(BigInt::from(2 * k * (2 * k - 1)));
        let term = PrecisionFloat::from_rational(&coeff, work) / &z_pow;
        log_gamma = log_gamma + &term;
        if term.abs() < eps {
            break;
        }
        z_pow = &z_pow * &z2;
    }

    let mut prod = PrecisionFloat::one(work);
    for j in 0..shift {
        prod = prod * (&x + &PrecisionFloat::from_i64(j, work));
    }
    (log_gamma.exp() / prod).with_digits(digits)
}

/// Γ(x) for `0 < x < 2`, at the precision carried by `x`.
pub fn gamma_real(x: &PrecisionFloat) -> Result<PrecisionFloat> {
    let zero = PrecisionFloat::zero(x.digits());
    let two = PrecisionFloat::from_i64(2, x.digits());
    if !(x > &zero && x < &two) {
        return Err(domain("x", x.to_decimal_string(17), "(0, 2)"));
    }
    Ok(gamma_positive(x))
}

/// Γ(r) for an exact rational `0 < r < 2`.
pub fn gamma_rational(r: &Rational, digits: u32) -> Result<PrecisionFloat> {
    if !(r > &Rational::zero() && r < &Rational::from(2)) {
        return Err(domain("x", r, "(0, 2)"));
    }
    Ok(gamma_positive(&PrecisionFloat::from_rational(r, digits)))
}

/// Γ′(1/2) = −√π (γ + 2 log 2).
pub fn gamma_prime_half(digits: u32) -> PrecisionFloat {
    -(PrecisionFloat::pi(digits).sqrt() * PrecisionFloat::xi(digits))
}
