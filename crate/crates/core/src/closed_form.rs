//! Direct, non-recursive expansions of the even and odd branches
//! `X_n(p) = c(2n,p)` and `Y_n(p) = c(2n+1,p)` as polynomials in π, with
//! coefficients given by nested Euler sums.
//!
//! ```text
//! X_n(p) = Σ_{j=0}^{⌊p/2⌋} a_j π^{p+1-2j} + [p odd] a*
//! Y_n(p) = Σ_{j=0}^{⌊p/2⌋} b_j π^{p-2j}   + [p odd] b*
//! ```
//!
//! The constant terms `a*`, `b*` couple a central-binomial tail to the
//! smallest index of a `⌊p/2⌋`-fold nested sum:
//!
//! ```text
//! a* = (-1)^{ξ+1} C(2n,n) p! / 2^{2n+p+1}  Σ_{1≤k₁≤⋯≤k_ξ≤n} T(k₁) / (k₁²⋯k_ξ²)
//! b* = (-1)^{ξ+1} p! 2^{2n} / ((2n+1)C(2n,n))  Σ_{0≤k₁≤⋯≤k_ξ≤n} U(k₁) / ((2k₁+1)²⋯(2k_ξ+1)²)
//! ```
//!
//! with `ξ = ⌊p/2⌋`, `T(k) = Σ_{i=1}^{k} 4^i/(i² C(2i,i))` and
//! `U(k) = Σ_{i=0}^{k} C(2i,i)/(4^i (2i+1))`. A variant with a `p`-fold sum,
//! the tail on the largest index and sign `(-1)^ξ` is kept in
//! [`star_as_printed`] for comparison; it does not reproduce `c(n,p)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::euler_sums::{central_tail_row, NestedSumTable, SumKind};
use crate::pipoly::PiPoly;
use crate::rational::{central_binomial, factorial, Rational};
use crate::recurrence::{base_value, solve_first_order, BaseKind, FirstOrderProblem};
use crate::report::{Case, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn sum_kind(self) -> SumKind {
        match self {
            Parity::Even => SumKind::Even,
            Parity::Odd => SumKind::Odd,
        }
    }

    /// The `n` of `c(n, p)` for half-index `m`.
    pub fn full_index(self, m: u32) -> u32 {
        match self {
            Parity::Even => 2 * m,
            Parity::Odd => 2 * m + 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BranchExpansion {
    pub parity: Parity,
    pub n: u32,
    pub p: u32,
    /// `coeffs[j]` multiplies `π^{pi_powers[j]}`.
    pub coeffs: Vec<Rational>,
    pub star: Option<Rational>,
    pub assembled: PiPoly,
}

impl BranchExpansion {
    pub fn pi_powers(&self) -> Vec<u32> {
        let top = match self.parity {
            Parity::Even => self.p + 1,
            Parity::Odd => self.p,
        };
        (0..self.coeffs.len() as u32).map(|j| top - 2 * j).collect()
    }

    /// Rebuild the polynomial from `coeffs` and `star`.
    pub fn recombine(&self) -> PiPoly {
        let mut out = PiPoly::zero();
        for (c, k) in self.coeffs.iter().zip(self.pi_powers()) {
            out = out + PiPoly::monomial(c.clone(), k as usize);
        }
        if let Some(s) = &self.star {
            out = out + PiPoly::constant(s.clone());
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "parity": self.parity,
            "n": self.n,
            "p": self.p,
            "pi_powers": self.pi_powers(),
            "coeffs": self.coeffs.iter().map(Rational::to_fraction_string).collect::<Vec<_>>(),
            "star": self.star.as_ref().map(Rational::to_fraction_string),
        })
    }
}

fn xi(p: u32) -> usize {
    (p / 2) as usize
}

/// `C(2n,n) p! / 2^{2n+p+1}` (even) or `p! 2^{2n-p} / ((2n+1) C(2n,n))` (odd).
fn prefactor(parity: Parity, n: u32, p: u32) -> Rational {
    let c = Rational::from_integer(central_binomial(n as u64));
    let pf = Rational::from_integer(factorial(p as u64));
    match parity {
        Parity::Even => c * pf * Rational::pow2(-(2 * n as i64 + p as i64 + 1)),
        Parity::Odd => pf * Rational::pow2(2 * n as i64 - p as i64) / (c * Rational::from(2 * n as i64 + 1)),
    }
}

fn expansion(parity: Parity, n: u32, p: u32) -> BranchExpansion {
    let kind = parity.sum_kind();
    let depth = xi(p);
    let pre = prefactor(parity, n, p);
    let sums = NestedSumTable::new(kind, depth, n as usize);
    let coeffs = (0..=depth)
        .map(|j| {
            let (lower, extra) = match parity {
                Parity::Even => (p as u64 + 1 - 2 * j as u64, Rational::one()),
                Parity::Odd => (p as u64 - 2 * j as u64, Rational::pow2(2 * j as i64)),
            };
            Rational::sign_power(j as u64) * &pre * extra * sums.get(j, n as usize)
                / Rational::from_integer(factorial(lower))
        })
        .collect();
    let star = (p % 2 == 1).then(|| star_term(parity, n, p));
    let mut e = BranchExpansion {
        parity,
        n,
        p,
        coeffs,
        star,
        assembled: PiPoly::zero(),
    };
    e.assembled = e.recombine();
    e
}

fn star_term(parity: Parity, n: u32, p: u32) -> Rational {
    let kind = parity.sum_kind();
    let depth = xi(p);
    let tails = central_tail_row(kind, n as usize);
    let coupled = NestedSumTable::with_base_row(kind, tails, depth);
    let scale = match parity {
        // the even constant carries an extra factor 2^{p+1} relative to the π-coefficients
        Parity::Even => prefactor(parity, n, p),
        Parity::Odd => prefactor(parity, n, p) * Rational::pow2(p as i64),
    };
    Rational::sign_power(depth as u64 + 1) * scale * coupled.get(depth, n as usize)
}

/// Expansion from an already-known value for the two smallest powers.
fn delegated(parity: Parity, n: u32, p: u32) -> BranchExpansion {
    let full = parity.full_index(n) as u64;
    let kind = if p == 0 { BaseKind::Wallis } else { BaseKind::Cn1 };
    let value = base_value(kind, full);
    let top = match parity {
        Parity::Even => p + 1,
        Parity::Odd => p,
    };
    BranchExpansion {
        parity,
        n,
        p,
        coeffs: vec![value.coeff(top as usize)],
        star: (p == 1).then(|| value.coeff(0)),
        assembled: value,
    }
}

/// `c(2n, p)` expanded in descending powers of π.
pub fn even_branch(n: u32, p: u32) -> BranchExpansion {
    if p < 2 {
        delegated(Parity::Even, n, p)
    } else {
        expansion(Parity::Even, n, p)
    }
}

/// `c(2n+1, p)` expanded in descending powers of π.
pub fn odd_branch(n: u32, p: u32) -> BranchExpansion {
    if p < 2 {
        delegated(Parity::Odd, n, p)
    } else {
        expansion(Parity::Odd, n, p)
    }
}

/// Same expansion, evaluated by the general coefficient formula even for
/// `p < 2`.
pub fn branch_by_formula(parity: Parity, n: u32, p: u32) -> BranchExpansion {
    expansion(parity, n, p)
}

/// Even-branch coefficient of `π^{p+1-2j}` obtained by solving the
/// first-order recurrence in `n`
///
/// ```text
/// 2n a_{n,p,j} = (2n-1) a_{n-1,p,j} - p(p-1)/(2n) · a_{n,p-2,j-1},
/// a_{0,p,j} = [j = 0] / ((p+1) 2^{p+1})
/// ```
///
/// Only depths `j ≤ 2` are supported.
pub fn coeff_via_recurrence(n: u32, p: u32, j: usize) -> Result<Rational> {
    if j > 2 {
        return Err(Error::UnsupportedDepth(j));
    }
    Ok(coeff_rec(n, p, j))
}

fn coeff_rec(n: u32, p: u32, j: usize) -> Rational {
    if j > xi(p) {
        return Rational::zero();
    }
    let z0 = if j == 0 {
        Rational::new(1, (p as u64 + 1) * (1u64 << (p + 1)))
    } else {
        Rational::zero()
    };
    let lower: Vec<Rational> = if j == 0 {
        Vec::new()
    } else {
        (0..=n).map(|k| coeff_rec(k, p - 2, j - 1)).collect()
    };
    let pp = Rational::from(p as i64 * (p as i64 - 1));
    let prob = FirstOrderProblem::wallis(
        |k| {
            if j == 0 {
                Rational::zero()
            } else {
                -(&pp * &lower[k as usize]) / Rational::from(2 * k as i64)
            }
        },
        z0,
    );
    solve_first_order(&prob, n as u64).expect("Wallis coefficients never vanish for k ≥ 1")
}

/// Constant term as obtained from the alternative statement: a `p`-fold nested
/// sum with the tail on the largest index, sign `(-1)^ξ`, and prefactor
/// `C(2n,n) p!/2^{2n}` (even) or `p! 2^{2n}/((2n+1)C(2n,n))` (odd).
/// `None` for even `p`.
pub fn star_as_printed(parity: Parity, n: u32, p: u32) -> Option<Rational> {
    if p.is_multiple_of(2) {
        return None;
    }
    let kind = parity.sum_kind();
    let plain = NestedSumTable::new(kind, p as usize - 1, n as usize);
    let tails = central_tail_row(kind, n as usize);
    let w = |k: usize| match kind {
        SumKind::Even if k == 0 => Rational::zero(),
        SumKind::Even => Rational::new(1, (k * k) as u64),
        SumKind::Odd => Rational::new(1, ((2 * k + 1) * (2 * k + 1)) as u64),
    };
    // Σ_{k_p ≤ n} w(k_p) T(k_p) · (depth p-1 sum bounded by k_p)
    let coupled: Rational = (0..=n as usize)
        .map(|k| w(k) * &tails[k] * plain.get(p as usize - 1, k))
        .sum();
    let c = Rational::from_integer(central_binomial(n as u64));
    let pf = Rational::from_integer(factorial(p as u64));
    let pre = match parity {
        Parity::Even => c * pf * Rational::pow2(-2 * n as i64),
        Parity::Odd => pf * Rational::pow2(2 * n as i64) / (c * Rational::from(2 * n as i64 + 1)),
    };
    Some(Rational::sign_power(xi(p) as u64) * pre * coupled)
}

/// Compares the constant term of the alternative statement with the one
/// forced by `c(n,p)`, for odd `p ≤ p_max` and `n ≤ n_max`.
pub fn star_discrepancy_report(n_max: u32, p_max: u32) -> VerificationReport {
    let mut report = VerificationReport::new("constant term: alternative statement vs recurrence");
    for parity in [Parity::Even, Parity::Odd] {
        for p in (3..=p_max).step_by(2) {
            for n in 0..=n_max {
                let printed = star_as_printed(parity, n, p).expect("odd p");
                let truth = expansion(parity, n, p).star.expect("odd p");
                report.push(Case::exact(format!("{parity:?} star n={n} p={p}"), &printed, &truth));
            }
        }
    }
    report
}
