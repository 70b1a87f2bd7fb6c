//! Finite nested sums over nondecreasing index tuples, and the central-binomial
//! partial sums that feed the `c(n, 1)` family.

use crate::error::{domain, Result};
use crate::rational::{central_binomial, Rational};

/// Which family of nested sums: reciprocal squares of `k ≥ 1`, or of odd
/// numbers `2k+1` with `k ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SumKind {
    Even,
    Odd,
}

impl SumKind {
    fn weight(self, k: usize) -> Rational {
        match self {
            SumKind::Even if k == 0 => Rational::zero(),
            SumKind::Even => Rational::new(1, (k * k) as u64),
            SumKind::Odd => Rational::new(1, ((2 * k + 1) * (2 * k + 1)) as u64),
        }
    }
}

/// `values[j][n]` holds the depth-`j` nested sum with upper bound `n`.
///
/// Rows obey `values[j][n] = values[j][n-1] + w(n)·values[j-1][n]`, which is
/// the multiset (`≤`) recursion: the largest index is either `< n` or `= n`,
/// and in the latter case the remaining `j-1` indices range up to `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct NestedSumTable {
    kind: SumKind,
    values: Vec<Vec<Rational>>,
}

impl NestedSumTable {
    pub fn new(kind: SumKind, max_depth: usize, max_n: usize) -> Self {
        Self::with_base_row(kind, vec![Rational::one(); max_n + 1], max_depth)
    }

    /// Same recursion seeded with an arbitrary depth-0 row. Seeding with a
    /// tail sum `t(k)` yields `Σ_{k₁≤⋯≤k_j≤n} w(k₁)⋯w(k_j)·t(k₁)`, the tail
    /// being attached to the smallest index.
    pub fn with_base_row(kind: SumKind, base: Vec<Rational>, max_depth: usize) -> Self {
        let max_n = base.len().saturating_sub(1);
        let mut values = Vec::with_capacity(max_depth + 1);
        values.push(base);
        for j in 1..=max_depth {
            let prev = &values[j - 1];
            let mut row: Vec<Rational> = Vec::with_capacity(max_n + 1);
            for n in 0..=max_n {
                let carried = if n == 0 { Rational::zero() } else { row[n - 1].clone() };
                row.push(carried + kind.weight(n) * &prev[n]);
            }
            values.push(row);
        }
        NestedSumTable { kind, values }
    }

    pub fn kind(&self) -> SumKind {
        self.kind
    }

    pub fn max_depth(&self) -> usize {
        self.values.len() - 1
    }

    pub fn max_n(&self) -> usize {
        self.values[0].len() - 1
    }

    /// Panics if `(j, n)` lies outside the table.
    pub fn get(&self, j: usize, n: usize) -> &Rational {
        &self.values[j][n]
    }

    pub fn row(&self, j: usize) -> &[Rational] {
        &self.values[j]
    }
}

/// Depth-`j` nested sum with bound `n`:
/// even: `Σ_{1≤k₁≤⋯≤k_j≤n} Π 1/k_i²`, odd: `Σ_{0≤k₁≤⋯≤k_j≤n} Π 1/(2k_i+1)²`.
pub fn nested_sum(kind: SumKind, j: usize, n: usize) -> Rational {
    NestedSumTable::new(kind, j, n).get(j, n).clone()
}

/// Exact partial sums of the central-binomial series:
/// even: `Σ_{k=1}^{m} 2^{2k} / (k² C(2k,k))`, odd: `Σ_{k=0}^{m} C(2k,k) / (2^{2k}(2k+1))`.
pub fn central_tail(kind: SumKind, m: usize) -> Result<Rational> {
    if kind == SumKind::Even && m == 0 {
        return Err(domain("m", m, "m ≥ 1 (the even sum starts at k = 1)"));
    }
    Ok(central_tail_row(kind, m).pop().expect("non-empty"))
}

/// All partial sums `central_tail(kind, k)` for `k = 0..=m`; the even row
/// starts with the empty sum 0 at `k = 0`.
pub fn central_tail_row(kind: SumKind, m: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(m + 1);
    let mut acc = Rational::zero();
    for k in 0..=m {
        let c = Rational::from_integer(central_binomial(k as u64));
        let p = Rational::pow2(2 * k as i64);
        let term = match kind {
            SumKind::Even if k == 0 => Rational::zero(),
            SumKind::Even => p / (c * Rational::from((k * k) as i64)),
            SumKind::Odd => c / (p * Rational::from(2 * k as i64 + 1)),
        };
        acc += term;
        out.push(acc.clone());
    }
    out
}

/// Floating-point value of the same partial sum, for bounds where the exact
/// denominators become unmanageable (`m` in the millions).
///
/// Terms are generated by their exact ratio and accumulated with Neumaier
/// compensated summation.
pub fn central_tail_value(kind: SumKind, m: usize) -> Result<f64> {
    if kind == SumKind::Even && m == 0 {
        return Err(domain("m", m, "m ≥ 1 (the even sum starts at k = 1)"));
    }
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut add = |x: f64| {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    };
    match kind {
        SumKind::Even => {
            // t_1 = 2, t_{k+1}/t_k = 2k² / ((k+1)(2k+1))
            let mut t = 2.0f64;
            for k in 1..=m {
                add(t);
                let kf = k as f64;
                t *= 2.0 * kf * kf / ((kf + 1.0) * (2.0 * kf + 1.0));
            }
        }
        SumKind::Odd => {
            // c_k = C(2k,k)/4^k, c_{k+1}/c_k = (2k+1)/(2k+2)
            let mut c = 1.0f64;
            for k in 0..=m {
                let kf = k as f64;
                add(c / (2.0 * kf + 1.0));
                c *= (2.0 * kf + 1.0) / (2.0 * kf + 2.0);
            }
        }
    }
    Ok(sum + comp)
}
