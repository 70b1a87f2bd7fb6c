//! Structured pass/fail records for identity checks and numeric sweeps.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::pipoly::PiPoly;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub id: String,
    /// Exact value rendered as text, when the case has one.
    pub exact: Option<String>,
    pub numeric: f64,
    pub oracle: f64,
    pub abs_err: f64,
    pub tol: f64,
    pub pass: bool,
}

impl Case {
    /// Numeric comparison: passes when `|numeric - oracle| ≤ tol`.
    pub fn numeric(id: impl Into<String>, numeric: f64, oracle: f64, tol: f64) -> Self {
        let abs_err = (numeric - oracle).abs();
        Case {
            id: id.into(),
            exact: None,
            numeric,
            oracle,
            abs_err,
            tol,
            pass: abs_err <= tol,
        }
    }

    /// Same, with an exact value attached for display.
    pub fn with_exact(mut self, exact: impl Into<String>) -> Self {
        self.exact = Some(exact.into());
        self
    }

    /// Exact equality of two rationals; the tolerance is zero.
    pub fn exact(id: impl Into<String>, lhs: &Rational, rhs: &Rational) -> Self {
        let diff = lhs - rhs;
        Self::exact_diff(id, lhs.to_string(), lhs.to_f64(), rhs.to_f64(), diff.is_zero(), diff.to_f64())
    }

    /// Exact equality of two π-polynomials.
    pub fn exact_poly(id: impl Into<String>, lhs: &PiPoly, rhs: &PiPoly) -> Self {
        let diff = lhs - rhs;
        Self::exact_diff(id, lhs.render_plain(), lhs.to_f64(), rhs.to_f64(), diff.is_zero(), diff.to_f64())
    }

    fn exact_diff(id: impl Into<String>, shown: String, l: f64, r: f64, equal: bool, diff: f64) -> Self {
        let abs_err = if equal {
            0.0
        } else {
            // A nonzero exact difference must never read as an exact match.
            diff.abs().max(f64::MIN_POSITIVE)
        };
        Case {
            id: id.into(),
            exact: Some(shown),
            numeric: l,
            oracle: r,
            abs_err,
            tol: 0.0,
            pass: equal,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub title: String,
    pub cases: Vec<Case>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(title: impl Into<String>) -> Self {
        VerificationReport {
            title: title.into(),
            cases: Vec::new(),
            summary: Summary::default(),
        }
    }

    pub fn push(&mut self, case: Case) {
        self.summary.total += 1;
        if case.pass {
            self.summary.passed += 1;
        } else {
            self.summary.failed += 1;
        }
        self.cases.push(case);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        for c in other.cases {
            self.push(c);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        for c in &self.cases {
            writeln!(
                f,
                "  [{}] {:<28} value={:<24.16e} oracle={:<24.16e} err={:.3e} tol={:.1e}",
                if c.pass { "ok" } else { "FAIL" },
                c.id,
                c.numeric,
                c.oracle,
                c.abs_err,
                c.tol
            )?;
        }
        write!(
            f,
            "  {} cases, {} passed, {} failed",
            self.summary.total, self.summary.passed, self.summary.failed
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_exact_difference_is_not_zero() {
        let a = Rational::one();
        let b = Rational::one() + Rational::pow2(-2000);
        let c = Case::exact("tiny", &a, &b);
        assert!(!c.pass);
        assert!(c.abs_err > 0.0);
    }

    #[test]
    fn summary_counts() {
        let mut r = VerificationReport::new("t");
        r.push(Case::numeric("a", 1.0, 1.0 + 1e-12, 1e-10));
        r.push(Case::numeric("b", 1.0, 2.0, 1e-10));
        assert_eq!(r.summary, Summary { total: 2, passed: 1, failed: 1 });
        assert!(!r.all_passed());
        assert_eq!(r.failures().count(), 1);
        let json = r.to_json();
        assert_eq!(json["summary"]["failed"], 1);
        assert!(r.to_string().contains("FAIL"));
    }
}
