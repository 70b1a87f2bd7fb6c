//! Rows of classical table entries, each recomputed here and checked against
//! quadrature.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::half_line::{gr_822_1, halfline_power, linear_phase, TrigKind};
use crate::pipoly::PiPoly;
use crate::quadrature::{integrate_halfline_osc, OscillatorySpec};
use crate::rational::Rational;
use crate::recurrence::CompleteIntegrals;
use crate::verify::complete_oracle;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrEntry {
    /// `∫₀^{π/2} cos^{2n}x dx`
    G3_621_3,
    /// `∫₀^{π/2} cos^{2n+1}x dx`
    G3_621_4,
    /// `∫₀^{π/2} xᵖ cos x dx`
    G3_761_11,
    /// `∫₀^{π/2} x cosⁿx dx`
    G3_821_3,
    /// `∫₀^∞ cos^{2n+1}x / √x dx`, binomial-sum form
    G3_822_1,
    /// `∫₀^∞ cos^{2n+1}x / √x dx`, Γ form
    G3_822_2,
    /// `∫₀^∞ sin^{2n+1}x / √x dx`
    G3_821_14,
    /// `∫₀^∞ x^{-p} cos(ax+b) dx`
    G3_764_1,
    /// `∫₀^∞ x^{-p} sin(ax+b) dx`
    G3_764_2,
}

pub const ALL_ENTRIES: [GrEntry; 9] = [
    GrEntry::G3_621_3,
    GrEntry::G3_621_4,
    GrEntry::G3_761_11,
    GrEntry::G3_821_3,
    GrEntry::G3_822_1,
    GrEntry::G3_822_2,
    GrEntry::G3_821_14,
    GrEntry::G3_764_1,
    GrEntry::G3_764_2,
];

impl GrEntry {
    pub fn code(self) -> &'static str {
        match self {
            GrEntry::G3_621_3 => "3.621.3",
            GrEntry::G3_621_4 => "3.621.4",
            GrEntry::G3_761_11 => "3.761.11",
            GrEntry::G3_821_3 => "3.821.3",
            GrEntry::G3_822_1 => "3.822.1",
            GrEntry::G3_822_2 => "3.822.2",
            GrEntry::G3_821_14 => "3.821.14",
            GrEntry::G3_764_1 => "3.764.1",
            GrEntry::G3_764_2 => "3.764.2",
        }
    }

    /// What the row index runs over.
    pub fn index_name(self) -> &'static str {
        match self {
            GrEntry::G3_761_11 => "p",
            GrEntry::G3_764_1 | GrEntry::G3_764_2 => "a",
            _ => "n",
        }
    }

    pub fn integral(self) -> &'static str {
        match self {
            GrEntry::G3_621_3 => "∫₀^{π/2} cos^{2n}x dx",
            GrEntry::G3_621_4 => "∫₀^{π/2} cos^{2n+1}x dx",
            GrEntry::G3_761_11 => "∫₀^{π/2} x^p cos x dx",
            GrEntry::G3_821_3 => "∫₀^{π/2} x cos^n x dx",
            GrEntry::G3_822_1 | GrEntry::G3_822_2 => "∫₀^∞ cos^{2n+1}x / √x dx",
            GrEntry::G3_821_14 => "∫₀^∞ sin^{2n+1}x / √x dx",
            GrEntry::G3_764_1 => "∫₀^∞ x^{-p} cos(ax+b) dx",
            GrEntry::G3_764_2 => "∫₀^∞ x^{-p} sin(ax+b) dx",
        }
    }

    fn is_complete(self) -> bool {
        matches!(self, GrEntry::G3_621_3 | GrEntry::G3_621_4 | GrEntry::G3_761_11 | GrEntry::G3_821_3)
    }

    pub fn default_tol(self) -> f64 {
        if self.is_complete() {
            1e-10
        } else {
            1e-6
        }
    }
}

impl fmt::Display for GrEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for GrEntry {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        ALL_ENTRIES
            .iter()
            .copied()
            .find(|e| e.code() == s)
            .ok_or_else(|| format!("unknown table entry `{s}`"))
    }
}

/// Extra parameters for the linear-phase entries.
#[derive(Clone, Debug)]
pub struct RowParams {
    pub p: Rational,
    pub b: f64,
    pub digits: u32,
    pub tol: Option<f64>,
}

impl Default for RowParams {
    fn default() -> Self {
        RowParams {
            p: Rational::new(1, 2),
            b: 0.0,
            digits: 20,
            tol: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GrRow {
    pub entry: GrEntry,
    pub index: u32,
    pub exact: Option<PiPoly>,
    pub exact_json: Value,
    pub value: String,
    pub value_f64: f64,
    pub oracle: f64,
    pub verified: bool,
}

impl GrRow {
    pub fn exact_plain(&self) -> String {
        self.exact.as_ref().map(PiPoly::render_plain).unwrap_or_else(|| "-".into())
    }

    /// `{"integral", "params", "exact", "float", "verified"}`
    pub fn to_json(&self, params: &RowParams) -> Value {
        let mut p = json!({ self.entry.index_name(): self.index });
        if matches!(self.entry, GrEntry::G3_764_1 | GrEntry::G3_764_2) {
            p["p"] = json!(params.p.to_fraction_string());
            p["b"] = json!(params.b);
        }
        json!({
            "integral": format!("gr:{}", self.entry.code()),
            "params": p,
            "exact": self.exact_json,
            "float": self.value,
            "verified": self.verified,
        })
    }
}

fn osc(kind: TrigKind, n: u32, p: f64, b: f64, tol: f64) -> Result<f64> {
    Ok(integrate_halfline_osc(&OscillatorySpec::new(kind, n, p, b).with_tol(tol))?.value)
}

pub fn gr_rows(entry: GrEntry, from: u32, to: u32, params: &RowParams) -> Result<Vec<GrRow>> {
    let tol = params.tol.unwrap_or(entry.default_tol());
    let d = params.digits;
    let mut ev = CompleteIntegrals::new();
    let half = Rational::new(1, 2);
    let mut rows = Vec::new();
    for i in from..=to {
        let (exact, exact_json, value, oracle) = match entry {
            GrEntry::G3_621_3 | GrEntry::G3_621_4 | GrEntry::G3_761_11 | GrEntry::G3_821_3 => {
                let (n, p) = match entry {
                    GrEntry::G3_621_3 => (2 * i, 0),
                    GrEntry::G3_621_4 => (2 * i + 1, 0),
                    GrEntry::G3_761_11 => (1, i),
                    _ => (i, 1),
                };
                let c = ev.cos(n, p);
                let v = c.eval(d);
                let json = c.to_json();
                (Some(c), json, v, complete_oracle(TrigKind::Cos, n, p))
            }
            GrEntry::G3_822_1 => {
                let g = gr_822_1(i, d)?;
                let ok = g.matches_halfline;
                let o = if ok { osc(TrigKind::Cos, i, 0.5, 0.0, tol)? } else { f64::NAN };
                (None, g.form.to_json(), g.value, o)
            }
            GrEntry::G3_822_2 | GrEntry::G3_821_14 => {
                let kind = if entry == GrEntry::G3_822_2 { TrigKind::Cos } else { TrigKind::Sin };
                let h = halfline_power(kind, i, &half, 0.0, d)?;
                (None, h.form.to_json(), h.value, osc(kind, i, 0.5, 0.0, tol)?)
            }
            GrEntry::G3_764_1 | GrEntry::G3_764_2 => {
                let kind = if entry == GrEntry::G3_764_1 { TrigKind::Cos } else { TrigKind::Sin };
                let a = i.max(1) as f64;
                let v = linear_phase(kind, a, params.b, &params.p, d)?;
                let spec = OscillatorySpec::new(kind, 0, params.p.to_f64(), params.b).with_frequency(a).with_tol(tol);
                (None, Value::Null, v, integrate_halfline_osc(&spec)?.value)
            }
        };
        let value_f64 = value.to_f64();
        rows.push(GrRow {
            entry,
            index: if matches!(entry, GrEntry::G3_764_1 | GrEntry::G3_764_2) { i.max(1) } else { i },
            exact,
            exact_json,
            value: value.to_decimal_string(d),
            value_f64,
            oracle,
            verified: (value_f64 - oracle).abs() <= tol,
        });
    }
    Ok(rows)
}

pub fn render_markdown(entry: GrEntry, rows: &[GrRow]) -> String {
    let mut out = format!("### {}: {}\n\n", entry.code(), entry.integral());
    out.push_str(&format!("| {} | exact | value | quadrature | verified |\n", entry.index_name()));
    out.push_str("|---|---|---|---|---|\n");
    for r in rows {
        out.push_str(&format!(
            "| {} | {} | {} | {:.15e} | {} |\n",
            r.index,
            r.exact_plain(),
            r.value,
            r.oracle,
            if r.verified { "yes" } else { "no" }
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_codes() {
        for e in ALL_ENTRIES {
            assert_eq!(e.code().parse::<GrEntry>().unwrap(), e);
        }
        assert!("3.999.1".parse::<GrEntry>().is_err());
    }

    #[test]
    fn every_entry_verifies() {
        let params = RowParams::default();
        for e in ALL_ENTRIES {
            let rows = gr_rows(e, 0, 3, &params).unwrap();
            assert_eq!(rows.len(), 4);
            for r in &rows {
                assert!(r.verified, "{} row {}: {} vs {}", e, r.index, r.value, r.oracle);
            }
        }
    }

    #[test]
    fn wallis_rows_are_exact() {
        let rows = gr_rows(GrEntry::G3_621_3, 0, 2, &RowParams::default()).unwrap();
        assert_eq!(rows[1].exact_plain(), "π/4");
        assert_eq!(rows[2].exact_plain(), "3π/16");
        let md = render_markdown(GrEntry::G3_621_3, &rows);
        assert!(md.contains("| 2 | 3π/16 |"));
        let j = rows[1].to_json(&RowParams::default());
        assert_eq!(j["integral"], "gr:3.621.3");
        assert_eq!(j["params"]["n"], 1);
        assert_eq!(j["verified"], true);
    }
}
