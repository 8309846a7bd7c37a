//! Checks against the reference tables: column recomputation and full pipeline closure.

use std::fmt::Write as _;

use wallscale_core::tables::{check_row, diagnose, Explanation, RowCheck, TableRow, TABLE_ROWS};
use wallscale_core::{analyze_profile, generate, AnalysisOptions, ExplicitLaw, SynthSpec, VelocityProfile};

/// Agreement required between pipeline output and the exact values it was generated from.
pub const CLOSURE_TOL: f64 = 1e-6;

pub fn describe(e: &Explanation) -> String {
    match e {
        Explanation::ColumnsTransposed => "ln Re1 and ln Re2 columns transposed".into(),
        Explanation::ExponentRounding { alpha } => format!("alpha = {alpha:.5} rounds to the printed value and passes"),
        Explanation::PrefactorRounding { prefactor } => {
            format!("A = {prefactor:.4} rounds to the printed value and passes")
        }
        Explanation::PrintedMeanInconsistent { mean_of_columns } => {
            format!("printed ln Re differs from the column mean {mean_of_columns:.3}")
        }
    }
}

/// Noiseless profile following the row's `A` and `alpha` in region (I) and its `beta` beyond `ln eta = 7`.
pub fn regenerate(row: &TableRow) -> wallscale_core::Result<VelocityProfile> {
    let spec = SynthSpec {
        region1_override: Some(ExplicitLaw { prefactor: row.prefactor, alpha: row.alpha }),
        beta: row.beta.unwrap_or(row.alpha),
        label: row.figure.to_string(),
        re_theta: Some(row.re_theta),
        turbulence_level: row.turbulence_level,
        ..SynthSpec::default()
    };
    generate(&spec)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Closure {
    pub figure: &'static str,
    pub ok: bool,
    pub detail: String,
}

/// Regenerates the row, runs the full pipeline, and compares against values recomputed from the row.
pub fn closure(row: &'static TableRow) -> Closure {
    let rc = check_row(row).recomputed;
    let fail = |detail: String| Closure { figure: row.figure, ok: false, detail };
    let profile = match regenerate(row) {
        Ok(p) => p,
        Err(e) => return fail(format!("generate: {e}")),
    };
    let a = match analyze_profile(&profile, &AnalysisOptions::default()) {
        Ok(a) => a,
        Err(e) => return fail(e.to_string()),
    };
    let close = |x: f64, y: f64| (x - y).abs() <= CLOSURE_TOL * y.abs().max(1.0);
    let mut problems = Vec::new();
    if !close(a.alpha(), row.alpha) {
        problems.push(format!("alpha {} vs {}", a.alpha(), row.alpha));
    }
    if !close(a.prefactor(), row.prefactor) {
        problems.push(format!("A {} vs {}", a.prefactor(), row.prefactor));
    }
    let d = &a.diagnostics;
    for (name, got, want) in
        [("ln Re1", d.ln_re1, rc.ln_re1), ("ln Re2", d.ln_re2, rc.ln_re2), ("ln Re", d.ln_re_mean, rc.ln_re)]
    {
        if !close(got, want) {
            problems.push(format!("{name} {got} vs {want}"));
        }
    }
    if d.consistent != rc.consistent {
        problems.push(format!("consistency flag {} vs {}", d.consistent, rc.consistent));
    }
    let beta_expected = row.beta.filter(|&b| b != row.alpha);
    match (a.beta(), beta_expected) {
        (Some(got), Some(want)) if !close(got, want) => problems.push(format!("beta {got} vs {want}")),
        (Some(got), None) => problems.push(format!("spurious beta {got}")),
        (None, Some(want)) => problems.push(format!("beta {want} not recovered")),
        _ => {}
    }
    Closure { figure: row.figure, ok: problems.is_empty(), detail: problems.join("; ") }
}

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub checks: Vec<RowCheck>,
    pub closures: Vec<Closure>,
}

impl OracleReport {
    pub fn run() -> Self {
        OracleReport {
            checks: TABLE_ROWS.iter().map(check_row).collect(),
            closures: TABLE_ROWS.iter().map(closure).collect(),
        }
    }

    pub fn table_failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed()).count()
    }

    pub fn closure_failures(&self) -> usize {
        self.closures.iter().filter(|c| !c.ok).count()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<2}  {:<10}  {:>6}  {:>6}  {:>6}  {:>8}  {:>7}  {:<4}  closure",
            "T", "figure", "lnRe1", "lnRe2", "lnRe", "Re_th/Re", "discr", "cols"
        );
        for (c, cl) in self.checks.iter().zip(&self.closures) {
            let r = &c.recomputed;
            let _ = writeln!(
                out,
                "{:<2}  {:<10}  {:>6.2}  {:>6.2}  {:>6.2}  {:>8.2}  {:>7.4}  {:<4}  {}",
                c.row.table,
                c.row.figure,
                r.ln_re1,
                r.ln_re2,
                r.ln_re,
                r.re_theta_over_re,
                r.rel_discrepancy,
                if c.passed() { "ok" } else { "FAIL" },
                if cl.ok { "ok".to_string() } else { format!("FAIL {}", cl.detail) },
            );
            for e in diagnose(c.row) {
                let _ = writeln!(out, "      note: {}", describe(&e));
            }
        }
        let inconsistent: Vec<&str> =
            self.checks.iter().filter(|c| c.row.table == 1 && !c.recomputed.consistent).map(|c| c.row.figure).collect();
        let _ = writeln!(out, "table 1 rows beyond the consistency tolerance: {}", inconsistent.join(", "));
        let _ = writeln!(
            out,
            "{} rows, {} column mismatches, {} closure failures",
            self.checks.len(),
            self.table_failures(),
            self.closure_failures()
        );
        out
    }
}
