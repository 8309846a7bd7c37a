//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wallscale::format::{parse_profile, write_profile, ProfileFormat};
use wallscale_core::profile::Selection;
use wallscale_core::reynolds_diag::{classify_mean_shift, DEFAULT_SHIFT_TOL};
use wallscale_core::scaling_model::{envelope_curve, DEFAULT_ENVELOPE_BRACKET};
use wallscale_core::tables::{check_all, diagnose, rows_of_table};
use wallscale_core::{
    alpha_of_ln_re, analyze_profile, build_universal_series, envelope_at, envelope_line_fit, generate,
    generate_ensemble, psi_transform, scaling_law_phi, AnalysisOptions, LogLawParams, ShiftClass, SynthSpec,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);
type RunOutput = (Vec<u8>, Vec<(String, Vec<u8>)>);

fn table_oracle() -> Outcome {
    let checks = check_all();
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| {
            let mut cols = Vec::new();
            if !c.ln_re1_ok {
                cols.push("lnRe1");
            }
            if !c.ln_re2_ok {
                cols.push("lnRe2");
            }
            if !c.ln_re_ok {
                cols.push("lnRe");
            }
            if !c.ratio_ok {
                cols.push("Re_th/Re");
            }
            let notes: Vec<String> = diagnose(c.row).iter().map(wallscale::oracle::describe).collect();
            format!("{} [{}] ({})", c.row.figure, cols.join(","), notes.join("; "))
        })
        .collect();
    if failed.is_empty() {
        Ok(format!("{} rows within tolerance", checks.len()))
    } else {
        Err(format!("{}/{} rows outside tolerance: {}", failed.len(), checks.len(), failed.join(" | ")))
    }
}

fn consistency_calibration() -> Outcome {
    let over: Vec<(&str, f64)> = check_all()
        .iter()
        .filter(|c| c.row.table == 1 && !c.recomputed.consistent)
        .map(|c| (c.row.figure, c.recomputed.rel_discrepancy))
        .collect();
    let names: Vec<&str> = over.iter().map(|o| o.0).collect();
    let detail = over.iter().map(|(f, d)| format!("{f} {:.1}%", 100.0 * d)).collect::<Vec<_>>().join(", ");
    let n1 = rows_of_table(1).count();
    if names == ["Fig.4(a)", "Fig.4(c)"] {
        Ok(format!("{} of {n1} table 1 rows exceed 3%: {detail}", over.len()))
    } else {
        Err(format!("expected Fig.4(a), Fig.4(c); got {detail}"))
    }
}

fn exact_inverse() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let ln_eta: f64 = rng.random_range(0.0..15.0);
        let l: f64 = rng.random_range(4.0..20.0);
        let phi = scaling_law_phi(ln_eta.exp(), l).map_err(|e| e.to_string())?;
        let psi = psi_transform(phi, 1.5 / l).map_err(|e| e.to_string())?;
        worst = worst.max((psi - ln_eta).abs());
    }
    if worst <= 1e-10 {
        Ok(format!("1000 pairs, max |psi - ln eta| = {worst:.2e}"))
    } else {
        Err(format!("max |psi - ln eta| = {worst:.2e}"))
    }
}

fn close(got: f64, want: f64, tol: f64) -> bool {
    (got - want).abs() <= tol * want.abs().max(1.0)
}

fn fit_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for k in 0..20 {
        let ln_re: f64 = rng.random_range(8.0..16.0);
        let alpha = alpha_of_ln_re(ln_re).unwrap();
        let beta = loop {
            let b: f64 = rng.random_range(0.12..0.30);
            if (b - alpha).abs() > 0.02 {
                break b;
            }
        };
        let n_points = rng.random_range(30..=60);
        let range = (rng.random_range(3.5..4.5), rng.random_range(9.0..12.0));
        let split = rng.random_range(6..=n_points - 6);
        let base =
            SynthSpec { ln_re, beta, ln_eta_range: range, n_points, label: format!("r{k}"), ..Default::default() };
        let break_ln_eta = 0.5 * (base.ln_eta_at(split - 1) + base.ln_eta_at(split));
        let spec = SynthSpec { break_ln_eta, ..base };
        let law = spec.region1_law().unwrap();
        let b_true = spec.region2_prefactor().unwrap();
        let p = generate(&spec).map_err(|e| e.to_string())?;
        let a = analyze_profile(&p, &AnalysisOptions::default()).map_err(|e| format!("spec {k}: {e}"))?;
        let ok = a.fit.split_index == split
            && close(a.prefactor(), law.prefactor, 1e-9)
            && close(a.alpha(), law.alpha, 1e-9)
            && a.beta().is_some_and(|b| close(b, beta, 1e-9))
            && a.region2_prefactor().is_some_and(|b| close(b, b_true, 1e-9));
        if !ok {
            return Err(format!(
                "spec {k}: split {} vs {split}, A {} vs {}, alpha {} vs {}, beta {:?} vs {beta}",
                a.fit.split_index,
                a.prefactor(),
                law.prefactor,
                a.alpha(),
                law.alpha,
                a.beta()
            ));
        }
    }

    let spec = SynthSpec {
        ln_re: 10.0,
        beta: 0.20,
        break_ln_eta: 10.5,
        ln_eta_range: (3.5, 17.5),
        n_points: 40,
        noise_sigma: 0.01,
        seed: 1,
        ..SynthSpec::default()
    };
    let truth = alpha_of_ln_re(spec.ln_re).unwrap();
    let true_split = spec.region1_count();
    let opts =
        AnalysisOptions { selection: Selection { plateau_tol: None, ..Selection::default() }, ..Default::default() };
    let mut hits = 0;
    for p in generate_ensemble(&spec, 100).map_err(|e| e.to_string())? {
        if let Ok(a) = analyze_profile(&p, &opts) {
            if (a.alpha() - truth).abs() <= 0.005 && a.fit.split_index.abs_diff(true_split) <= 2 {
                hits += 1;
            }
        }
    }
    let msg = format!("20 noiseless specs exact; noisy runs within tolerance {hits}/100");
    if hits >= 95 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn envelope_vs_log_law() -> Outcome {
    let fit = envelope_line_fit((5.0, 10.0), 101, DEFAULT_ENVELOPE_BRACKET).map_err(|e| e.to_string())?;
    let curve = envelope_curve((5.0, 10.0), 101, DEFAULT_ENVELOPE_BRACKET).map_err(|e| e.to_string())?;
    let dev = curve
        .iter()
        .map(|p| (p.phi_env - LogLawParams::CLASSICAL.phi_at_ln_eta(p.ln_eta)).abs() / p.phi_env)
        .fold(0.0f64, f64::max);
    let at5 = envelope_at(5.0, DEFAULT_ENVELOPE_BRACKET).map_err(|e| e.to_string())?.phi_env;
    let at8 = envelope_at(8.0, DEFAULT_ENVELOPE_BRACKET).map_err(|e| e.to_string())?.phi_env;
    let msg = format!(
        "kappa = {:.4}, C = {:.3}, max rel deviation {:.4}, phi_env(5) = {at5:.2}, phi_env(8) = {at8:.2}",
        fit.kappa, fit.c_offset, dev
    );
    let ok = (0.36..=0.44).contains(&fit.kappa)
        && (4.6..=5.6).contains(&fit.c_offset)
        && dev < 0.02
        && (at5 - 17.5).abs() < 0.05
        && (at8 - 24.8).abs() < 0.05;
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn shift_diagnostics() -> Outcome {
    let mut parts = Vec::new();
    for (s, want) in [(0.0, ShiftClass::Collapsed), (0.3, ShiftClass::ShiftedBelow), (1.0, ShiftClass::ShiftedBelow)] {
        let spec = SynthSpec { ln_re: 11.0, shift: s, ..SynthSpec::default() };
        let alpha = alpha_of_ln_re(spec.ln_re).unwrap();
        let p = generate(&spec).map_err(|e| e.to_string())?;
        let a = analyze_profile(&p, &AnalysisOptions::default()).map_err(|e| e.to_string())?;
        let region1 = &a.selected.samples()[..a.fit.split_index];
        let series = build_universal_series(region1, alpha).map_err(|e| e.to_string())?;
        let class = classify_mean_shift(series.mean_shift, DEFAULT_SHIFT_TOL);
        parts.push(format!("s={s}: {:.7} {}", series.mean_shift, class.as_str()));
        if (series.mean_shift - s).abs() > 1e-6 || class != want {
            return Err(parts.join(", "));
        }
    }
    Ok(parts.join(", "))
}

fn region2_degradation() -> Outcome {
    let mut shown = Vec::new();
    for ln_re in [9.0, 10.9, 13.0] {
        let alpha = alpha_of_ln_re(ln_re).unwrap();
        let spec = SynthSpec { ln_re, beta: alpha, ..SynthSpec::default() };
        let p = generate(&spec).map_err(|e| e.to_string())?;
        let out = wallscale::report::analyze_loaded(p, Default::default()).map_err(|e| e.to_string())?;
        if out.report.beta.is_some() || out.report.region2_prefactor.is_some() {
            return Err(format!("ln Re {ln_re}: beta reported as {:?}", out.report.beta));
        }
        shown.push(format!("ln Re {ln_re}: beta --"));
    }
    Ok(shown.join(", "))
}

fn run_analyze(bin: &str, file: &Path, out_dir: &Path) -> Result<RunOutput, String> {
    let out = Command::new(bin)
        .arg("analyze")
        .arg(file)
        .arg("--json")
        .arg("--out-dir")
        .arg(out_dir)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(String::from_utf8_lossy(&out.stderr).into_owned());
    }
    let mut files = Vec::new();
    for entry in fs::read_dir(out_dir).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        files.push((name, fs::read(&path).map_err(|e| e.to_string())?));
    }
    files.sort();
    Ok((out.stdout, files))
}

fn determinism_and_format() -> Outcome {
    let spec =
        SynthSpec { noise_sigma: 0.01, seed: 42, plateau_points: 3, re_theta: Some(4850.0), ..Default::default() };
    let p = generate(&spec).map_err(|e| e.to_string())?;
    let text = write_profile(&p);
    let back = parse_profile(&text, ProfileFormat::WallUnits).map_err(|e| e.to_string())?;
    let exact = back.metadata() == p.metadata()
        && back.len() == p.len()
        && back
            .samples()
            .iter()
            .zip(p.samples())
            .all(|(a, b)| a.eta.to_bits() == b.eta.to_bits() && a.phi.to_bits() == b.phi.to_bits());
    if !exact {
        return Err("wall_units write/load round trip is not bit-exact".into());
    }

    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let file = tmp.path().join("profile.dat");
    fs::write(&file, &text).map_err(|e| e.to_string())?;
    let bin = env!("CARGO_BIN_EXE_wallscale");
    let first = run_analyze(bin, &file, &tmp.path().join("run1"))?;
    let second = run_analyze(bin, &file, &tmp.path().join("run2"))?;
    if first != second {
        return Err("repeated analyze runs differ".into());
    }
    Ok(format!("round trip bit-exact; two analyze runs identical (stdout + {} files)", first.1.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("table oracle", table_oracle),
        ("consistency calibration", consistency_calibration),
        ("exact inverse", exact_inverse),
        ("fit round trip", fit_round_trip),
        ("envelope vs log law", envelope_vs_log_law),
        ("shift diagnostics", shift_diagnostics),
        ("region II degradation", region2_degradation),
        ("determinism and format", determinism_and_format),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} {name}: PASS {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
