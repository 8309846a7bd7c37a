use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wallscale::format::{write_profile, ProfileFormat};
use wallscale::oracle::{regenerate, OracleReport};
use wallscale::report::{
    analyze, batch, emit_plotdata, envelope_table, file_stem, render_table, write_atomic, AlphaSourceTag, Cutoffs,
    EXIT_FIT, EXIT_IO, EXIT_ORACLE_MISMATCH, EXIT_PARSE,
};
use wallscale::synthspec::parse_synth_spec;
use wallscale_core::scaling_model::{DEFAULT_ENVELOPE_BRACKET, DEFAULT_ENVELOPE_RANGE};
use wallscale_core::tables::TABLE_ROWS;
use wallscale_core::{envelope_line_fit, generate_ensemble, LogLawParams};

#[derive(Parser)]
#[command(name = "wallscale", version, about = "Power-law scaling analysis of turbulent boundary-layer profiles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyse one profile file.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        opts: AnalysisArgs,
        /// Print the JSON report instead of the table.
        #[arg(long)]
        json: bool,
    },
    /// Analyse every file in a directory and print a summary table.
    Batch {
        dir: PathBuf,
        #[command(flatten)]
        opts: AnalysisArgs,
    },
    /// Generate synthetic profiles from a spec file.
    Synth {
        spec: PathBuf,
        /// Output file (one realization) or directory (several); stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Number of realizations with consecutive seeds.
        #[arg(long, default_value_t = 1)]
        realizations: usize,
    },
    /// Tabulate the envelope of the power-law family and fit a log law to it.
    Envelope {
        #[arg(long, default_value_t = DEFAULT_ENVELOPE_RANGE.0)]
        from: f64,
        #[arg(long, default_value_t = DEFAULT_ENVELOPE_RANGE.1)]
        to: f64,
        #[arg(long, default_value_t = 50)]
        points: usize,
        /// Write envelope.dat here instead of printing the table.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Recompute the reference table columns and close the loop through the pipeline.
    Oracle {
        /// Also write one regenerated profile per table row into this directory.
        #[arg(long)]
        emit_profiles: Option<PathBuf>,
    },
}

#[derive(Args)]
struct AnalysisArgs {
    #[arg(long, value_enum, default_value_t = ProfileFormat::WallUnits)]
    format: ProfileFormat,
    /// Write the JSON report and plot data files here.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Lower cutoff on lg(eta).
    #[arg(long)]
    lg_eta_min: Option<f64>,
    /// Relative tolerance of the outer-plateau detector.
    #[arg(long, conflicts_with = "no_plateau")]
    plateau_tol: Option<f64>,
    /// Keep outer-plateau samples.
    #[arg(long)]
    no_plateau: bool,
    /// Minimum samples per fitted region.
    #[arg(long)]
    min_segment: Option<usize>,
    /// Standard errors separating two exponents before region II is reported.
    #[arg(long)]
    break_z: Option<f64>,
    /// Relative ln Re discrepancy still flagged consistent.
    #[arg(long)]
    consistency_tol: Option<f64>,
    /// Mean shift still classed as collapsed.
    #[arg(long)]
    shift_tol: Option<f64>,
    #[arg(long, value_enum)]
    alpha_source: Option<AlphaSourceTag>,
}

impl AnalysisArgs {
    fn cutoffs(&self) -> Cutoffs {
        let mut c = Cutoffs::default();
        if let Some(v) = self.lg_eta_min {
            c.lg_eta_min = v;
        }
        if self.no_plateau {
            c.plateau_tol = None;
        } else if let Some(v) = self.plateau_tol {
            c.plateau_tol = Some(v);
        }
        if let Some(v) = self.min_segment {
            c.min_segment = v;
        }
        if let Some(v) = self.break_z {
            c.break_z = v;
        }
        if let Some(v) = self.consistency_tol {
            c.consistency_tol = v;
        }
        if let Some(v) = self.shift_tol {
            c.shift_tol = v;
        }
        if let Some(v) = self.alpha_source {
            c.alpha_source = v;
        }
        c
    }
}

fn fail(code: i32, msg: impl std::fmt::Display) -> i32 {
    eprintln!("wallscale: {msg}");
    code
}

fn run_analyze(file: &Path, opts: &AnalysisArgs, json: bool) -> i32 {
    let out = match analyze(file, opts.format, opts.cutoffs()) {
        Ok(o) => o,
        Err(e) => return fail(e.exit_code(), format!("{}: {e}", file.display())),
    };
    if let Some(dir) = &opts.out_dir {
        if let Err(e) = emit_plotdata(dir, &file_stem(file), &out) {
            return fail(EXIT_IO, format!("{}: {e}", dir.display()));
        }
    }
    if json {
        print!("{}", out.report.to_json());
    } else {
        print!("{}", render_table(std::slice::from_ref(&out.report)));
    }
    0
}

fn run_batch(dir: &Path, opts: &AnalysisArgs) -> i32 {
    match batch(dir, opts.format, opts.cutoffs(), opts.out_dir.as_deref()) {
        Ok(outcome) => {
            print!("{}", outcome.summary());
            outcome.exit_code()
        }
        Err(e) => fail(EXIT_IO, e),
    }
}

fn run_synth(spec_path: &Path, out: Option<&Path>, realizations: usize) -> i32 {
    let text = match fs::read_to_string(spec_path) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_IO, format!("{}: {e}", spec_path.display())),
    };
    let spec = match parse_synth_spec(&text) {
        Ok(s) => s,
        Err(e) => return fail(EXIT_PARSE, format!("{}: {e}", spec_path.display())),
    };
    let profiles = match generate_ensemble(&spec, realizations) {
        Ok(p) => p,
        Err(e) => return fail(EXIT_PARSE, format!("{}: {e}", spec_path.display())),
    };
    let written = match (out, profiles.as_slice()) {
        (None, _) => {
            for p in &profiles {
                print!("{}", write_profile(p));
            }
            Ok(())
        }
        (Some(path), [single]) => write_atomic(path, &write_profile(single)),
        (Some(dir), many) => fs::create_dir_all(dir).and_then(|_| {
            many.iter().enumerate().try_for_each(|(k, p)| {
                write_atomic(&dir.join(format!("{}_{:04}.dat", spec.label, k)), &write_profile(p))
            })
        }),
    };
    match written {
        Ok(()) => 0,
        Err(e) => fail(EXIT_IO, e),
    }
}

fn run_envelope(from: f64, to: f64, points: usize, out_dir: Option<&Path>) -> i32 {
    let table = match envelope_table((from, to), points, DEFAULT_ENVELOPE_BRACKET) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_FIT, e),
    };
    let fit = match envelope_line_fit((from, to), points, DEFAULT_ENVELOPE_BRACKET) {
        Ok(f) => f,
        Err(e) => return fail(EXIT_FIT, e),
    };
    match out_dir {
        Some(dir) => {
            if let Err(e) = fs::create_dir_all(dir).and_then(|_| write_atomic(&dir.join("envelope.dat"), &table)) {
                return fail(EXIT_IO, e);
            }
        }
        None => print!("{table}"),
    }
    let classical = LogLawParams::CLASSICAL;
    println!(
        "# envelope fit: kappa = {:.4}, C = {:.3} (classical kappa = {}, C = {})",
        fit.kappa, fit.c_offset, classical.kappa, classical.c_offset
    );
    0
}

fn run_oracle(emit: Option<&Path>) -> i32 {
    if let Some(dir) = emit {
        if let Err(e) = fs::create_dir_all(dir) {
            return fail(EXIT_IO, e);
        }
        for row in TABLE_ROWS.iter() {
            let profile = match regenerate(row) {
                Ok(p) => p,
                Err(e) => return fail(EXIT_FIT, format!("{}: {e}", row.figure)),
            };
            let name: String = row.figure.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
            let path = dir.join(format!("t{}_{}.dat", row.table, name.trim_end_matches('_')));
            if let Err(e) = write_atomic(&path, &write_profile(&profile)) {
                return fail(EXIT_IO, e);
            }
        }
    }
    let report = OracleReport::run();
    print!("{}", report.render());
    if report.table_failures() + report.closure_failures() == 0 {
        0
    } else {
        EXIT_ORACLE_MISMATCH
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Analyze { file, opts, json } => run_analyze(file, opts, *json),
        Command::Batch { dir, opts } => run_batch(dir, opts),
        Command::Synth { spec, out, realizations } => run_synth(spec, out.as_deref(), *realizations),
        Command::Envelope { from, to, points, out_dir } => run_envelope(*from, *to, *points, out_dir.as_deref()),
        Command::Oracle { emit_profiles } => run_oracle(emit_profiles.as_deref()),
    };
    ExitCode::from(code as u8)
}
