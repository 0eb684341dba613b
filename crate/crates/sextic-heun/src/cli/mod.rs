//! Command-line surface: branch-curve datasets, per-level spectra, sampled
//! wavefunctions, and the self-verification suites. All numeric output is
//! emitted through [`OutputRecord`] with a fixed 17-significant-digit float
//! format, so identical flags produce byte-identical files.

pub mod verify;

use crate::heun_core::{
    expansion_coefficients, map_potential, v_m2_for_level, BranchChoice, PhysicalConstants,
    Potential,
};
use crate::oracle::{ode_residual, RadialGrid};
use crate::specfun::EvalPolicy;
use crate::spectrum::{
    approx_n0, approx_n1_neg, approx_n1_pos, assemble_wavefunction, energies_for_level, trace_curve,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::path::PathBuf;

/// A finished table: schema header plus numeric rows.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub schema_version: String,
    pub command: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// 17 significant digits, locale-independent.
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

impl OutputRecord {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        OutputRecord {
            schema_version: "1".into(),
            command: command.into(),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        debug_assert!(row.iter().all(|x| x.is_finite()));
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut s = format!(
            "# schema_version={} command={}\n{}\n",
            self.schema_version,
            self.command,
            self.columns.join(",")
        );
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| fmt_f64(x)).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> String {
        let cols: Vec<String> = self.columns.iter().map(|c| format!("\"{c}\"")).collect();
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|row| {
                let cells: Vec<String> = row.iter().map(|&x| fmt_f64(x)).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        format!(
            "{{\"schema_version\":\"{}\",\"command\":\"{}\",\"columns\":[{}],\"rows\":[{}]}}\n",
            self.schema_version,
            self.command,
            cols.join(","),
            rows.join(",")
        )
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// output file; standard output when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct PotentialArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub v2: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub v4: f64,
    #[arg(long)]
    pub v6: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub v0: f64,
    /// inverse-square strength; defaults to the hierarchy value for --level
    #[arg(long, allow_negative_numbers = true)]
    pub vm2: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    #[arg(long, default_value_t = 0.5)]
    pub mass: f64,
}

impl PotentialArgs {
    fn build(&self, level: u32) -> Result<(Potential, PhysicalConstants), CliError> {
        if self.v6 <= 0.0 {
            return Err(CliError::usage("--v6 must be positive"));
        }
        if self.hbar <= 0.0 || self.mass <= 0.0 {
            return Err(CliError::usage("--hbar and --mass must be positive"));
        }
        let consts = PhysicalConstants {
            hbar: self.hbar,
            mass: self.mass,
        };
        let v_m2 = self.vm2.unwrap_or_else(|| v_m2_for_level(level, &consts));
        Ok((
            Potential {
                v_m2,
                v0: self.v0,
                v2: self.v2,
                v4: self.v4,
                v6: self.v6,
            },
            consts,
        ))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "sextic-heun",
    version,
    about = "Hermite-function bound states of the sextic oscillator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Trace (xi0, w) bound-state branch curves with approximation errors
    Curves(CurvesArgs),
    /// Closed-form energies and accessory-parameter roots of one level
    Spectrum(SpectrumArgs),
    /// Sample an assembled wavefunction and report its ODE residual
    Wavefunction(WavefunctionArgs),
    /// Run the self-verification suites
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CurvesArgs {
    #[arg(long)]
    pub level: u32,
    /// branch indices: "3", "1,4,7", or "1..10"
    #[arg(long, default_value = "1")]
    pub branches: String,
    /// grid MIN:MAX:STEP
    #[arg(long, allow_hyphen_values = true)]
    pub xi0: String,
    #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
    pub energy_sign: i32,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub level: u32,
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct WavefunctionArgs {
    #[arg(long)]
    pub level: u32,
    /// which energy root (ascending), 0-based
    #[arg(long, default_value_t = 0)]
    pub branch: usize,
    #[arg(long)]
    pub r_max: Option<f64>,
    #[arg(long, default_value_t = 400)]
    pub samples: usize,
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// specfun | heun | curves | qes | oracle | all
    #[arg(default_value = "all")]
    pub suite: String,
}

#[derive(Debug)]
pub enum CliError {
    /// invalid flags or flag combinations -> exit 2
    Usage(String),
    /// computation failed -> exit 1
    Failure(String),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
    fn failure(msg: impl Into<String>) -> Self {
        CliError::Failure(msg.into())
    }
}

/// Parse and dispatch; returns the process exit code.
pub fn main_run() -> i32 {
    let cli = Cli::parse();
    match dispatch(&cli.cmd) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

pub fn dispatch(cmd: &Command) -> Result<i32, CliError> {
    match cmd {
        Command::Curves(a) => cmd_curves(a).map(|()| 0),
        Command::Spectrum(a) => cmd_spectrum(a).map(|()| 0),
        Command::Wavefunction(a) => cmd_wavefunction(a).map(|()| 0),
        Command::Verify(a) => cmd_verify(a),
    }
}

fn parse_branches(s: &str) -> Result<Vec<u32>, CliError> {
    let bad = || CliError::usage(format!("invalid --branches '{s}'"));
    let mut out = Vec::new();
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
        out.extend(lo..=hi);
    } else {
        for part in s.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    if out.is_empty() || out.contains(&0) {
        return Err(CliError::usage("--branches must list indices >= 1"));
    }
    Ok(out)
}

fn parse_grid(s: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::usage(format!("invalid --xi0 '{s}' (want MIN:MAX:STEP)"));
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let min: f64 = parts[0].parse().map_err(|_| bad())?;
    let max: f64 = parts[1].parse().map_err(|_| bad())?;
    let step: f64 = parts[2].parse().map_err(|_| bad())?;
    if !(step > 0.0 && max >= min) {
        return Err(bad());
    }
    let n = ((max - min) / step).round() as usize;
    Ok((0..=n).map(|i| min + i as f64 * step).collect())
}

fn write_out(args: &OutputArgs, rec: &OutputRecord) -> Result<(), CliError> {
    let text = rec.render(args.format);
    match &args.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::failure(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::failure(format!("stdout: {e}"))),
    }
}

fn approx_for(level: u32, energy_sign: i32, branch: u32, xi0: f64) -> Option<f64> {
    match (level, energy_sign) {
        (0, _) => approx_n0(xi0, branch).ok(),
        (1, s) if s < 0 => Some(approx_n1_neg(xi0, branch)),
        (1, _) => Some(approx_n1_pos(xi0, branch)),
        _ => None,
    }
}

fn cmd_curves(a: &CurvesArgs) -> Result<(), CliError> {
    if a.level > 1 {
        return Err(CliError::usage("--level must be 0 or 1"));
    }
    if a.energy_sign != -1 && a.energy_sign != 1 {
        return Err(CliError::usage("--energy-sign must be -1 or 1"));
    }
    let branches = parse_branches(&a.branches)?;
    let grid = parse_grid(&a.xi0)?;
    let policy = EvalPolicy::default();
    let mut rec = OutputRecord::new(
        "curves",
        &["branch", "xi0", "w_exact", "w_approx", "abs_error"],
    );
    for &b in &branches {
        let trace = trace_curve(a.level, b, &grid, a.energy_sign, &policy)
            .map_err(|e| CliError::failure(e.to_string()))?;
        for p in &trace.points {
            let wa = approx_for(a.level, a.energy_sign, b, p.xi0)
                .ok_or_else(|| CliError::failure("approximation undefined"))?;
            rec.push(vec![b as f64, p.xi0, p.w, wa, (p.w - wa).abs()]);
        }
        for &xi0 in &trace.skipped {
            eprintln!("skipped: branch {b} xi0 {xi0} (no admissible root)");
        }
    }
    write_out(&a.output, &rec)
}

fn cmd_spectrum(a: &SpectrumArgs) -> Result<(), CliError> {
    let (pot, consts) = a.potential.build(a.level)?;
    let branch = BranchChoice::bound_state();
    let (energies, n_complex) = energies_for_level(&pot, &consts, a.level, &branch)
        .map_err(|e| CliError::usage(e.to_string()))?;
    if n_complex > 0 {
        eprintln!("note: {n_complex} complex accessory-parameter roots excluded");
    }
    let mut rec = OutputRecord::new("spectrum", &["index", "energy", "q_root"]);
    for (i, &e) in energies.iter().enumerate() {
        let (hp, _) = map_potential(&pot, e, &consts, &branch)
            .map_err(|err| CliError::failure(err.to_string()))?;
        rec.push(vec![i as f64, e, hp.q]);
    }
    write_out(&a.output, &rec)
}

/// Radius where the Gaussian-type prefactor exponent reaches -30.
fn default_r_max(pot: &Potential, consts: &PhysicalConstants) -> f64 {
    let kf = consts.kinetic_factor();
    let eps = -16.0 * (kf * pot.v6).sqrt();
    let delta = 32.0 * kf * pot.v4 / eps;
    let (a1, a2) = (delta / 2.0, eps / 4.0);
    // a2 z^2 + a1 z = -30, a2 < 0; positive root
    let z = (-a1 - (a1 * a1 - 120.0 * a2).sqrt()) / (2.0 * a2);
    2.0 * z.sqrt()
}

fn cmd_wavefunction(a: &WavefunctionArgs) -> Result<(), CliError> {
    let (pot, consts) = a.potential.build(a.level)?;
    if a.samples < 2 {
        return Err(CliError::usage("--samples must be at least 2"));
    }
    let branch = BranchChoice::bound_state();
    let policy = EvalPolicy::default();
    let (energies, _) = energies_for_level(&pot, &consts, a.level, &branch)
        .map_err(|e| CliError::usage(e.to_string()))?;
    let energy = *energies.get(a.branch).ok_or_else(|| {
        CliError::usage(format!(
            "--branch {} out of range (level has {} real energies)",
            a.branch,
            energies.len()
        ))
    })?;
    let (hp, _) = map_potential(&pot, energy, &consts, &branch)
        .map_err(|e| CliError::failure(e.to_string()))?;
    let exp = expansion_coefficients(&hp, a.level, branch.sign_s0)
        .map_err(|e| CliError::failure(e.to_string()))?;
    let psi = assemble_wavefunction(&pot, &consts, &branch, &exp, energy)
        .map_err(|e| CliError::failure(e.to_string()))?;
    let r_max = a.r_max.unwrap_or_else(|| default_r_max(&pot, &consts));
    if r_max.is_nan() || r_max <= 0.0 {
        return Err(CliError::usage("--r-max must be positive"));
    }
    let mut rec = OutputRecord::new("wavefunction", &["r", "psi"]);
    for i in 1..=a.samples {
        let r = r_max * i as f64 / a.samples as f64;
        let v = psi
            .eval(r, &policy)
            .map_err(|e| CliError::failure(e.to_string()))?;
        rec.push(vec![r, v]);
    }
    let grid = RadialGrid {
        r_min: 0.05 * r_max,
        r_max,
        step: (0.95 * r_max) / 2000.0,
    };
    let sampler = |r: f64| psi.eval(r, &policy).unwrap_or(f64::NAN);
    match ode_residual(sampler, &pot, &consts, energy, &grid) {
        Ok(res) => eprintln!("ode residual (E = {}): {}", fmt_f64(energy), fmt_f64(res)),
        Err(e) => eprintln!("ode residual unavailable: {e}"),
    }
    write_out(&a.output, &rec)
}

fn cmd_verify(a: &VerifyArgs) -> Result<i32, CliError> {
    let checks = verify::run_suite(&a.suite).map_err(CliError::usage)?;
    let mut all_ok = true;
    for c in &checks {
        if c.passed {
            println!("PASS {}", c.name);
        } else {
            all_ok = false;
            println!("FAIL {}: {}", c.name, c.detail);
        }
    }
    Ok(if all_ok { 0 } else { 1 })
}
