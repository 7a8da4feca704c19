//! Command implementations behind the `gefstab` binary.

pub mod files;
pub mod report;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use gefstab::gef::{gef, scalar_denominator};
use gefstab::poly::Rational;
use gefstab::sim::{impulse_inputs, simulate_loop};
use gefstab::synth::{
    causality_check, stabilizable_with, synthesize, transpose_duality_check, verify_stabilizing, Stabilizability,
};
use gefstab::Error;
use serde::Serialize;

use files::{read_controller, read_plant};
use report::{CheckReport, GefReport, SynthReport, VerificationReport};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{0}")]
    Failed(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotStabilizable | Error::IllPosed | Error::AlgebraicLoopSingular(_) => CliError::Failed(e.to_string()),
            Error::Internal(_)
            | Error::RepairImpossible(_)
            | Error::NoNonsingularMinor
            | Error::MembershipFailed
            | Error::NotDivisible => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ReportFormat {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub format: ReportFormat,
    pub timing: bool,
}

/// What a command prints and the exit code it ends with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

fn render<T: Serialize>(value: &T, format: ReportFormat) -> Result<String, CliError> {
    let v = serde_json::to_value(value).map_err(|e| CliError::Internal(e.to_string()))?;
    Ok(match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&v).map_err(|e| CliError::Internal(e.to_string()))?;
            s.push('\n');
            s
        }
        ReportFormat::Text => report::render_text(&v),
    })
}

struct Clock {
    enabled: bool,
    start: Instant,
    marks: BTreeMap<String, f64>,
}

impl Clock {
    fn new(enabled: bool) -> Self {
        Clock { enabled, start: Instant::now(), marks: BTreeMap::new() }
    }

    fn mark(&mut self, name: &str) {
        if self.enabled {
            let now = Instant::now();
            self.marks.insert(name.to_string(), (now - self.start).as_secs_f64() * 1e3);
            self.start = now;
        }
    }

    fn finish(self) -> Option<BTreeMap<String, f64>> {
        self.enabled.then_some(self.marks)
    }
}

pub fn cmd_gef(plant_path: &Path, opts: Options) -> Result<Outcome, CliError> {
    let mut clock = Clock::new(opts.timing);
    let plant = read_plant(plant_path)?;
    let pf = scalar_denominator(&plant.matrix, &plant.ring)?;
    let g = gef(&pf)?;
    clock.mark("gef");
    let rep = GefReport {
        ring: plant.ring.to_string(),
        denominator: pf.den().to_string(),
        factors: report::factors(&g),
        timing_ms: clock.finish(),
    };
    Ok(Outcome { code: 0, stdout: render(&rep, opts.format)? })
}

pub fn cmd_check(plant_path: &Path, opts: Options) -> Result<Outcome, CliError> {
    let mut clock = Clock::new(opts.timing);
    let plant = read_plant(plant_path)?;
    let pf = scalar_denominator(&plant.matrix, &plant.ring)?;
    let g = gef(&pf)?;
    clock.mark("gef");
    let verdict = stabilizable_with(&pf, &g)?;
    clock.mark("certificate");
    let (code, rep) = match verdict {
        Stabilizability::Stabilizable(entries) => (
            0,
            CheckReport {
                verdict: "stabilizable",
                certificate: Some(report::lambdas(&entries, None)),
                evidence: None,
                timing_ms: None,
            },
        ),
        Stabilizability::NotStabilizable { evidence } => (
            1,
            CheckReport {
                verdict: "not_stabilizable",
                certificate: None,
                evidence: Some(evidence.iter().map(ToString::to_string).collect()),
                timing_ms: None,
            },
        ),
    };
    let rep = CheckReport { timing_ms: clock.finish(), ..rep };
    Ok(Outcome { code, stdout: render(&rep, opts.format)? })
}

/// Synthesizes a controller; the JSON report goes to `out` when given and
/// is also a valid controller file.
pub fn cmd_synth(plant_path: &Path, out: Option<&Path>, opts: Options) -> Result<Outcome, CliError> {
    let mut clock = Clock::new(opts.timing);
    let plant = read_plant(plant_path)?;
    let pf = scalar_denominator(&plant.matrix, &plant.ring)?;
    let res = match synthesize(&pf) {
        Ok(r) => r,
        Err(Error::NotStabilizable) => {
            let rep = CheckReport { verdict: "not_stabilizable", certificate: None, evidence: None, timing_ms: None };
            return Ok(Outcome { code: 1, stdout: render(&rep, opts.format)? });
        }
        Err(e) => return Err(e.into()),
    };
    clock.mark("synthesis");
    let duality = transpose_duality_check(&plant.ring, &plant.matrix, &res.controller)?;
    let causal = causality_check(&plant.ring, &plant.matrix, &res.controller, Some(&res.den))?;
    if !duality || !causal.passed {
        return Err(CliError::Internal("synthesized controller failed duality or causality checks".into()));
    }
    clock.mark("checks");
    let size = plant.matrix.rows() + plant.matrix.cols();
    let ver = VerificationReport::from_parts(&res.verification, size, Some(duality), Some(&causal));
    let mut rep = SynthReport::new(plant.ring.to_string(), pf.den().to_string(), &res, ver);
    rep.timing_ms = clock.finish();
    let json = render(&rep, ReportFormat::Json)?;
    let stdout = match out {
        Some(path) => {
            std::fs::write(path, &json).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            if opts.format == ReportFormat::Text {
                render(&rep, ReportFormat::Text)?
            } else {
                format!("wrote {}\n", path.display())
            }
        }
        None => render(&rep, opts.format)?,
    };
    Ok(Outcome { code: 0, stdout })
}

pub fn cmd_verify(plant_path: &Path, controller_path: &Path, opts: Options) -> Result<Outcome, CliError> {
    let mut clock = Clock::new(opts.timing);
    let plant = read_plant(plant_path)?;
    let c = read_controller(controller_path, &plant)?;
    let mut rep = match verify_stabilizing(&plant.ring, &plant.matrix, &c) {
        Ok(v) => {
            let duality = transpose_duality_check(&plant.ring, &plant.matrix, &c)?;
            let causal = causality_check(&plant.ring, &plant.matrix, &c, None)?;
            let size = plant.matrix.rows() + plant.matrix.cols();
            VerificationReport::from_parts(&v, size, Some(duality), Some(&causal))
        }
        Err(Error::IllPosed) => VerificationReport::ill_posed(),
        Err(e) => return Err(e.into()),
    };
    clock.mark("verify");
    rep.timing_ms = clock.finish();
    let code = if rep.verdict == "stabilizing" { 0 } else { 1 };
    Ok(Outcome { code, stdout: render(&rep, opts.format)? })
}

#[derive(Clone, Debug)]
pub enum InputSpec {
    /// Unit impulse on one channel of the stacked input `(u₁, u₂)`, 1-based.
    Impulse { channel: usize },
    /// CSV with columns named `u1_i` / `u2_j`; absent columns are zero.
    File(PathBuf),
}

type Channels = Vec<Vec<Rational>>;

fn read_input_csv(path: &Path, n: usize, m: usize) -> Result<(Channels, Channels), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<String> = lines
        .next()
        .ok_or_else(|| CliError::Input(format!("{}: empty input file", path.display())))?
        .split(',')
        .map(|s| s.trim().to_string())
        .collect();
    let mut u1 = vec![Vec::new(); n];
    let mut u2 = vec![Vec::new(); m];
    let slot = |name: &str| -> Option<(bool, usize)> {
        let (group, idx) = name.split_once('_')?;
        let idx: usize = idx.parse().ok()?;
        match group {
            "u1" if (1..=n).contains(&idx) => Some((true, idx - 1)),
            "u2" if (1..=m).contains(&idx) => Some((false, idx - 1)),
            _ => None,
        }
    };
    let targets: Vec<Option<(bool, usize)>> = header.iter().map(|h| slot(h)).collect();
    for (lineno, line) in lines.enumerate() {
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        if cells.len() != header.len() {
            return Err(CliError::Input(format!("{}: row {} has {} cells", path.display(), lineno + 2, cells.len())));
        }
        for (cell, target) in cells.iter().zip(&targets) {
            let Some((first, i)) = target else { continue };
            let v: Rational = cell
                .parse()
                .map_err(|_| CliError::Input(format!("{}: bad number `{cell}`", path.display())))?;
            if *first {
                u1[*i].push(v);
            } else {
                u2[*i].push(v);
            }
        }
    }
    Ok((u1, u2))
}

/// Simulates the loop and writes the CSV trace to `out` (or stdout).
pub fn cmd_simulate(
    plant_path: &Path,
    controller_path: &Path,
    steps: usize,
    input: &InputSpec,
    out: Option<&Path>,
) -> Result<Outcome, CliError> {
    let plant = read_plant(plant_path)?;
    if plant.ring.delay_var().is_none() {
        return Err(CliError::Input("simulation needs a univariate delay ring".into()));
    }
    let c = read_controller(controller_path, &plant)?;
    let n = plant.matrix.rows();
    let m = plant.matrix.cols();
    let (u1, u2) = match input {
        InputSpec::Impulse { channel } => {
            if *channel == 0 || *channel > n + m {
                return Err(CliError::Input(format!("channel must be in 1..={}", n + m)));
            }
            impulse_inputs(n, m, channel - 1, steps)
        }
        InputSpec::File(path) => read_input_csv(path, n, m)?,
    };
    let trace = simulate_loop(&plant.matrix, &c, &u1, &u2, steps)?;
    let csv = trace.to_csv();
    match out {
        Some(path) => {
            std::fs::write(path, csv).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            Ok(Outcome { code: 0, stdout: format!("wrote {}\n", path.display()) })
        }
        None => Ok(Outcome { code: 0, stdout: csv }),
    }
}
