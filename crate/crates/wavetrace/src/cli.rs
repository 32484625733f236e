//! The five commands behind the `wavetrace` binary. Each returns its exit code.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::beam_model::{FrontEnd, TrajectoryBundle};
use crate::config::{defaults_text, Resolved, RunConfig};
use crate::error::{Error, Result};
use crate::integrator;
use crate::launch_profiles::{algebraic, gaussian, sample_fan_in, LaunchProfile, Shape};
use crate::oracles::{
    detect_fringes, envelope_error, first_gathering_zeta, flux_correspondence, flux_quantile_positions,
    fringe_report, gaussian_envelope, oracle_first_gathering_zeta, paraxial_grid_propagate, FluxRow, FringeReport,
    Peak,
};
use crate::output::{
    atomic_write, oracle_intensity_csv, pattern_svg, trajectories_csv, write_json, ErrorBlock, Invariants, Summary,
};
use crate::plot::{Plot, Series};

pub const EXIT_OK: i32 = 0;
pub const EXIT_THRESHOLD: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_HALT: i32 = 3;
pub const EXIT_ORACLE: i32 = 4;

pub const ENVELOPE_TOLERANCE: f64 = 0.02;
pub const ORACLE_ENVELOPE_TOLERANCE: f64 = 0.01;
pub const FLUX_CORE_TOLERANCE: f64 = 0.15;

pub fn exit_code(e: &Error) -> i32 {
    match e.root() {
        Error::Config { .. } | Error::Domain(_) => EXIT_CONFIG,
        Error::OracleResolution(_) => EXIT_ORACLE,
        _ => EXIT_HALT,
    }
}

fn fail(e: &Error) -> i32 {
    eprintln!("error: {e}");
    exit_code(e)
}

/// A finished or halted integration.
#[derive(Debug)]
pub struct Simulation {
    pub bundle: TrajectoryBundle,
    pub error: Option<Error>,
    pub runtime_s: f64,
}

/// Integrates the resolved config. Only launch-time problems come back as `Err`.
pub fn simulate(r: &Resolved) -> Result<Simulation> {
    let t = Instant::now();
    let (bundle, error) = match integrator::run(&r.profile, &r.medium, &r.fan, &r.integrator) {
        Ok(b) => (b, None),
        Err(Error::Halted { cause, partial }) => (*partial, Some(*cause)),
        Err(e) => return Err(e),
    };
    Ok(Simulation {
        bundle,
        error,
        runtime_s: t.elapsed().as_secs_f64(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Analysis {
    pub fringe: Option<FringeReport>,
    pub first_gathering_zeta: Option<f64>,
    pub envelope_error: Option<f64>,
    pub notes: Vec<String>,
}

pub fn analyze(r: &Resolved, bundle: &TrajectoryBundle) -> Analysis {
    let w0 = r.profile.w0();
    let mut notes = Vec::new();
    let fringe = match detect_fringes(bundle, r.detector_zeta, w0) {
        Ok(f) => Some(f),
        Err(e) => {
            notes.push(format!("no fringe report: {e}"));
            None
        }
    };
    let envelope_error = match r.profile.shape {
        Shape::Gaussian => envelope_error(bundle, r.profile.epsilon, r.detector_zeta),
        _ => None,
    };
    Analysis {
        fringe,
        first_gathering_zeta: first_gathering_zeta(bundle, w0, r.scan_step),
        envelope_error,
        notes,
    }
}

fn front_end_name(f: FrontEnd) -> String {
    match f {
        FrontEnd::Optical => "optical".into(),
        FrontEnd::Quantum => "quantum".into(),
    }
}

/// Writes trajectories.csv, summary.json and pattern.svg into `dir`.
pub fn write_run_artifacts(dir: &Path, cfg: &RunConfig, r: &Resolved, sim: &Simulation) -> Result<Summary> {
    let analysis = analyze(r, &sim.bundle);
    let code = sim.error.as_ref().map_or(EXIT_OK, exit_code);
    let mut warnings = sim.bundle.diagnostics.warnings.clone();
    warnings.extend(analysis.notes);
    let summary = Summary {
        status: if sim.error.is_some() { "halted" } else { "ok" },
        exit_code: code,
        front_end: front_end_name(r.front_end),
        profile: r.profile.describe(),
        config: cfg.effective(r),
        n_rays: sim.bundle.n_rays(),
        snapshots: sim.bundle.snapshots.len(),
        zeta_reached: sim.bundle.zeta_reached(),
        invariants: Invariants::of(&sim.bundle, r.integrator.enforce_constraint),
        fringe: analysis.fringe,
        first_gathering_zeta: analysis.first_gathering_zeta,
        envelope_error: analysis.envelope_error,
        runtime_s: sim.runtime_s,
        warnings,
        error: sim.error.as_ref().map(ErrorBlock::from_error),
    };
    atomic_write(&dir.join("trajectories.csv"), &trajectories_csv(&sim.bundle)?)?;
    write_json(&dir.join("summary.json"), &summary)?;
    let title = format!(
        "{}{}",
        r.profile.describe(),
        if sim.error.is_some() { " (halted)" } else { "" }
    );
    let svg = pattern_svg(&sim.bundle, &title, r.svg_max_rays, Some(r.detector_zeta));
    atomic_write(&dir.join("pattern.svg"), svg.as_bytes())?;
    Ok(summary)
}

fn run_resolved(cfg: &RunConfig, r: &Resolved, dir: &Path) -> i32 {
    let sim = match simulate(r) {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    match write_run_artifacts(dir, cfg, r, &sim) {
        Ok(s) => {
            println!(
                "{}: {} rays to zeta {:.2} in {:.2} s, fringed at detector: {}",
                dir.display(),
                s.n_rays,
                s.zeta_reached,
                s.runtime_s,
                s.fringe.as_ref().map_or("n/a".to_string(), |f| f.is_fringed.to_string())
            );
            if let Some(e) = &sim.error {
                eprintln!("halted: {e}");
            }
            s.exit_code
        }
        Err(e) => fail(&e),
    }
}

fn load(config_path: &Path) -> std::result::Result<(RunConfig, Resolved), i32> {
    let cfg = RunConfig::load(config_path).map_err(|e| fail(&e))?;
    let r = cfg.resolve().map_err(|e| fail(&e))?;
    Ok((cfg, r))
}

pub fn cmd_run(config_path: &Path, out: Option<&Path>) -> i32 {
    let (cfg, r) = match load(config_path) {
        Ok(x) => x,
        Err(c) => return c,
    };
    let dir = out.map_or(r.out_dir.clone(), Path::to_path_buf);
    run_resolved(&cfg, &r, &dir)
}

pub fn cmd_defaults() -> i32 {
    print!("{}", defaults_text());
    EXIT_OK
}

fn reproduce_profiles(out: &Path, figure: u8) -> Result<()> {
    let eps = 0.25;
    let (g0, a1, a2) = (gaussian(eps)?, algebraic(eps, 1)?, algebraic(eps, 2)?);
    let (profiles, half, name): (Vec<(&str, _)>, f64, &str) = match figure {
        1 => (vec![("R0", &g0), ("R1", &a1), ("R2", &a2)], 16.0, "R"),
        2 => (vec![("G0", &g0), ("G1", &a1)], 12.0, "G"),
        _ => (vec![("G0", &g0), ("G2", &a2)], 12.0, "G"),
    };
    let xs: Vec<f64> = (0..=1200).map(|i| -half + 2.0 * half * i as f64 / 1200.0).collect();
    let eval = |p: &LaunchProfile, x: f64| {
        if figure == 1 {
            p.amplitude(x)
        } else {
            p.g_analytic(x).unwrap_or(f64::NAN)
        }
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["xi".to_string()];
    header.extend(profiles.iter().map(|(n, _)| n.to_string()));
    w.write_record(&header)?;
    for &x in &xs {
        let mut row = vec![x.to_string()];
        row.extend(profiles.iter().map(|(_, p)| eval(p, x).to_string()));
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    atomic_write(&out.join(format!("fig{figure}.csv")), &bytes)?;

    let title = if figure == 1 {
        "launch amplitudes, eps = 0.25".to_string()
    } else {
        "launch-plane wave potential, eps = 0.25".to_string()
    };
    let mut plot = Plot::new(title, "xi = x / lambda0", name);
    plot.legend = true;
    for (n, p) in &profiles {
        plot.add(Series::line(*n, xs.iter().map(|&x| (x, eval(p, x))).collect()).width(2.0));
    }
    atomic_write(&out.join(format!("fig{figure}.svg")), plot.to_svg().as_bytes())?;
    println!("{}", out.join(format!("fig{figure}.svg")).display());
    Ok(())
}

pub fn cmd_reproduce(figure: u8, out: &Path) -> i32 {
    match figure {
        1..=3 => match reproduce_profiles(out, figure) {
            Ok(()) => EXIT_OK,
            Err(e) => fail(&e),
        },
        4..=6 => {
            let mut cfg = RunConfig::default();
            let set = |cfg: &mut RunConfig, k: &str, v: &str| cfg.set(k, v).expect("known key");
            if figure > 4 {
                set(&mut cfg, "profile.kind", "algebraic");
                set(&mut cfg, "profile.n", if figure == 5 { "1" } else { "2" });
            }
            let r = match cfg.resolve() {
                Ok(r) => r,
                Err(e) => return fail(&e),
            };
            match run_resolved(&cfg, &r, &out.join(format!("fig{figure}"))) {
                EXIT_HALT => EXIT_OK,
                c => c,
            }
        }
        _ => {
            eprintln!("error: figure must be 1 to 6, got {figure}");
            EXIT_CONFIG
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub value: Option<f64>,
    pub threshold: Option<f64>,
    pub passed: bool,
}

impl Check {
    fn at_most(name: &'static str, value: Option<f64>, threshold: f64) -> Self {
        Self {
            name,
            value,
            threshold: Some(threshold),
            passed: value.is_some_and(|v| v <= threshold),
        }
    }

    fn holds(name: &'static str, passed: bool) -> Self {
        Self {
            name,
            value: None,
            threshold: None,
            passed,
        }
    }
}

/// Pairs simulated and oracle peaks one-to-one, nearest first. Returns the
/// position deltas of matched pairs and the counts left unmatched on each side.
pub fn match_peaks(sim: &[Peak], oracle: &[Peak], max_delta: f64) -> (Vec<f64>, usize, usize) {
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for (i, a) in sim.iter().enumerate() {
        for (j, b) in oracle.iter().enumerate() {
            let d = (a.position - b.position).abs();
            if d <= max_delta {
                pairs.push((d, i, j));
            }
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (mut us, mut uo) = (vec![false; sim.len()], vec![false; oracle.len()]);
    let mut deltas = Vec::new();
    for (d, i, j) in pairs {
        if !us[i] && !uo[j] {
            us[i] = true;
            uo[j] = true;
            deltas.push(d);
        }
    }
    let left = |u: &[bool]| u.iter().filter(|x| !**x).count();
    (deltas, left(&us), left(&uo))
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleComparison {
    pub profile: String,
    pub detector_zeta: f64,
    pub zeta_reached: f64,
    pub halted: Option<ErrorBlock>,
    pub envelope_error: Option<f64>,
    pub oracle_envelope_error: Option<f64>,
    pub simulated_fringes: Option<FringeReport>,
    pub oracle_fringes: FringeReport,
    pub fringe_deltas: Vec<f64>,
    /// Oracle peaks with no simulated peak within one bin.
    pub unmatched_oracle_peaks: usize,
    pub flux_correspondence: Vec<FluxRow>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

/// Simulator against the grid oracle on the same profile and fan.
pub fn oracle_comparison(r: &Resolved) -> Result<(OracleComparison, crate::oracles::ParaxialField)> {
    let sim = simulate(r)?;
    let zd = r.detector_zeta;
    let planes: Vec<f64> = (0..=40).map(|k| zd * k as f64 / 40.0).collect();
    let field = paraxial_grid_propagate(&r.profile, &planes, &r.grid)?;
    let last = planes.len() - 1;
    let launch_labels = sim.bundle.labels();
    let w0 = r.profile.w0();
    let oracle_fringes = fringe_report(&flux_quantile_positions(&field, last, &launch_labels), w0, zd);

    let mut checks = vec![Check::holds("simulation_reached_detector", sim.bundle.zeta_reached() >= zd)];
    let (mut envelope, mut oracle_envelope) = (None, None);
    if let Shape::Gaussian = r.profile.shape {
        envelope = envelope_error(&sim.bundle, r.profile.epsilon, zd);
        oracle_envelope = Some(
            planes
                .iter()
                .enumerate()
                .map(|(k, &z)| {
                    let w = gaussian_envelope(r.profile.epsilon, z);
                    (field.rms_half_width(k) - w).abs() / w
                })
                .fold(0.0, f64::max),
        );
        checks.push(Check::at_most("envelope_error", envelope, ENVELOPE_TOLERANCE));
        checks.push(Check::at_most("oracle_envelope_error", oracle_envelope, ORACLE_ENVELOPE_TOLERANCE));
    }

    let sim_fringes = detect_fringes(&sim.bundle, zd, w0).ok();
    let (mut deltas, mut flux, mut unmatched_oracle) = (Vec::new(), Vec::new(), 0);
    if let Some(sf) = &sim_fringes {
        checks.push(Check::holds("fringe_classification_agrees", sf.is_fringed == oracle_fringes.is_fringed));
        let (d, us, uo) = match_peaks(&sf.peaks, &oracle_fringes.peaks, sf.bin_width);
        deltas = d;
        let worst = deltas.iter().cloned().fold(0.0, f64::max);
        checks.push(Check {
            name: "fringe_peaks_within_one_bin",
            value: Some(worst / sf.bin_width),
            threshold: Some(1.0),
            passed: us == 0 && !sf.peaks.is_empty(),
        });
        unmatched_oracle = uo;
        let pos = sim.bundle.positions_at_zeta(zd)?;
        flux = flux_correspondence(&pos, &launch_flux(r)?, &field, last, &sf.bin_edges);
        let worst = flux.iter().filter(|f| f.core).map(|f| f.relative_error).fold(0.0, f64::max);
        checks.push(Check::at_most("flux_core_relative_error", Some(worst), FLUX_CORE_TOLERANCE));
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok((
        OracleComparison {
            profile: r.profile.describe(),
            detector_zeta: zd,
            zeta_reached: sim.bundle.zeta_reached(),
            halted: sim.error.as_ref().map(ErrorBlock::from_error),
            envelope_error: envelope,
            oracle_envelope_error: oracle_envelope,
            simulated_fringes: sim_fringes,
            oracle_fringes,
            fringe_deltas: deltas,
            unmatched_oracle_peaks: unmatched_oracle,
            flux_correspondence: flux,
            checks,
            passed,
        },
        field,
    ))
}

/// Launch flux of each interval between neighbouring rays.
fn launch_flux(r: &Resolved) -> Result<Vec<f64>> {
    let f = &r.fan;
    Ok(sample_fan_in(&r.profile, f.n_rays, f.xi_min, f.xi_max, f.amplitude_floor, &r.medium)?.interval_flux)
}

pub fn cmd_oracle_compare(config_path: &Path, out: Option<&Path>) -> i32 {
    let (_, r) = match load(config_path) {
        Ok(x) => x,
        Err(c) => return c,
    };
    let dir = out.map_or(r.out_dir.clone(), Path::to_path_buf);
    let (cmp, field) = match oracle_comparison(&r) {
        Ok(x) => x,
        Err(e) => return fail(&e),
    };
    let window = 2.0 * r.fan.xi_min.abs().max(r.fan.xi_max.abs());
    let written = oracle_intensity_csv(&field, window, 512)
        .and_then(|b| atomic_write(&dir.join("oracle_intensity.csv"), &b))
        .and_then(|_| write_json(&dir.join("oracle_compare.json"), &cmp));
    if let Err(e) = written {
        return fail(&e);
    }
    for c in &cmp.checks {
        let v = c.value.map_or(String::new(), |v| format!(" {v:.4}"));
        let t = c.threshold.map_or(String::new(), |t| format!(" (limit {t})"));
        println!("{} {}{v}{t}", if c.passed { "PASS" } else { "FAIL" }, c.name);
    }
    if cmp.passed {
        EXIT_OK
    } else {
        EXIT_THRESHOLD
    }
}

pub const SWEEP_PARAMETERS: [&str; 5] = ["epsilon", "N", "xi0", "d_tau", "n_rays"];

/// Applies one sweep value to a config.
pub fn apply_sweep_value(cfg: &mut RunConfig, parameter: &str, value: &str) -> Result<()> {
    match parameter {
        "epsilon" => cfg.set("profile.epsilon", value),
        "xi0" => cfg.set("profile.xi0", value),
        "d_tau" => cfg.set("integrator.d_tau", value),
        "n_rays" => cfg.set("fan.n_rays", value),
        "N" => {
            let key = if cfg.get("profile.kind") == "two_beam" { "profile.base" } else { "profile.kind" };
            if value == "0" {
                cfg.set(key, "gaussian")
            } else {
                cfg.set(key, "algebraic")?;
                cfg.set("profile.n", value)
            }
        }
        p => Err(Error::config(
            "sweep.parameter",
            format!("expected one of {}, got `{p}`", SWEEP_PARAMETERS.join(" | ")),
        )),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRun {
    pub value: String,
    pub profile: Option<String>,
    pub status: &'static str,
    pub error: Option<ErrorBlock>,
    pub zeta_reached: Option<f64>,
    pub fringed_at_detector: Option<bool>,
    pub off_axis_peaks: Option<usize>,
    pub first_gathering_zeta: Option<f64>,
    pub oracle_first_gathering_zeta: Option<f64>,
    pub runtime_s: Option<f64>,
    #[serde(skip)]
    pub detector: Option<(Vec<f64>, Vec<f64>)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CauchyStep {
    pub from: String,
    pub to: String,
    pub max_difference: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub parameter: String,
    pub runs: Vec<SweepRun>,
    /// Max detector-plane ξ difference between consecutive runs, compared at
    /// the launch labels of the first of each pair.
    pub cauchy: Vec<CauchyStep>,
    /// Ratios of consecutive Cauchy differences.
    pub cauchy_ratios: Vec<f64>,
}

fn sweep_one(base: &RunConfig, parameter: &str, value: &str) -> SweepRun {
    let mut run = SweepRun {
        value: value.to_string(),
        profile: None,
        status: "config_error",
        error: None,
        zeta_reached: None,
        fringed_at_detector: None,
        off_axis_peaks: None,
        first_gathering_zeta: None,
        oracle_first_gathering_zeta: None,
        runtime_s: None,
        detector: None,
    };
    let mut cfg = base.clone();
    let resolved = apply_sweep_value(&mut cfg, parameter, value).and_then(|_| cfg.resolve());
    let r = match resolved {
        Ok(r) => r,
        Err(e) => {
            run.error = Some(ErrorBlock::from_error(&e));
            return run;
        }
    };
    run.profile = Some(r.profile.describe());
    let sim = match simulate(&r) {
        Ok(s) => s,
        Err(e) => {
            run.error = Some(ErrorBlock::from_error(&e));
            return run;
        }
    };
    run.status = if sim.error.is_some() { "halted" } else { "ok" };
    run.error = sim.error.as_ref().map(ErrorBlock::from_error);
    run.runtime_s = Some(sim.runtime_s);
    run.zeta_reached = Some(sim.bundle.zeta_reached());
    let w0 = r.profile.w0();
    if let Ok(f) = detect_fringes(&sim.bundle, r.detector_zeta, w0) {
        run.fringed_at_detector = Some(f.is_fringed);
        run.off_axis_peaks = Some(f.off_axis_peaks().len());
    }
    if let Ok(p) = sim.bundle.positions_at_zeta(r.detector_zeta) {
        run.detector = Some((sim.bundle.labels(), p));
    }
    run.first_gathering_zeta = first_gathering_zeta(&sim.bundle, w0, r.scan_step);
    let zmax = run.first_gathering_zeta.unwrap_or(sim.bundle.zeta_reached()).max(r.detector_zeta);
    run.oracle_first_gathering_zeta =
        oracle_first_gathering_zeta(&r.profile, &sim.bundle.labels(), zmax, r.scan_step, &r.grid)
            .ok()
            .flatten();
    run
}

fn interp_label(l: f64, labels: &[f64], xs: &[f64]) -> f64 {
    crate::oracles::interp(l, labels, xs)
}

pub fn sweep(base: &RunConfig, parameter: &str, values: &[String]) -> Result<SweepReport> {
    if !SWEEP_PARAMETERS.contains(&parameter) {
        return Err(Error::config(
            "sweep.parameter",
            format!("expected one of {}, got `{parameter}`", SWEEP_PARAMETERS.join(" | ")),
        ));
    }
    let runs: Vec<SweepRun> = values.iter().map(|v| sweep_one(base, parameter, v)).collect();
    let mut cauchy = Vec::new();
    let convergent = matches!(parameter, "d_tau" | "n_rays");
    for w in runs.windows(2).filter(|_| convergent) {
        if let (Some((la, xa)), Some((lb, xb))) = (&w[0].detector, &w[1].detector) {
            let d = la
                .iter()
                .zip(xa)
                .filter(|(l, _)| **l >= lb[0] && **l <= lb[lb.len() - 1])
                .map(|(l, x)| (x - interp_label(*l, lb, xb)).abs())
                .fold(0.0, f64::max);
            cauchy.push(CauchyStep {
                from: w[0].value.clone(),
                to: w[1].value.clone(),
                max_difference: d,
            });
        }
    }
    let cauchy_ratios = cauchy.windows(2).map(|w| w[0].max_difference / w[1].max_difference).collect();
    Ok(SweepReport {
        parameter: parameter.to_string(),
        runs,
        cauchy,
        cauchy_ratios,
    })
}

pub fn sweep_svg(report: &SweepReport) -> String {
    let pts = |f: fn(&SweepRun) -> Option<f64>| -> Vec<(f64, f64)> {
        report
            .runs
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                let x = r.value.parse::<f64>().unwrap_or(i as f64);
                f(r).map(|y| (x, y))
            })
            .collect()
    };
    let mut plot = Plot::new(
        format!("first gathering versus {}", report.parameter),
        report.parameter.clone(),
        "first-gathering zeta",
    );
    plot.legend = true;
    plot.add(Series::line("rays", pts(|r| r.first_gathering_zeta)).markers().width(2.0));
    plot.add(Series::line("grid oracle", pts(|r| r.oracle_first_gathering_zeta)).markers().dashed());
    plot.to_svg()
}

pub fn cmd_sweep(config_path: &Path, parameter: &str, values: &[String], out: Option<&Path>) -> i32 {
    let (cfg, r) = match load(config_path) {
        Ok(x) => x,
        Err(c) => return c,
    };
    let dir: PathBuf = out.map_or(r.out_dir.clone(), Path::to_path_buf);
    let report = match sweep(&cfg, parameter, values) {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    let written = write_json(&dir.join("sweep.json"), &report)
        .and_then(|_| atomic_write(&dir.join("sweep.svg"), sweep_svg(&report).as_bytes()));
    if let Err(e) = written {
        return fail(&e);
    }
    for run in &report.runs {
        let fmt = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.3}"));
        println!(
            "{} = {}: {}, first gathering {} (oracle {}), fringed {}",
            parameter,
            run.value,
            run.status,
            fmt(run.first_gathering_zeta),
            fmt(run.oracle_first_gathering_zeta),
            run.fringed_at_detector.map_or("-".into(), |b| b.to_string())
        );
    }
    for c in &report.cauchy {
        println!("cauchy {} -> {}: {:.3e}", c.from, c.to, c.max_difference);
    }
    EXIT_OK
}
