//! Artifact writers. Every file goes to a temporary sibling first and is
//! renamed into place.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::beam_model::TrajectoryBundle;
use crate::error::{Error, Result};
use crate::oracles::{FringeReport, ParaxialField};
use crate::plot::{Plot, Series};

pub const TRAJECTORY_COLUMNS: [&str; 9] = ["ray_id", "step", "tau", "xi", "zeta", "rho_x", "rho_z", "R", "G"];

pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir)?;
    let name = path
        .file_name()
        .ok_or_else(|| Error::Domain(format!("not a file path: {}", path.display())))?
        .to_string_lossy();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    atomic_write(path, &bytes)
}

/// One row per ray per recorded step, ray-major.
pub fn trajectories_csv(bundle: &TrajectoryBundle) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(TRAJECTORY_COLUMNS)?;
    for ray in 0..bundle.n_rays() {
        for s in &bundle.snapshots {
            let r = &s.rays[ray];
            w.write_record([
                ray.to_string(),
                s.step.to_string(),
                s.tau.to_string(),
                r.xi.to_string(),
                r.zeta.to_string(),
                r.rho_x.to_string(),
                r.rho_z.to_string(),
                r.amplitude_r.to_string(),
                s.g[ray].to_string(),
            ])?;
        }
    }
    w.into_inner().map_err(|e| Error::Io(e.into_error()))
}

/// Evenly spread subset of `n` indices, always keeping both ends.
pub fn spread_indices(n: usize, max: usize) -> Vec<usize> {
    if n <= max {
        return (0..n).collect();
    }
    let mut v: Vec<usize> = (0..max)
        .map(|i| ((i as f64) * (n - 1) as f64 / (max - 1) as f64).round() as usize)
        .collect();
    v.dedup();
    v
}

/// Up to `max` rays at equal steps of launch flux R²·dξ, so drawn rays
/// crowd where the beam is bright.
pub fn flux_spread_indices(bundle: &TrajectoryBundle, max: usize) -> Vec<usize> {
    let Some(first) = bundle.snapshots.first() else {
        return vec![];
    };
    let n = first.rays.len();
    if n <= max {
        return (0..n).collect();
    }
    let mut cum = vec![0.0; n];
    for i in 1..n {
        let (a, b) = (&first.rays[i - 1], &first.rays[i]);
        let r = 0.5 * (a.amplitude_r + b.amplitude_r);
        cum[i] = cum[i - 1] + r * r * (b.launch_label() - a.launch_label());
    }
    let total = cum[n - 1];
    let mut v: Vec<usize> = (0..max)
        .map(|k| {
            let q = total * (k as f64 + 0.5) / max as f64;
            cum.partition_point(|c| *c < q).min(n - 1)
        })
        .collect();
    v.dedup();
    v
}

/// Trajectories on the (ξ, ζ)-plane with ζ horizontal.
pub fn pattern_svg(bundle: &TrajectoryBundle, title: &str, max_rays: usize, detector_zeta: Option<f64>) -> String {
    let mut plot = Plot::new(title, "zeta = z / lambda0", "xi = x / lambda0");
    let n_snap = bundle.snapshots.len();
    let stride = n_snap.div_ceil(600).max(1);
    for ray in flux_spread_indices(bundle, max_rays) {
        let mut pts: Vec<(f64, f64)> = bundle
            .snapshots
            .iter()
            .step_by(stride)
            .map(|s| (s.rays[ray].zeta, s.rays[ray].xi))
            .collect();
        if let Some(s) = bundle.snapshots.last() {
            if (n_snap - 1) % stride != 0 {
                pts.push((s.rays[ray].zeta, s.rays[ray].xi));
            }
        }
        plot.add(Series::line("", pts).color("#1f4e8c").width(0.8));
    }
    if let Some(zd) = detector_zeta.filter(|z| *z <= bundle.zeta_reached()) {
        let (lo, hi) = plot
            .series
            .iter()
            .flat_map(|s| s.points.iter().map(|p| p.1))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), y| (a.min(y), b.max(y)));
        plot.add(Series::line("", vec![(zd, lo), (zd, hi)]).color("#999999").dashed());
    }
    plot.to_svg()
}

/// Intensity on a subset of the grid, normalized by the launch peak.
pub fn oracle_intensity_csv(field: &ParaxialField, xi_window: f64, max_points: usize) -> Result<Vec<u8>> {
    let peak = field.launch_intensity.iter().cloned().fold(0.0, f64::max);
    let idx: Vec<usize> = (0..field.xi.len()).filter(|&i| field.xi[i].abs() <= xi_window).collect();
    let stride = idx.len().div_ceil(max_points).max(1);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["zeta", "xi", "intensity"])?;
    for (k, z) in field.zetas.iter().enumerate() {
        for &i in idx.iter().step_by(stride) {
            w.write_record([z.to_string(), field.xi[i].to_string(), (field.intensity[k][i] / peak).to_string()])?;
        }
    }
    w.into_inner().map_err(|e| Error::Io(e.into_error()))
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorBlock {
    pub kind: &'static str,
    pub message: String,
    pub step: Option<usize>,
    pub rays: Vec<usize>,
}

impl ErrorBlock {
    pub fn from_error(e: &Error) -> Self {
        let root = e.root();
        let (step, rays) = match *root {
            Error::Caustic { step, left, right } => (Some(step), vec![left, right]),
            Error::NumericalBlowup { step, ray } => (Some(step), vec![ray]),
            Error::TurnedRay { step, ray, .. } => (Some(step), vec![ray]),
            _ => (None, vec![]),
        };
        Self {
            kind: error_kind(root),
            message: root.to_string(),
            step,
            rays,
        }
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e.root() {
        Error::Config { .. } => "config",
        Error::Domain(_) => "domain",
        Error::Caustic { .. } => "caustic",
        Error::NumericalBlowup { .. } => "numerical_blowup",
        Error::TurnedRay { .. } => "turned_ray",
        Error::OracleResolution(_) => "oracle_resolution",
        Error::Range { .. } => "range",
        Error::Halted { .. } => "halted",
        Error::Io(_) | Error::Csv(_) | Error::Json(_) => "io",
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Invariants {
    pub max_drift_pre_constraint: f64,
    pub max_drift_recorded: f64,
    pub constraint_enforced: bool,
    pub monotone: bool,
    /// max |ξ_i + ξ_{n-1-i}| over the last snapshot.
    pub mirror_asymmetry: f64,
}

impl Invariants {
    pub fn of(bundle: &TrajectoryBundle, constraint_enforced: bool) -> Self {
        let d = &bundle.diagnostics;
        Self {
            max_drift_pre_constraint: d.drift_pre_constraint.iter().cloned().fold(0.0, f64::max),
            max_drift_recorded: d.max_drift_recorded,
            constraint_enforced,
            monotone: d.monotone.iter().all(|m| *m),
            mirror_asymmetry: bundle.last().map_or(0.0, |s| {
                let n = s.rays.len();
                (0..n).map(|i| (s.rays[i].xi + s.rays[n - 1 - i].xi).abs()).fold(0.0, f64::max)
            }),
        }
    }
}

/// Contents of summary.json; `schema/summary.schema.json` describes it.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub status: &'static str,
    pub exit_code: i32,
    pub front_end: String,
    pub profile: String,
    pub config: BTreeMap<String, String>,
    pub n_rays: usize,
    pub snapshots: usize,
    pub zeta_reached: f64,
    pub invariants: Invariants,
    pub fringe: Option<FringeReport>,
    pub first_gathering_zeta: Option<f64>,
    pub envelope_error: Option<f64>,
    pub runtime_s: f64,
    pub warnings: Vec<String>,
    pub error: Option<ErrorBlock>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atomic_write_replaces() {
        let d = tempfile::tempdir().unwrap();
        let p = d.path().join("sub/a.txt");
        atomic_write(&p, b"one").unwrap();
        atomic_write(&p, b"two").unwrap();
        assert_eq!(std::fs::read(&p).unwrap(), b"two");
        assert_eq!(std::fs::read_dir(p.parent().unwrap()).unwrap().count(), 1);
    }

    #[test]
    fn flux_spread_crowds_the_centre() {
        use crate::beam_model::{RayState, Snapshot};
        let rays: Vec<RayState> = (0..101)
            .map(|i| {
                let x = -10.0 + 0.2 * i as f64;
                RayState::launch(x, (-x * x / 4.0).exp(), 1.0)
            })
            .collect();
        let b = TrajectoryBundle {
            snapshots: vec![Snapshot { step: 0, tau: 0.0, rays, g: vec![0.0; 101] }],
            ..Default::default()
        };
        let v = flux_spread_indices(&b, 10);
        assert_eq!(v.len(), 10);
        assert!(v.iter().all(|i| (30..=70).contains(i)), "{v:?}");
        assert_eq!(flux_spread_indices(&b, 200).len(), 101);
    }

    #[test]
    fn spread_keeps_ends() {
        assert_eq!(spread_indices(3, 10), vec![0, 1, 2]);
        let v = spread_indices(401, 60);
        assert_eq!((v[0], *v.last().unwrap(), v.len()), (0, 400, 60));
    }
}
