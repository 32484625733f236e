//! Time stepping of the fan under dρ/dτ = -∇(V/2E) + C∇G.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::Instant;

use serde::Serialize;

use crate::beam_model::{Diagnostics, Medium, Snapshot, TrajectoryBundle, WavefrontFan, COUPLING};
use crate::error::{Error, Result};
use crate::launch_profiles::{sample_fan_in, LaunchProfile, AMPLITUDE_FLOOR};
use crate::wave_potential::{
    flux_tube_g, flux_tube_gradient, lagrange3, parametrize, second_derivative_on_fan, transverse_unit,
    wave_potential_gradient,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Rk4,
    Leapfrog,
}

/// How rays feel each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Coupling {
    /// Stress divergence across flux tubes between neighbouring rays.
    FluxTube,
    /// G straight from the carried amplitudes; unstable past mild focusing.
    Transported,
}

/// When the coupling is re-evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GRefresh {
    Stage,
    Step,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CausticPolicy {
    Halt,
    SortAndContinue,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntegratorConfig {
    pub d_tau: f64,
    pub n_steps: usize,
    pub scheme: Scheme,
    pub coupling: Coupling,
    pub g_refresh: GRefresh,
    /// Drop the wave-potential term entirely.
    pub go_limit_mode: bool,
    /// Reset ρz = √(1 - ρx²) after every step (field-free media only).
    pub enforce_constraint: bool,
    pub caustic_policy: CausticPolicy,
    /// Multiplies C; 1 is the physical value.
    pub coupling_scale: f64,
    pub record_every: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self::for_epsilon(0.25)
    }
}

impl IntegratorConfig {
    /// Δτ = 0.1·(0.25/ε)² and enough steps to cover two Rayleigh ranges.
    pub fn for_epsilon(epsilon: f64) -> Self {
        let d_tau = default_d_tau(epsilon);
        Self {
            d_tau,
            n_steps: steps_to(4.0 * PI / (epsilon * epsilon), d_tau),
            scheme: Scheme::Rk4,
            coupling: Coupling::FluxTube,
            g_refresh: GRefresh::Stage,
            go_limit_mode: false,
            enforce_constraint: true,
            caustic_policy: CausticPolicy::Halt,
            coupling_scale: 1.0,
            record_every: 1,
        }
    }

    pub fn validate(&self, medium: &Medium) -> Result<()> {
        if !(self.d_tau > 0.0 && self.d_tau.is_finite()) {
            return Err(Error::config("integrator.d_tau", format!("must be > 0, got {}", self.d_tau)));
        }
        if self.n_steps < 1 {
            return Err(Error::config("integrator.n_steps", "must be >= 1"));
        }
        if self.record_every < 1 {
            return Err(Error::config("output.decimation", "must be >= 1"));
        }
        if !(self.coupling_scale >= 0.0 && self.coupling_scale.is_finite()) {
            return Err(Error::config("integrator.coupling_scale", "must be finite and >= 0"));
        }
        if self.enforce_constraint && !medium.is_field_free() {
            return Err(Error::config(
                "integrator.enforce_constraint",
                "the momentum constraint only holds in a field-free medium",
            ));
        }
        Ok(())
    }
}

pub fn default_d_tau(epsilon: f64) -> f64 {
    let r = 0.25 / epsilon;
    0.1 * r * r
}

/// Largest Δτ kept for a fan whose neighbouring launch labels are `spacing`
/// apart. The stiffest dispersive mode of the fan scales as 1/spacing².
pub fn stable_d_tau(spacing: f64) -> f64 {
    7.0 * spacing * spacing
}

/// Default Δτ for a fan: [`default_d_tau`], reduced for fine fans.
pub fn auto_d_tau(epsilon: f64, fan: &FanSpec) -> f64 {
    let h = (fan.xi_max - fan.xi_min) / (fan.n_rays.max(2) - 1) as f64;
    default_d_tau(epsilon).min(stable_d_tau(h))
}

/// Steps of size `d_tau` needed to travel `zeta`.
pub fn steps_to(zeta: f64, d_tau: f64) -> usize {
    (zeta / d_tau).ceil().max(1.0) as usize
}

/// Launch-fan geometry.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FanSpec {
    pub n_rays: usize,
    pub xi_min: f64,
    pub xi_max: f64,
    pub amplitude_floor: f64,
}

impl FanSpec {
    pub fn auto(profile: &LaunchProfile) -> Self {
        let h = profile.default_half_width();
        Self {
            n_rays: profile.default_n_rays(),
            xi_min: -h,
            xi_max: h,
            amplitude_floor: AMPLITUDE_FLOOR,
        }
    }
}

type Vec2 = [f64; 2];

/// Acceleration field for one fan's fixed data.
struct Dynamics<'a> {
    medium: &'a Medium,
    cfg: &'a IntegratorConfig,
    flux: &'a [f64],
    shape: &'a [f64],
    min_width: f64,
    step: usize,
}

impl Dynamics<'_> {
    fn wave(&self, pos: &[Vec2], mom: &[Vec2]) -> Result<Vec<Vec2>> {
        let crossed = |j: usize| Error::Caustic {
            step: self.step,
            left: j,
            right: j + 1,
        };
        match self.cfg.coupling {
            Coupling::FluxTube => flux_tube_gradient(pos, mom, self.flux, self.min_width).map_err(crossed),
            Coupling::Transported => direct_gradient(pos, mom, self.shape).map_err(crossed),
        }
    }

    fn accel(&self, pos: &[Vec2], mom: &[Vec2], frozen: Option<&[Vec2]>) -> Result<Vec<Vec2>> {
        let k = COUPLING * self.cfg.coupling_scale;
        let mut a = if self.cfg.go_limit_mode {
            vec![[0.0; 2]; pos.len()]
        } else {
            let w = match frozen {
                Some(w) => w.to_vec(),
                None => self.wave(pos, mom)?,
            };
            w.iter().map(|g| [k * g[0], k * g[1]]).collect()
        };
        for (ai, p) in a.iter_mut().zip(pos) {
            if let Some(f) = self.medium.force(p[0], p[1]) {
                ai[0] += f[0];
                ai[1] += f[1];
            }
        }
        Ok(a)
    }
}

/// The direct coupling on raw arrays: G = R''/R in chord length, ∇G = G'·t.
fn direct_gradient(pos: &[Vec2], mom: &[Vec2], shape: &[f64]) -> std::result::Result<Vec<Vec2>, usize> {
    if let Some(j) = pos.windows(2).position(|w| !(w[0][0] < w[1][0])) {
        return Err(j);
    }
    let mut s = vec![0.0];
    for w in pos.windows(2) {
        s.push(s.last().unwrap() + (w[1][0] - w[0][0]).hypot(w[1][1] - w[0][1]));
    }
    let peak = shape.iter().cloned().fold(0.0, f64::max);
    let (_, d2) = lagrange3(&s, shape);
    let g: Vec<f64> = d2
        .iter()
        .zip(shape)
        .map(|(d, &r)| if r < AMPLITUDE_FLOOR * peak { 0.0 } else { d / r })
        .collect();
    let (d1, _) = lagrange3(&s, &g);
    Ok(d1
        .iter()
        .zip(mom)
        .map(|(d, &m)| {
            let t = transverse_unit(m);
            [d * t[0], d * t[1]]
        })
        .collect())
}

fn axpy(x: &[Vec2], h: f64, d: &[Vec2]) -> Vec<Vec2> {
    x.iter().zip(d).map(|(a, b)| [a[0] + h * b[0], a[1] + h * b[1]]).collect()
}

fn min_width_for(fan: &WavefrontFan, cfg: &IntegratorConfig) -> f64 {
    match cfg.caustic_policy {
        CausticPolicy::Halt => 0.0,
        CausticPolicy::SortAndContinue => {
            let n = fan.len();
            let span = fan.rays[n - 1].launch_label() - fan.rays[0].launch_label();
            1e-6 * span.abs() / (n - 1) as f64
        }
    }
}

/// Fills `g_values` and `g_gradient` for the fan's current state.
pub fn compute_wave_potential(fan: &mut WavefrontFan, cfg: &IntegratorConfig) -> Result<()> {
    let n = fan.len();
    if cfg.go_limit_mode {
        fan.g_values = vec![0.0; n];
        fan.g_gradient = vec![[0.0; 2]; n];
        return Ok(());
    }
    match cfg.coupling {
        Coupling::FluxTube => {
            let pos: Vec<Vec2> = fan.rays.iter().map(|r| [r.xi, r.zeta]).collect();
            let mom: Vec<Vec2> = fan.rays.iter().map(|r| [r.rho_x, r.rho_z]).collect();
            let grad = flux_tube_gradient(&pos, &mom, &fan.interval_flux, min_width_for(fan, cfg)).map_err(|j| {
                Error::Caustic {
                    step: fan.step_index,
                    left: j,
                    right: j + 1,
                }
            })?;
            fan.g_values = flux_tube_g(&pos, &mom, &fan.interval_flux);
            fan.g_gradient = grad;
        }
        Coupling::Transported => {
            let param = parametrize(fan)?;
            let g = second_derivative_on_fan(fan, &param)?;
            fan.g_gradient = wave_potential_gradient(fan, &param, &g);
            fan.g_values = g;
        }
    }
    Ok(())
}

/// Equal substeps needed for one Δτ on the fan as it stands: gathering rays
/// narrow their tubes and stiffen the coupling.
pub fn substeps(fan: &WavefrontFan, cfg: &IntegratorConfig) -> usize {
    if cfg.go_limit_mode {
        return 1;
    }
    let w = fan
        .rays
        .windows(2)
        .map(|p| (p[1].xi - p[0].xi).hypot(p[1].zeta - p[0].zeta))
        .fold(f64::INFINITY, f64::min);
    let m = (cfg.d_tau / stable_d_tau(w)).ceil();
    if m.is_finite() {
        m.clamp(1.0, MAX_SUBSTEPS as f64) as usize
    } else {
        MAX_SUBSTEPS
    }
}

const MAX_SUBSTEPS: usize = 256;

/// Advances the fan by one Δτ, in [`substeps`] equal pieces. The fan's
/// `g_gradient` must be fresh; it is the first-stage coupling.
pub fn step(fan: &WavefrontFan, medium: &Medium, cfg: &IntegratorConfig) -> Result<WavefrontFan> {
    let m = substeps(fan, cfg);
    if m == 1 {
        return advance(fan, medium, cfg, cfg.d_tau);
    }
    let h = cfg.d_tau / m as f64;
    let mut cur = advance(fan, medium, cfg, h)?;
    for _ in 1..m {
        cur.step_index = fan.step_index;
        compute_wave_potential(&mut cur, cfg)?;
        cur = advance(&cur, medium, cfg, h)?;
    }
    cur.common_tau = fan.common_tau + cfg.d_tau;
    for r in &mut cur.rays {
        r.tau = cur.common_tau;
    }
    Ok(cur)
}

fn advance(fan: &WavefrontFan, medium: &Medium, cfg: &IntegratorConfig, h: f64) -> Result<WavefrontFan> {
    let dyn_ = Dynamics {
        medium,
        cfg,
        flux: &fan.interval_flux,
        shape: &fan.shape,
        min_width: min_width_for(fan, cfg),
        step: fan.step_index,
    };
    let pos: Vec<Vec2> = fan.rays.iter().map(|r| [r.xi, r.zeta]).collect();
    let mom: Vec<Vec2> = fan.rays.iter().map(|r| [r.rho_x, r.rho_z]).collect();
    let frozen = fan.g_gradient.as_slice();
    let stage_frozen = match cfg.g_refresh {
        GRefresh::Stage => None,
        GRefresh::Step => Some(frozen),
    };
    let (new_pos, new_mom) = match cfg.scheme {
        Scheme::Rk4 => {
            let a1 = dyn_.accel(&pos, &mom, Some(frozen))?;
            let (p2, m2) = (axpy(&pos, h / 2.0, &mom), axpy(&mom, h / 2.0, &a1));
            let a2 = dyn_.accel(&p2, &m2, stage_frozen)?;
            let (p3, m3) = (axpy(&pos, h / 2.0, &m2), axpy(&mom, h / 2.0, &a2));
            let a3 = dyn_.accel(&p3, &m3, stage_frozen)?;
            let (p4, m4) = (axpy(&pos, h, &m3), axpy(&mom, h, &a3));
            let a4 = dyn_.accel(&p4, &m4, stage_frozen)?;
            let combine = |x: &[Vec2], k1: &[Vec2], k2: &[Vec2], k3: &[Vec2], k4: &[Vec2]| -> Vec<Vec2> {
                (0..x.len())
                    .map(|i| {
                        let mut o = x[i];
                        for c in 0..2 {
                            o[c] += h / 6.0 * (k1[i][c] + 2.0 * k2[i][c] + 2.0 * k3[i][c] + k4[i][c]);
                        }
                        o
                    })
                    .collect()
            };
            (combine(&pos, &mom, &m2, &m3, &m4), combine(&mom, &a1, &a2, &a3, &a4))
        }
        Scheme::Leapfrog => {
            let a0 = dyn_.accel(&pos, &mom, Some(frozen))?;
            let half = axpy(&mom, h / 2.0, &a0);
            let p1 = axpy(&pos, h, &half);
            let a1 = dyn_.accel(&p1, &half, stage_frozen)?;
            (p1, axpy(&half, h / 2.0, &a1))
        }
    };

    let mut next = fan.clone();
    next.step_index += 1;
    next.common_tau = fan.common_tau + h;
    for (i, r) in next.rays.iter_mut().enumerate() {
        r.xi = new_pos[i][0];
        r.zeta = new_pos[i][1];
        r.rho_x = new_mom[i][0];
        r.rho_z = new_mom[i][1];
        r.tau = next.common_tau;
        if ![r.xi, r.zeta, r.rho_x, r.rho_z].iter().all(|v| v.is_finite()) {
            return Err(Error::NumericalBlowup {
                step: next.step_index,
                ray: i,
            });
        }
    }
    if !cfg.go_limit_mode {
        if let Some(i) = next.first_crossing() {
            match cfg.caustic_policy {
                CausticPolicy::Halt => {
                    return Err(Error::Caustic {
                        step: next.step_index,
                        left: i,
                        right: i + 1,
                    })
                }
                CausticPolicy::SortAndContinue => sort_by_xi(&mut next),
            }
        }
    }
    Ok(next)
}

fn sort_by_xi(fan: &mut WavefrontFan) {
    let mut idx: Vec<usize> = (0..fan.len()).collect();
    idx.sort_by(|&a, &b| fan.rays[a].xi.total_cmp(&fan.rays[b].xi));
    fan.rays = idx.iter().map(|&i| fan.rays[i]).collect();
    fan.shape = idx.iter().map(|&i| fan.shape[i]).collect();
}

/// ρz ← √(1 - ρx²) with the sign of ρz kept.
pub fn enforce_momentum_constraint(fan: &mut WavefrontFan) -> Result<()> {
    for (i, r) in fan.rays.iter_mut().enumerate() {
        if r.rho_x.abs() >= 1.0 {
            return Err(Error::TurnedRay {
                step: fan.step_index,
                ray: i,
                rho_x: r.rho_x,
            });
        }
        let z = (1.0 - r.rho_x * r.rho_x).sqrt();
        r.rho_z = if r.rho_z < 0.0 { -z } else { z };
    }
    Ok(())
}

/// Largest deviation of |ρ| from its energy-conserving value.
pub fn momentum_drift(fan: &WavefrontFan, medium: &Medium) -> f64 {
    fan.rays
        .iter()
        .map(|r| (r.momentum_norm() - medium.momentum_magnitude(r.xi, r.zeta)).abs())
        .fold(0.0, f64::max)
}

/// Launches the fan described by `fan_spec` and integrates it.
pub fn run(
    profile: &LaunchProfile,
    medium: &Medium,
    fan_spec: &FanSpec,
    cfg: &IntegratorConfig,
) -> Result<TrajectoryBundle> {
    let fan = sample_fan_in(
        profile,
        fan_spec.n_rays,
        fan_spec.xi_min,
        fan_spec.xi_max,
        fan_spec.amplitude_floor,
        medium,
    )?;
    let mut bundle = run_fan(fan, medium, cfg)?;
    bundle.config.insert("profile".into(), profile.describe());
    Ok(bundle)
}

fn snapshot(fan: &WavefrontFan) -> Snapshot {
    Snapshot {
        step: fan.step_index,
        tau: fan.common_tau,
        rays: fan.rays.clone(),
        g: fan.g_values.clone(),
    }
}

fn config_snapshot(cfg: &IntegratorConfig, n_rays: usize) -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    if let Ok(serde_json::Value::Object(o)) = serde_json::to_value(cfg) {
        for (k, v) in o {
            let s = match v {
                serde_json::Value::String(s) => s,
                other => other.to_string(),
            };
            m.insert(format!("integrator.{k}"), s);
        }
    }
    m.insert("fan.n_rays".into(), n_rays.to_string());
    m
}

/// Integrates a ready-made fan: compute G, step, optionally project, record.
///
/// Failures after launch come back as [`Error::Halted`] carrying every
/// snapshot recorded before the failure.
pub fn run_fan(mut fan: WavefrontFan, medium: &Medium, cfg: &IntegratorConfig) -> Result<TrajectoryBundle> {
    cfg.validate(medium)?;
    let start = Instant::now();
    let n = fan.len();
    let mut bundle = TrajectoryBundle {
        snapshots: Vec::new(),
        config: config_snapshot(cfg, n),
        diagnostics: Diagnostics {
            low_confidence_rays: vec![0, 1, n - 2, n - 1],
            ..Default::default()
        },
    };
    let halt = |e: Error, mut b: TrajectoryBundle, t: Instant| {
        b.diagnostics.wall_time_s = t.elapsed().as_secs_f64();
        Error::Halted {
            cause: Box::new(e),
            partial: Box::new(b),
        }
    };
    let mut recorded_drift: f64 = 0.0;
    for k in 0..=cfg.n_steps {
        if let Err(e) = compute_wave_potential(&mut fan, cfg) {
            return Err(halt(e, bundle, start));
        }
        if k % cfg.record_every == 0 || k == cfg.n_steps {
            recorded_drift = recorded_drift.max(momentum_drift(&fan, medium));
            bundle.diagnostics.max_drift_recorded = recorded_drift;
            bundle.snapshots.push(snapshot(&fan));
        }
        if k == cfg.n_steps {
            break;
        }
        let mut next = match step(&fan, medium, cfg) {
            Ok(f) => f,
            Err(e) => return Err(halt(e, bundle, start)),
        };
        let ordered = next.rays.windows(2).all(|w| w[0].launch_label() < w[1].launch_label());
        if !ordered && bundle.diagnostics.monotone.iter().all(|m| *m) {
            bundle.diagnostics.warnings.push(format!(
                "rays crossed at step {}; continuing on the re-sorted fan",
                next.step_index
            ));
        }
        bundle.diagnostics.monotone.push(ordered);
        bundle.diagnostics.drift_pre_constraint.push(momentum_drift(&next, medium));
        if cfg.enforce_constraint {
            if let Err(e) = enforce_momentum_constraint(&mut next) {
                return Err(halt(e, bundle, start));
            }
        }
        fan = next;
    }
    bundle.diagnostics.wall_time_s = start.elapsed().as_secs_f64();
    Ok(bundle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beam_model::ScalarField;
    use crate::launch_profiles::{custom_samples, gaussian, sample_fan};

    fn flat() -> LaunchProfile {
        custom_samples(vec![-100.0, 100.0], vec![1.0, 1.0], 0.25).unwrap()
    }

    #[test]
    fn flat_fan_goes_straight() {
        let mut cfg = IntegratorConfig::default();
        cfg.n_steps = 50;
        cfg.d_tau = 0.37;
        let fan = sample_fan(&flat(), 21, -10.0, 10.0).unwrap();
        let b = run_fan(fan.clone(), &Medium::vacuum(), &cfg).unwrap();
        let last = b.last().unwrap();
        for (r, r0) in last.rays.iter().zip(&fan.rays) {
            assert_eq!(r.xi, r0.xi);
            assert!((r.zeta - 50.0 * 0.37).abs() < 1e-12);
        }
        assert_eq!(b.snapshots.len(), 51);
    }

    #[test]
    fn rejects_bad_config() {
        let v = Medium::vacuum();
        let mut c = IntegratorConfig::default();
        c.n_steps = 0;
        assert!(c.validate(&v).is_err());
        let mut c = IntegratorConfig::default();
        c.d_tau = -1.0;
        assert!(c.validate(&v).is_err());
        let c = IntegratorConfig::default();
        let m = Medium::potential(ScalarField::Linear { c0: 0.0, g_xi: 0.01, g_zeta: 0.0 });
        assert!(c.validate(&m).is_err());
    }

    #[test]
    fn constraint_projection() {
        let mut fan = sample_fan(&flat(), 5, -2.0, 2.0).unwrap();
        fan.rays[1].rho_x = 0.6;
        fan.rays[1].rho_z = 0.7;
        enforce_momentum_constraint(&mut fan).unwrap();
        assert_eq!(fan.rays[0].rho_z, 1.0);
        assert!((fan.rays[1].rho_z - 0.8).abs() < 1e-15);
        fan.rays[2].rho_x = 1.0;
        assert!(matches!(enforce_momentum_constraint(&mut fan), Err(Error::TurnedRay { ray: 2, .. })));
    }

    #[test]
    fn uniform_force_parabola() {
        let f = 0.01;
        let medium = Medium::potential(ScalarField::Linear { c0: 0.0, g_xi: -2.0 * f, g_zeta: 0.0 });
        let mut cfg = IntegratorConfig::default();
        cfg.go_limit_mode = true;
        cfg.enforce_constraint = false;
        cfg.n_steps = 200;
        let fan = sample_fan(&gaussian(0.25).unwrap(), 5, -2.0, 2.0).unwrap();
        let b = run_fan(fan, &medium, &cfg).unwrap();
        let r = b.last().unwrap().rays[2];
        let tau = r.tau;
        assert!((r.xi - f * tau * tau / 2.0).abs() < 1e-12);
        assert!((r.rho_x - f * tau).abs() < 1e-14);
    }

    #[test]
    fn gathering_rays_take_substeps() {
        let p = gaussian(0.25).unwrap();
        let mut fan = sample_fan(&p, 41, -8.0, 8.0).unwrap();
        let cfg = IntegratorConfig::default();
        assert_eq!(substeps(&fan, &cfg), 1);
        fan.rays[20].xi = fan.rays[19].xi + 0.04;
        assert_eq!(substeps(&fan, &cfg), 9);
        fan.rays[20].xi = fan.rays[19].xi;
        assert_eq!(substeps(&fan, &cfg), 256);
        let go = IntegratorConfig { go_limit_mode: true, ..cfg };
        assert_eq!(substeps(&fan, &go), 1);
    }

    #[test]
    fn caustic_halts_with_partial_bundle() {
        let p = gaussian(0.25).unwrap();
        let mut cfg = IntegratorConfig::default();
        cfg.coupling = Coupling::Transported;
        cfg.n_steps = 2000;
        let err = run(&p, &Medium::vacuum(), &FanSpec::auto(&p), &cfg).unwrap_err();
        match err {
            Error::Halted { partial, .. } => assert!(!partial.snapshots.is_empty()),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn gaussian_spreads_symmetrically() {
        let p = gaussian(0.25).unwrap();
        let mut cfg = IntegratorConfig::default();
        cfg.n_steps = 300;
        let b = run(&p, &Medium::vacuum(), &FanSpec::auto(&p), &cfg).unwrap();
        let last = b.last().unwrap();
        let n = last.rays.len();
        assert!(last.rays[n - 1].xi > 12.0);
        for i in 0..n {
            assert!((last.rays[i].xi + last.rays[n - 1 - i].xi).abs() < 1e-10);
        }
    }
}
