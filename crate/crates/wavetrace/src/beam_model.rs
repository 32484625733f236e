//! Domain types and the physical/dimensionless and optical/quantum mappings.
//!
//! Everything downstream works in units of the reference wavelength λ0:
//! ξ = x/λ0, ζ = z/λ0, ρ = p/p0 (or k/k0), and τ is the distance travelled
//! by a reference ray in wavelengths. In these units the motion is
//!
//! ```text
//! dξ/dτ = ρ,   dρ/dτ = -∇(V/2E) + C ∇G,   C = 1/(8π²)
//! ```
//!
//! for both front-ends, with n² = 1 - V/E.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

/// Coefficient of the wave-potential term.
pub const COUPLING: f64 = 1.0 / (8.0 * PI * PI);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FrontEnd {
    Optical,
    Quantum,
}

/// Physical reference scales of one front-end.
///
/// Optical scales leave the particle fields empty and quantum scales leave
/// the light fields empty; every stored value is strictly positive.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalScales {
    pub front_end: FrontEnd,
    pub wavelength_lambda0: f64,
    pub wavenumber_k0: f64,
    pub angular_frequency_omega: Option<f64>,
    pub light_speed_c: Option<f64>,
    pub particle_mass_m: Option<f64>,
    pub total_energy_e: Option<f64>,
    pub reference_momentum_p0: Option<f64>,
    pub action_hbar: Option<f64>,
    pub beam_half_width_w0: f64,
    pub epsilon: f64,
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::Domain(format!("{name} must be finite and positive, got {v}")))
    }
}

fn check_epsilon(eps: f64) -> Result<f64> {
    if eps > 0.0 && eps <= 1.0 {
        Ok(eps)
    } else {
        Err(Error::Domain(format!(
            "epsilon = lambda0/w0 must lie in (0, 1], got {eps}"
        )))
    }
}

impl PhysicalScales {
    /// Monochromatic light of wavelength `lambda0` in a beam of half-width `w0`.
    pub fn optical(lambda0: f64, c: f64, w0: f64) -> Result<Self> {
        let lambda0 = positive("lambda0", lambda0)?;
        let c = positive("c", c)?;
        let w0 = positive("w0", w0)?;
        let k0 = 2.0 * PI / lambda0;
        Ok(Self {
            front_end: FrontEnd::Optical,
            wavelength_lambda0: lambda0,
            wavenumber_k0: k0,
            angular_frequency_omega: Some(c * k0),
            light_speed_c: Some(c),
            particle_mass_m: None,
            total_energy_e: None,
            reference_momentum_p0: None,
            action_hbar: None,
            beam_half_width_w0: w0,
            epsilon: check_epsilon(lambda0 / w0)?,
        })
    }

    /// Particles of mass `m` and total energy `e`, with p0 = √(2mE) and λ0 = 2πħ/p0.
    pub fn quantum(m: f64, e: f64, hbar: f64, w0: f64) -> Result<Self> {
        let m = positive("m", m)?;
        let e = positive("E", e)?;
        let hbar = positive("hbar", hbar)?;
        let w0 = positive("w0", w0)?;
        let p0 = (2.0 * m * e).sqrt();
        let k0 = p0 / hbar;
        let lambda0 = 2.0 * PI / k0;
        Ok(Self {
            front_end: FrontEnd::Quantum,
            wavelength_lambda0: lambda0,
            wavenumber_k0: k0,
            angular_frequency_omega: None,
            light_speed_c: None,
            particle_mass_m: Some(m),
            total_energy_e: Some(e),
            reference_momentum_p0: Some(p0),
            action_hbar: Some(hbar),
            beam_half_width_w0: w0,
            epsilon: check_epsilon(lambda0 / w0)?,
        })
    }

    /// Momentum scale: p0 for particles, k0 for light.
    pub fn momentum_unit(&self) -> f64 {
        self.reference_momentum_p0.unwrap_or(self.wavenumber_k0)
    }

    /// Physical time that corresponds to τ = 1.
    pub fn time_unit(&self) -> f64 {
        match self.front_end {
            FrontEnd::Optical => self.wavelength_lambda0 / self.light_speed_c.unwrap_or(1.0),
            FrontEnd::Quantum => {
                let v0 = self.reference_momentum_p0.unwrap_or(1.0)
                    / self.particle_mass_m.unwrap_or(1.0);
                self.wavelength_lambda0 / v0
            }
        }
    }

    /// v_ph = c/n.
    pub fn phase_velocity(&self, n: f64) -> Option<f64> {
        self.light_speed_c.map(|c| c / n)
    }

    /// Ray (group) speed c·|k|/k0 for a wavevector of magnitude `k`.
    pub fn ray_speed(&self, k: f64) -> Option<f64> {
        self.light_speed_c.map(|c| c * k / self.wavenumber_k0)
    }

    /// Inverse of [`to_dimensionless`]: position, momentum and time in physical units.
    pub fn to_physical(&self, s: &RayState) -> ([f64; 2], [f64; 2], f64) {
        let l = self.wavelength_lambda0;
        let p = self.momentum_unit();
        (
            [s.xi * l, s.zeta * l],
            [s.rho_x * p, s.rho_z * p],
            s.tau * self.time_unit(),
        )
    }
}

/// Maps a physical ray state to dimensionless form. The launch label is the
/// current ξ and the carried amplitude is 1.
pub fn to_dimensionless(
    scales: &PhysicalScales,
    position: [f64; 2],
    momentum: [f64; 2],
    time: f64,
) -> Result<RayState> {
    let all = [position[0], position[1], momentum[0], momentum[1], time];
    if all.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("non-finite physical state".into()));
    }
    let l = scales.wavelength_lambda0;
    let p = scales.momentum_unit();
    let xi = position[0] / l;
    Ok(RayState {
        xi,
        zeta: position[1] / l,
        rho_x: momentum[0] / p,
        rho_z: momentum[1] / p,
        tau: time / scales.time_unit(),
        amplitude_r: 1.0,
        launch_label: xi,
    })
}

/// A scalar field on the (ξ, ζ) plane.
#[derive(Clone)]
pub enum ScalarField {
    Constant(f64),
    /// c0 + g_xi·ξ + g_zeta·ζ
    Linear { c0: f64, g_xi: f64, g_zeta: f64 },
    Custom {
        f: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
        grad: Option<Arc<dyn Fn(f64, f64) -> [f64; 2] + Send + Sync>>,
    },
    /// 1 - inner
    OneMinus(Box<ScalarField>),
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarField::Constant(c) => write!(f, "Constant({c})"),
            ScalarField::Linear { c0, g_xi, g_zeta } => {
                write!(f, "Linear({c0} + {g_xi} xi + {g_zeta} zeta)")
            }
            ScalarField::Custom { grad, .. } => {
                write!(f, "Custom(analytic gradient: {})", grad.is_some())
            }
            ScalarField::OneMinus(inner) => write!(f, "1 - {inner:?}"),
        }
    }
}

const FD_STEP: f64 = 1e-5;

impl ScalarField {
    pub fn value(&self, xi: f64, zeta: f64) -> f64 {
        match self {
            ScalarField::Constant(c) => *c,
            ScalarField::Linear { c0, g_xi, g_zeta } => c0 + g_xi * xi + g_zeta * zeta,
            ScalarField::Custom { f, .. } => f(xi, zeta),
            ScalarField::OneMinus(inner) => 1.0 - inner.value(xi, zeta),
        }
    }

    /// Analytic gradient where known, central differences otherwise.
    pub fn gradient(&self, xi: f64, zeta: f64) -> [f64; 2] {
        match self {
            ScalarField::Constant(_) => [0.0, 0.0],
            ScalarField::Linear { g_xi, g_zeta, .. } => [*g_xi, *g_zeta],
            ScalarField::Custom { grad: Some(g), .. } => g(xi, zeta),
            ScalarField::Custom { f, grad: None } => {
                let h = FD_STEP;
                [
                    (f(xi + h, zeta) - f(xi - h, zeta)) / (2.0 * h),
                    (f(xi, zeta + h) - f(xi, zeta - h)) / (2.0 * h),
                ]
            }
            ScalarField::OneMinus(inner) => {
                let g = inner.gradient(xi, zeta);
                [0.0 - g[0], 0.0 - g[1]]
            }
        }
    }

    pub fn is_uniform(&self) -> bool {
        match self {
            ScalarField::Constant(_) => true,
            ScalarField::Linear { g_xi, g_zeta, .. } => *g_xi == 0.0 && *g_zeta == 0.0,
            ScalarField::Custom { .. } => false,
            ScalarField::OneMinus(inner) => inner.is_uniform(),
        }
    }

    /// Folds `OneMinus` into closed forms where that is possible.
    fn simplified(self) -> ScalarField {
        match self {
            ScalarField::OneMinus(inner) => match inner.simplified() {
                ScalarField::Constant(c) => ScalarField::Constant(1.0 - c),
                ScalarField::Linear { c0, g_xi, g_zeta } => ScalarField::Linear {
                    c0: 1.0 - c0,
                    g_xi: 0.0 - g_xi,
                    g_zeta: 0.0 - g_zeta,
                },
                ScalarField::OneMinus(x) => *x,
                other => ScalarField::OneMinus(Box::new(other)),
            },
            ScalarField::Linear { c0, g_xi, g_zeta } if g_xi == 0.0 && g_zeta == 0.0 => {
                ScalarField::Constant(c0)
            }
            other => other,
        }
    }
}

/// n² ↦ V/E = 1 - n². Applying it twice returns the original field.
pub fn optical_quantum_bridge(field: ScalarField) -> ScalarField {
    match field {
        ScalarField::OneMinus(inner) => *inner,
        other => ScalarField::OneMinus(Box::new(other)),
    }
}

/// V/E = 1 - n² on plain numbers.
pub fn n_squared_to_potential(n_squared: f64) -> f64 {
    1.0 - n_squared
}

/// n² = 1 - V/E on plain numbers.
pub fn potential_to_n_squared(v_over_e: f64) -> f64 {
    1.0 - v_over_e
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MediumKind {
    Vacuum,
    Refractive,
    Potential,
}

/// The medium, stored internally as V/E whichever front-end built it.
#[derive(Debug, Clone)]
pub struct Medium {
    kind: MediumKind,
    potential: ScalarField,
}

impl Medium {
    pub fn vacuum() -> Self {
        Self {
            kind: MediumKind::Vacuum,
            potential: ScalarField::Constant(0.0),
        }
    }

    /// Optical medium from its n²(ξ, ζ) field.
    pub fn refractive(n_squared: ScalarField) -> Self {
        Self {
            kind: MediumKind::Refractive,
            potential: optical_quantum_bridge(n_squared).simplified(),
        }
    }

    /// Quantum medium from its V(ξ, ζ)/E field.
    pub fn potential(v_over_e: ScalarField) -> Self {
        Self {
            kind: MediumKind::Potential,
            potential: v_over_e.simplified(),
        }
    }

    pub fn kind(&self) -> MediumKind {
        self.kind
    }

    /// True when V/E vanishes identically.
    pub fn is_field_free(&self) -> bool {
        matches!(self.potential, ScalarField::Constant(c) if c == 0.0)
    }

    pub fn potential_over_e(&self, xi: f64, zeta: f64) -> f64 {
        self.potential.value(xi, zeta)
    }

    pub fn n_squared(&self, xi: f64, zeta: f64) -> f64 {
        potential_to_n_squared(self.potential_over_e(xi, zeta))
    }

    /// The field in its own front-end's terms: n² if refractive, V/E otherwise.
    pub fn field(&self, xi: f64, zeta: f64) -> f64 {
        match self.kind {
            MediumKind::Refractive => self.n_squared(xi, zeta),
            _ => self.potential_over_e(xi, zeta),
        }
    }

    /// -∇(V/2E), or `None` where the field is uniform.
    pub fn force(&self, xi: f64, zeta: f64) -> Option<[f64; 2]> {
        if self.potential.is_uniform() {
            return None;
        }
        let g = self.potential.gradient(xi, zeta);
        Some([-0.5 * g[0], -0.5 * g[1]])
    }

    /// |ρ| required by energy conservation at a point.
    pub fn momentum_magnitude(&self, xi: f64, zeta: f64) -> f64 {
        (1.0 - self.potential_over_e(xi, zeta)).sqrt()
    }

    /// Checks n² > 0 (equivalently V/E < 1) at every sampled point.
    pub fn validate(&self, points: &[[f64; 2]]) -> Result<()> {
        for p in points {
            let v = self.potential_over_e(p[0], p[1]);
            if !(v < 1.0) {
                let what = match self.kind {
                    MediumKind::Refractive => format!("n^2 = {} <= 0", 1.0 - v),
                    _ => format!("V/E = {v} >= 1"),
                };
                return Err(Error::Domain(format!(
                    "medium not propagating at (xi, zeta) = ({}, {}): {what}",
                    p[0], p[1]
                )));
            }
        }
        Ok(())
    }
}

/// One trajectory's dimensionless state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RayState {
    pub xi: f64,
    pub zeta: f64,
    pub rho_x: f64,
    pub rho_z: f64,
    pub tau: f64,
    /// Carried amplitude, constant along the ray.
    pub amplitude_r: f64,
    launch_label: f64,
}

impl RayState {
    /// A ray at ζ = τ = 0 moving along +ζ with |ρ| = `rho_z`.
    pub fn launch(label: f64, amplitude_r: f64, rho_z: f64) -> Self {
        Self {
            xi: label,
            zeta: 0.0,
            rho_x: 0.0,
            rho_z,
            tau: 0.0,
            amplitude_r,
            launch_label: label,
        }
    }

    pub fn launch_label(&self) -> f64 {
        self.launch_label
    }

    pub fn momentum_norm(&self) -> f64 {
        self.rho_x.hypot(self.rho_z)
    }
}

/// The ordered rays at one common time, plus what the coupling needs.
#[derive(Debug, Clone)]
pub struct WavefrontFan {
    pub rays: Vec<RayState>,
    pub step_index: usize,
    pub common_tau: f64,
    /// Per-ray wave potential G.
    pub g_values: Vec<f64>,
    /// Per-ray (∂G/∂ξ, ∂G/∂ζ).
    pub g_gradient: Vec<[f64; 2]>,
    /// Launch amplitude shape per ray, free of the overall normalization.
    pub shape: Vec<f64>,
    /// Conserved flux R0²·Δlabel of each interval between neighbouring rays.
    pub interval_flux: Vec<f64>,
}

pub const MIN_RAYS: usize = 5;

impl WavefrontFan {
    pub fn new(rays: Vec<RayState>, shape: Vec<f64>, interval_flux: Vec<f64>) -> Result<Self> {
        let n = rays.len();
        if n < MIN_RAYS {
            return Err(Error::config(
                "fan.n_rays",
                format!("need at least {MIN_RAYS} rays, got {n}"),
            ));
        }
        if shape.len() != n || interval_flux.len() != n - 1 {
            return Err(Error::Domain("fan arrays have inconsistent lengths".into()));
        }
        if rays.windows(2).any(|w| !(w[0].launch_label < w[1].launch_label)) {
            return Err(Error::Domain(
                "rays must be ordered by strictly increasing launch label".into(),
            ));
        }
        let tau = rays[0].tau;
        if rays.iter().any(|r| r.tau != tau) {
            return Err(Error::Domain("rays do not share a common tau".into()));
        }
        Ok(Self {
            rays,
            step_index: 0,
            common_tau: tau,
            g_values: vec![0.0; n],
            g_gradient: vec![[0.0; 2]; n],
            shape,
            interval_flux,
        })
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn labels(&self) -> Vec<f64> {
        self.rays.iter().map(|r| r.launch_label).collect()
    }

    /// Index of the first ray pair whose ξ order is broken.
    pub fn first_crossing(&self) -> Option<usize> {
        self.rays.windows(2).position(|w| !(w[0].xi < w[1].xi))
    }
}

/// One recorded step.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub step: usize,
    pub tau: f64,
    pub rays: Vec<RayState>,
    pub g: Vec<f64>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Diagnostics {
    /// Per step: max over rays of ||ρ| - |ρ|_required| before any constraint projection.
    pub drift_pre_constraint: Vec<f64>,
    /// Max of the same quantity over every recorded state.
    pub max_drift_recorded: f64,
    /// Per step: ξ order of the rays still matches their launch order.
    pub monotone: Vec<bool>,
    /// Rays whose coupling comes from one-sided or extrapolated stencils.
    pub low_confidence_rays: Vec<usize>,
    pub warnings: Vec<String>,
    pub wall_time_s: f64,
}

/// Full simulation output.
#[derive(Debug, Clone, Default)]
pub struct TrajectoryBundle {
    pub snapshots: Vec<Snapshot>,
    pub config: BTreeMap<String, String>,
    pub diagnostics: Diagnostics,
}

impl TrajectoryBundle {
    pub fn n_rays(&self) -> usize {
        self.snapshots.first().map_or(0, |s| s.rays.len())
    }

    pub fn labels(&self) -> Vec<f64> {
        self.snapshots
            .first()
            .map(|s| s.rays.iter().map(|r| r.launch_label).collect())
            .unwrap_or_default()
    }

    pub fn last(&self) -> Option<&Snapshot> {
        self.snapshots.last()
    }

    /// Time series of one ray.
    pub fn trajectory(&self, ray: usize) -> Vec<RayState> {
        self.snapshots.iter().map(|s| s.rays[ray]).collect()
    }

    /// Smallest final ζ over all rays: every ray has reached it.
    pub fn zeta_reached(&self) -> f64 {
        self.last().map_or(0.0, |s| {
            s.rays.iter().map(|r| r.zeta).fold(f64::INFINITY, f64::min)
        })
    }

    /// ξ of one ray where it crosses the plane ζ = `zeta`, linear between records.
    pub fn xi_at_zeta(&self, ray: usize, zeta: f64) -> Option<f64> {
        let mut prev: Option<&RayState> = None;
        for s in &self.snapshots {
            let r = &s.rays[ray];
            if r.zeta == zeta {
                return Some(r.xi);
            }
            if let Some(p) = prev {
                if (p.zeta - zeta) * (r.zeta - zeta) < 0.0 {
                    let t = (zeta - p.zeta) / (r.zeta - p.zeta);
                    return Some(p.xi + t * (r.xi - p.xi));
                }
            }
            prev = Some(r);
        }
        None
    }

    /// ξ of every ray on the plane ζ = `zeta`.
    pub fn positions_at_zeta(&self, zeta: f64) -> Result<Vec<f64>> {
        let reached = self.zeta_reached();
        (0..self.n_rays())
            .map(|i| {
                self.xi_at_zeta(i, zeta)
                    .ok_or(Error::Range { zeta, reached })
            })
            .collect()
    }

    /// ξ of every ray on each of the ascending planes `zetas`; `None` for
    /// planes some ray never reaches.
    pub fn positions_at_planes(&self, zetas: &[f64]) -> Vec<Option<Vec<f64>>> {
        let mut out: Vec<Option<Vec<f64>>> = vec![Some(Vec::with_capacity(self.n_rays())); zetas.len()];
        for ray in 0..self.n_rays() {
            let increasing = self.snapshots.windows(2).all(|w| w[0].rays[ray].zeta < w[1].rays[ray].zeta);
            let mut k = 0;
            for (j, &z) in zetas.iter().enumerate() {
                let xi = if increasing {
                    while k + 1 < self.snapshots.len() && self.snapshots[k + 1].rays[ray].zeta < z {
                        k += 1;
                    }
                    self.xi_at_zeta_from(ray, z, k)
                } else {
                    self.xi_at_zeta(ray, z)
                };
                match (xi, &mut out[j]) {
                    (Some(x), Some(v)) => v.push(x),
                    _ => out[j] = None,
                }
            }
        }
        out
    }

    fn xi_at_zeta_from(&self, ray: usize, zeta: f64, k: usize) -> Option<f64> {
        let a = &self.snapshots.get(k)?.rays[ray];
        if a.zeta == zeta {
            return Some(a.xi);
        }
        let b = &self.snapshots.get(k + 1)?.rays[ray];
        if b.zeta == zeta {
            return Some(b.xi);
        }
        ((a.zeta - zeta) * (b.zeta - zeta) < 0.0).then(|| {
            let t = (zeta - a.zeta) / (b.zeta - a.zeta);
            a.xi + t * (b.xi - a.xi)
        })
    }

    /// Bitwise comparison of every recorded position, momentum, time and G.
    /// Carried amplitudes and diagnostics are not compared.
    pub fn same_trajectories(&self, other: &TrajectoryBundle) -> bool {
        self.snapshots.len() == other.snapshots.len()
            && self.snapshots.iter().zip(&other.snapshots).all(|(a, b)| {
                a.step == b.step
                    && a.tau.to_bits() == b.tau.to_bits()
                    && a.g.len() == b.g.len()
                    && a.g.iter().zip(&b.g).all(|(x, y)| x.to_bits() == y.to_bits())
                    && a.rays.len() == b.rays.len()
                    && a.rays.iter().zip(&b.rays).all(|(r, q)| {
                        [r.xi, r.zeta, r.rho_x, r.rho_z, r.tau, r.launch_label]
                            .iter()
                            .zip([q.xi, q.zeta, q.rho_x, q.rho_z, q.tau, q.launch_label])
                            .all(|(x, y)| x.to_bits() == y.to_bits())
                    })
            })
    }
}
