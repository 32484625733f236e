//! Run configuration: a plain-text file of `key = value` lines with flat
//! dotted keys. `#` starts a comment. Any key may be omitted; `auto`
//! values are derived from the profile.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use crate::beam_model::{FrontEnd, Medium, MediumKind, ScalarField};
use crate::error::{Error, Result};
use crate::integrator::{
    auto_d_tau, steps_to, CausticPolicy, Coupling, FanSpec, GRefresh, IntegratorConfig, Scheme,
};
use crate::launch_profiles::{algebraic, custom_samples, gaussian, two_beam, LaunchProfile};
use crate::oracles::{rayleigh_range, GridSpec};

/// (key, default, description)
pub const KEYS: &[(&str, &str, &str)] = &[
    ("front_end", "optical", "optical | quantum"),
    ("profile.kind", "gaussian", "gaussian | algebraic | two_beam | custom"),
    ("profile.epsilon", "0.25", "lambda0/w0, in (0, 1]"),
    ("profile.n", "1", "algebraic order N"),
    ("profile.base", "gaussian", "two_beam base: gaussian | algebraic"),
    ("profile.xi0", "8", "two_beam half-separation"),
    ("profile.samples", "", "custom: csv of xi,R rows, relative to this file"),
    ("profile.scale", "1", "overall amplitude factor"),
    ("medium.kind", "vacuum", "vacuum | refractive (n^2 field) | potential (V/E field)"),
    ("medium.c0", "auto", "field value at the origin (auto: 1 for n^2, 0 for V/E)"),
    ("medium.grad_xi", "0", "field gradient along xi"),
    ("medium.grad_zeta", "0", "field gradient along zeta"),
    ("fan.n_rays", "auto", "auto: 201 gaussian, 401 otherwise"),
    ("fan.xi_min", "auto", "auto: -3/eps gaussian, -12/eps algebraic"),
    ("fan.xi_max", "auto", "auto: mirror of xi_min"),
    ("fan.amplitude_floor", "1e-8", "rays need R above this fraction of the peak"),
    ("integrator.d_tau", "auto", "auto: 0.1*(0.25/eps)^2, reduced to 7*h^2 for ray spacing h"),
    ("integrator.n_steps", "auto", "auto: enough to reach zeta = 4*pi/eps^2"),
    ("integrator.scheme", "rk4", "rk4 | leapfrog"),
    ("integrator.coupling", "flux_tube", "flux_tube | transported"),
    ("integrator.g_refresh", "stage", "stage | step"),
    ("integrator.go_limit", "false", "drop the wave potential"),
    ("integrator.enforce_constraint", "auto", "auto: on in field-free media"),
    ("integrator.caustic_policy", "halt", "halt | sort_and_continue"),
    ("integrator.coupling_scale", "1", "multiplies 1/(8 pi^2)"),
    ("detector.zeta", "auto", "auto: 2*pi/eps^2"),
    ("detector.scan_step", "auto", "plane spacing for first gathering, auto: 0.01*pi/eps^2"),
    ("output.dir", "out", "artifact directory, relative to the working directory"),
    ("output.decimation", "1", "record every k-th step"),
    ("output.svg_max_rays", "80", "trajectories drawn in pattern.svg, spread by launch flux"),
    ("oracle.grid_length", "auto", "periodic domain length"),
    ("oracle.grid_points", "auto", "power of two"),
];

/// The text printed by `defaults`.
pub fn defaults_text() -> String {
    let mut s = String::new();
    for (k, v, doc) in KEYS {
        s.push_str(&format!("# {doc}\n{k} = {v}\n"));
    }
    s
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    values: BTreeMap<String, String>,
    base_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            values: KEYS.iter().map(|(k, v, _)| (k.to_string(), v.to_string())).collect(),
            base_dir: PathBuf::from("."),
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        let mut seen = std::collections::BTreeSet::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(Error::config(
                    format!("line {}", lineno + 1),
                    format!("expected `key = value`, got `{line}`"),
                ));
            };
            let (k, v) = (k.trim(), v.trim());
            if !seen.insert(k.to_string()) {
                return Err(Error::config(k, "given twice"));
            }
            cfg.set(k, v)?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config("config", format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = Self::parse(&text)?;
        cfg.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        if !self.values.contains_key(key) {
            return Err(Error::config(key, "unknown key (see `wavetrace defaults`)"));
        }
        self.values.insert(key.to_string(), value.to_string());
        Ok(())
    }

    pub fn get(&self, key: &str) -> &str {
        &self.values[key]
    }

    pub fn values(&self) -> &BTreeMap<String, String> {
        &self.values
    }

    fn auto(&self, key: &str) -> bool {
        self.get(key) == "auto"
    }

    fn f64(&self, key: &str) -> Result<f64> {
        let v = self.get(key);
        v.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| Error::config(key, format!("expected a number, got `{v}`")))
    }

    fn usize(&self, key: &str) -> Result<usize> {
        let v = self.get(key);
        v.parse::<usize>()
            .map_err(|_| Error::config(key, format!("expected a non-negative integer, got `{v}`")))
    }

    fn bool(&self, key: &str) -> Result<bool> {
        match self.get(key) {
            "true" | "yes" | "on" | "1" => Ok(true),
            "false" | "no" | "off" | "0" => Ok(false),
            v => Err(Error::config(key, format!("expected true or false, got `{v}`"))),
        }
    }

    fn choice<'a>(&self, key: &str, options: &[&'a str]) -> Result<&'a str> {
        let v = self.get(key);
        options
            .iter()
            .find(|o| **o == v)
            .copied()
            .ok_or_else(|| Error::config(key, format!("expected one of {}, got `{v}`", options.join(" | "))))
    }

    fn profile(&self) -> Result<LaunchProfile> {
        let eps = self.f64("profile.epsilon")?;
        let n = || -> Result<u32> {
            let n = self.usize("profile.n")?;
            u32::try_from(n).map_err(|_| Error::config("profile.n", "too large"))
        };
        let p = match self.choice("profile.kind", &["gaussian", "algebraic", "two_beam", "custom"])? {
            "gaussian" => gaussian(eps)?,
            "algebraic" => algebraic(eps, n()?)?,
            "two_beam" => {
                let base = match self.choice("profile.base", &["gaussian", "algebraic"])? {
                    "gaussian" => gaussian(eps)?,
                    _ => algebraic(eps, n()?)?,
                };
                two_beam(base, self.f64("profile.xi0")?)?
            }
            _ => {
                let rel = self.get("profile.samples");
                if rel.is_empty() {
                    return Err(Error::config("profile.samples", "custom profiles need a samples file"));
                }
                let (xi, r) = read_samples(&self.base_dir.join(rel))?;
                custom_samples(xi, r, eps)?
            }
        };
        let scale = self.f64("profile.scale")?;
        if !(scale > 0.0) {
            return Err(Error::config("profile.scale", "must be > 0"));
        }
        Ok(p.scaled(scale))
    }

    fn medium(&self, front_end: FrontEnd) -> Result<Medium> {
        let kind = self.choice("medium.kind", &["vacuum", "refractive", "potential"])?;
        match (front_end, kind) {
            (FrontEnd::Optical, "potential") => {
                return Err(Error::config("medium.kind", "the optical front-end takes a refractive medium"))
            }
            (FrontEnd::Quantum, "refractive") => {
                return Err(Error::config("medium.kind", "the quantum front-end takes a potential medium"))
            }
            _ => {}
        }
        let c0 = |default: f64| -> Result<f64> {
            if self.auto("medium.c0") {
                Ok(default)
            } else {
                self.f64("medium.c0")
            }
        };
        let (gx, gz) = (self.f64("medium.grad_xi")?, self.f64("medium.grad_zeta")?);
        Ok(match kind {
            "vacuum" => Medium::vacuum(),
            "refractive" => Medium::refractive(ScalarField::Linear {
                c0: c0(1.0)?,
                g_xi: gx,
                g_zeta: gz,
            }),
            _ => Medium::potential(ScalarField::Linear {
                c0: c0(0.0)?,
                g_xi: gx,
                g_zeta: gz,
            }),
        })
    }

    /// Validates every key and derives the `auto` values.
    pub fn resolve(&self) -> Result<Resolved> {
        let front_end = match self.choice("front_end", &["optical", "quantum"])? {
            "optical" => FrontEnd::Optical,
            _ => FrontEnd::Quantum,
        };
        let profile = self.profile()?;
        let eps = profile.epsilon;
        let medium = self.medium(front_end)?;

        let auto_fan = FanSpec::auto(&profile);
        let n_rays = if self.auto("fan.n_rays") { auto_fan.n_rays } else { self.usize("fan.n_rays")? };
        let xi_min = if self.auto("fan.xi_min") { auto_fan.xi_min } else { self.f64("fan.xi_min")? };
        let xi_max = match (self.auto("fan.xi_max"), self.auto("fan.xi_min")) {
            (false, _) => self.f64("fan.xi_max")?,
            (true, true) => auto_fan.xi_max,
            (true, false) => -xi_min,
        };
        let fan = FanSpec {
            n_rays,
            xi_min,
            xi_max,
            amplitude_floor: self.f64("fan.amplitude_floor")?,
        };
        if !(fan.amplitude_floor > 0.0 && fan.amplitude_floor < 1.0) {
            return Err(Error::config("fan.amplitude_floor", "must lie in (0, 1)"));
        }

        let mut integrator = IntegratorConfig::for_epsilon(eps);
        integrator.d_tau = if self.auto("integrator.d_tau") { auto_d_tau(eps, &fan) } else { self.f64("integrator.d_tau")? };
        if !(integrator.d_tau > 0.0) {
            return Err(Error::config("integrator.d_tau", "must be > 0"));
        }
        integrator.n_steps = if self.auto("integrator.n_steps") {
            steps_to(4.0 * PI / (eps * eps), integrator.d_tau)
        } else {
            self.usize("integrator.n_steps")?
        };
        integrator.scheme = match self.choice("integrator.scheme", &["rk4", "leapfrog"])? {
            "rk4" => Scheme::Rk4,
            _ => Scheme::Leapfrog,
        };
        integrator.coupling = match self.choice("integrator.coupling", &["flux_tube", "transported"])? {
            "flux_tube" => Coupling::FluxTube,
            _ => Coupling::Transported,
        };
        integrator.g_refresh = match self.choice("integrator.g_refresh", &["stage", "step"])? {
            "stage" => GRefresh::Stage,
            _ => GRefresh::Step,
        };
        integrator.go_limit_mode = self.bool("integrator.go_limit")?;
        integrator.enforce_constraint = if self.auto("integrator.enforce_constraint") {
            medium.is_field_free()
        } else {
            self.bool("integrator.enforce_constraint")?
        };
        integrator.caustic_policy = match self.choice("integrator.caustic_policy", &["halt", "sort_and_continue"])? {
            "halt" => CausticPolicy::Halt,
            _ => CausticPolicy::SortAndContinue,
        };
        integrator.coupling_scale = self.f64("integrator.coupling_scale")?;
        integrator.record_every = self.usize("output.decimation")?;
        integrator.validate(&medium)?;

        let detector_zeta = if self.auto("detector.zeta") { 2.0 * PI / (eps * eps) } else { self.f64("detector.zeta")? };
        if !(detector_zeta > 0.0) {
            return Err(Error::config("detector.zeta", "must be > 0"));
        }
        let scan_step = if self.auto("detector.scan_step") {
            0.01 * rayleigh_range(eps)
        } else {
            self.f64("detector.scan_step")?
        };
        if !(scan_step > 0.0) {
            return Err(Error::config("detector.scan_step", "must be > 0"));
        }

        let auto_grid = GridSpec::auto(&profile, fan.xi_min.abs().max(fan.xi_max.abs()));
        let grid = GridSpec {
            length: if self.auto("oracle.grid_length") { auto_grid.length } else { self.f64("oracle.grid_length")? },
            n_points: if self.auto("oracle.grid_points") { auto_grid.n_points } else { self.usize("oracle.grid_points")? },
        };

        let svg_max_rays = self.usize("output.svg_max_rays")?;
        if svg_max_rays < 2 {
            return Err(Error::config("output.svg_max_rays", "must be >= 2"));
        }
        Ok(Resolved {
            front_end,
            profile,
            medium,
            fan,
            integrator,
            detector_zeta,
            scan_step,
            grid,
            out_dir: PathBuf::from(self.get("output.dir")),
            svg_max_rays,
        })
    }

    /// Every key with `auto` replaced by the value actually used.
    pub fn effective(&self, r: &Resolved) -> BTreeMap<String, String> {
        let mut m = self.values.clone();
        let mut fill = |k: &str, v: String| {
            if m[k] == "auto" {
                m.insert(k.to_string(), v);
            }
        };
        fill("medium.c0", match r.medium.kind() {
            MediumKind::Refractive => r.medium.n_squared(0.0, 0.0).to_string(),
            _ => r.medium.potential_over_e(0.0, 0.0).to_string(),
        });
        fill("fan.n_rays", r.fan.n_rays.to_string());
        fill("fan.xi_min", r.fan.xi_min.to_string());
        fill("fan.xi_max", r.fan.xi_max.to_string());
        fill("integrator.d_tau", r.integrator.d_tau.to_string());
        fill("integrator.n_steps", r.integrator.n_steps.to_string());
        fill("integrator.enforce_constraint", r.integrator.enforce_constraint.to_string());
        fill("detector.zeta", r.detector_zeta.to_string());
        fill("detector.scan_step", r.scan_step.to_string());
        fill("oracle.grid_length", r.grid.length.to_string());
        fill("oracle.grid_points", r.grid.n_points.to_string());
        m
    }

    /// The config as text, one key per line.
    pub fn to_text(&self) -> String {
        self.values.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }
}

/// Everything a run needs, validated.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub front_end: FrontEnd,
    pub profile: LaunchProfile,
    pub medium: Medium,
    pub fan: FanSpec,
    pub integrator: IntegratorConfig,
    pub detector_zeta: f64,
    pub scan_step: f64,
    pub grid: GridSpec,
    pub out_dir: PathBuf,
    pub svg_max_rays: usize,
}

/// Two numeric columns, xi and R; rows that do not parse (headers) are skipped.
fn read_samples(path: &Path) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| Error::config("profile.samples", format!("{}: {e}", path.display())))?;
    let (mut xi, mut r) = (Vec::new(), Vec::new());
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::config("profile.samples", e.to_string()))?;
        if let (Some(Ok(x)), Some(Ok(v))) = (rec.get(0).map(str::parse::<f64>), rec.get(1).map(str::parse::<f64>)) {
            xi.push(x);
            r.push(v);
        }
    }
    Ok((xi, r))
}
