//! Launch amplitude profiles R(ξ, ζ=0) and the initial fan.

use std::fmt;

use crate::beam_model::{Medium, RayState, WavefrontFan, MIN_RAYS};
use crate::error::{Error, Result};

/// Rays are only launched where R exceeds this fraction of its peak.
pub const AMPLITUDE_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    /// exp(-ε²ξ²)
    Gaussian,
    /// 1/(1 + (εξ)^{2N})
    Algebraic { n: u32 },
    /// base(ξ - ξ0) + base(ξ + ξ0)
    TwoBeam { base: Box<Shape>, xi0: f64 },
    /// Piecewise-linear through (ξ, R) samples, zero outside.
    Samples { xi: Vec<f64>, r: Vec<f64> },
}

/// A launch profile: `scale · shape(ξ)`.
///
/// The coupling only ever sees the shape, so the overall normalization
/// cannot leak into the dynamics.
#[derive(Debug, Clone, PartialEq)]
pub struct LaunchProfile {
    pub shape: Shape,
    pub epsilon: f64,
    pub scale: f64,
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon <= 1.0 {
        Ok(())
    } else {
        Err(Error::config(
            "profile.epsilon",
            format!("must lie in (0, 1], got {epsilon}"),
        ))
    }
}

pub fn gaussian(epsilon: f64) -> Result<LaunchProfile> {
    check_epsilon(epsilon)?;
    Ok(LaunchProfile {
        shape: Shape::Gaussian,
        epsilon,
        scale: 1.0,
    })
}

pub fn algebraic(epsilon: f64, n: u32) -> Result<LaunchProfile> {
    check_epsilon(epsilon)?;
    if n == 0 || n > 16 {
        return Err(Error::config("profile.n", format!("must be in 1..=16, got {n}")));
    }
    Ok(LaunchProfile {
        shape: Shape::Algebraic { n },
        epsilon,
        scale: 1.0,
    })
}

pub fn two_beam(base: LaunchProfile, xi0: f64) -> Result<LaunchProfile> {
    match base.shape {
        Shape::Gaussian | Shape::Algebraic { .. } => {}
        _ => {
            return Err(Error::config(
                "profile.base",
                "two_beam needs a gaussian or algebraic base",
            ))
        }
    }
    if !(xi0 >= 0.0 && xi0.is_finite()) {
        return Err(Error::config("profile.xi0", format!("must be >= 0, got {xi0}")));
    }
    Ok(LaunchProfile {
        shape: Shape::TwoBeam {
            base: Box::new(base.shape),
            xi0,
        },
        epsilon: base.epsilon,
        scale: base.scale,
    })
}

/// Tabulated profile; `epsilon` only sets default fan and detector scales.
pub fn custom_samples(xi: Vec<f64>, r: Vec<f64>, epsilon: f64) -> Result<LaunchProfile> {
    check_epsilon(epsilon)?;
    if xi.len() < 2 || xi.len() != r.len() {
        return Err(Error::config(
            "profile.samples",
            "need at least two (xi, R) rows of equal length",
        ));
    }
    if xi.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::config("profile.samples", "xi must be strictly increasing"));
    }
    if r.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
        return Err(Error::config("profile.samples", "R must be finite and >= 0"));
    }
    Ok(LaunchProfile {
        shape: Shape::Samples { xi, r },
        epsilon,
        scale: 1.0,
    })
}

fn shape_value(shape: &Shape, eps: f64, x: f64) -> f64 {
    match shape {
        Shape::Gaussian => (-(eps * x) * (eps * x)).exp(),
        Shape::Algebraic { n } => 1.0 / (1.0 + (eps * x).powi(2 * *n as i32)),
        Shape::TwoBeam { base, xi0 } => shape_value(base, eps, x - xi0) + shape_value(base, eps, x + xi0),
        Shape::Samples { xi, r } => {
            let n = xi.len();
            if x < xi[0] || x > xi[n - 1] {
                return 0.0;
            }
            let j = xi.partition_point(|&v| v <= x).clamp(1, n - 1);
            let t = (x - xi[j - 1]) / (xi[j] - xi[j - 1]);
            r[j - 1] + t * (r[j] - r[j - 1])
        }
    }
}

fn shape_second_derivative(shape: &Shape, eps: f64, x: f64) -> Option<f64> {
    match shape {
        Shape::Gaussian => {
            let e2 = eps * eps;
            Some((4.0 * e2 * e2 * x * x - 2.0 * e2) * shape_value(shape, eps, x))
        }
        Shape::Algebraic { n } => {
            let m = 2 * *n as i32;
            let y = eps * x;
            let u = y.powi(m);
            let du = m as f64 * eps * y.powi(m - 1);
            let d2u = (m * (m - 1)) as f64 * eps * eps * y.powi(m - 2);
            let q = 1.0 + u;
            Some(-d2u / (q * q) + 2.0 * du * du / (q * q * q))
        }
        Shape::TwoBeam { base, xi0 } => Some(
            shape_second_derivative(base, eps, x - xi0)? + shape_second_derivative(base, eps, x + xi0)?,
        ),
        Shape::Samples { .. } => None,
    }
}

impl LaunchProfile {
    /// Same profile with the amplitude multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            scale: self.scale * c,
            ..self.clone()
        }
    }

    /// Normalization-free shape, peak 1 for the centred profiles.
    pub fn shape_at(&self, xi: f64) -> f64 {
        shape_value(&self.shape, self.epsilon, xi)
    }

    /// R(ξ) including the overall scale.
    pub fn amplitude(&self, xi: f64) -> f64 {
        self.scale * self.shape_at(xi)
    }

    /// d²R/dξ² including the overall scale, when known in closed form.
    pub fn second_derivative(&self, xi: f64) -> Option<f64> {
        shape_second_derivative(&self.shape, self.epsilon, xi).map(|d| self.scale * d)
    }

    /// Analytic launch-plane wave potential G(ξ) = R''/R.
    pub fn g_analytic(&self, xi: f64) -> Option<f64> {
        shape_second_derivative(&self.shape, self.epsilon, xi).map(|d| d / self.shape_at(xi))
    }

    /// Launch half-width w0 in units of λ0.
    pub fn w0(&self) -> f64 {
        1.0 / self.epsilon
    }

    /// Largest shape value, from the closed form or a dense scan.
    pub fn peak_shape(&self) -> f64 {
        match &self.shape {
            Shape::Gaussian | Shape::Algebraic { .. } => 1.0,
            Shape::Samples { r, .. } => r.iter().cloned().fold(0.0, f64::max),
            Shape::TwoBeam { xi0, .. } => {
                let reach = xi0 + 4.0 / self.epsilon;
                let n = 20_001;
                (0..n)
                    .map(|k| self.shape_at(-reach + 2.0 * reach * k as f64 / (n - 1) as f64))
                    .fold(0.0, f64::max)
            }
        }
    }

    /// Half-width of the region where the shape stays above `level`·peak,
    /// by bisection from the centre outwards.
    pub fn flat_top_half_width(&self, level: f64) -> f64 {
        let peak = self.peak_shape();
        let (mut lo, mut hi) = (0.0, 1.0 / self.epsilon);
        while self.shape_at(hi) > level * peak {
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.shape_at(mid) > level * peak {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// Fan half-width used when the config leaves it on auto.
    pub fn default_half_width(&self) -> f64 {
        match &self.shape {
            Shape::Gaussian => 3.0 / self.epsilon,
            Shape::Algebraic { .. } => 12.0 / self.epsilon,
            Shape::TwoBeam { base, xi0 } => match **base {
                Shape::Gaussian => xi0 + 3.0 / self.epsilon,
                _ => xi0 + 12.0 / self.epsilon,
            },
            Shape::Samples { xi, .. } => xi[0].abs().min(xi[xi.len() - 1].abs()),
        }
    }

    pub fn default_n_rays(&self) -> usize {
        match &self.shape {
            Shape::Gaussian => 201,
            _ => 401,
        }
    }

    pub fn describe(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for LaunchProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn name(s: &Shape) -> String {
            match s {
                Shape::Gaussian => "gaussian".into(),
                Shape::Algebraic { n } => format!("algebraic N={n}"),
                Shape::TwoBeam { base, xi0 } => format!("two_beam({}, xi0={xi0})", name(base)),
                Shape::Samples { xi, .. } => format!("samples({} rows)", xi.len()),
            }
        }
        write!(f, "{} eps={} scale={}", name(&self.shape), self.epsilon, self.scale)
    }
}

/// Equally spaced labels on [min, max], exactly mirror-symmetric when min = -max.
pub fn fan_labels(n: usize, xi_min: f64, xi_max: f64) -> Vec<f64> {
    let m = (n - 1) as f64;
    (0..n)
        .map(|k| match k {
            0 => xi_min,
            k if k == n - 1 => xi_max,
            k => (xi_min * (n - 1 - k) as f64 + xi_max * k as f64) / m,
        })
        .collect()
}

/// Launch fan with the default amplitude floor, in vacuum.
pub fn sample_fan(profile: &LaunchProfile, n_rays: usize, xi_min: f64, xi_max: f64) -> Result<WavefrontFan> {
    sample_fan_in(profile, n_rays, xi_min, xi_max, AMPLITUDE_FLOOR, &Medium::vacuum())
}

/// Launch fan: rays at ζ = 0 moving along +ζ with |ρ| fixed by the medium.
pub fn sample_fan_in(
    profile: &LaunchProfile,
    n_rays: usize,
    xi_min: f64,
    xi_max: f64,
    amplitude_floor: f64,
    medium: &Medium,
) -> Result<WavefrontFan> {
    if n_rays < MIN_RAYS {
        return Err(Error::config(
            "fan.n_rays",
            format!("need at least {MIN_RAYS} rays, got {n_rays}"),
        ));
    }
    if !(xi_min < xi_max) || !xi_min.is_finite() || !xi_max.is_finite() {
        return Err(Error::config(
            "fan.xi_min",
            format!("need xi_min < xi_max, got [{xi_min}, {xi_max}]"),
        ));
    }
    let floor = amplitude_floor * profile.peak_shape();
    for (key, edge) in [("fan.xi_min", xi_min), ("fan.xi_max", xi_max)] {
        let r = profile.shape_at(edge);
        if !(r > floor) {
            return Err(Error::config(
                key,
                format!("amplitude at edge xi = {edge} is {r:e}, below the floor {floor:e}"),
            ));
        }
    }
    let labels = fan_labels(n_rays, xi_min, xi_max);
    let shape: Vec<f64> = labels.iter().map(|&l| profile.shape_at(l)).collect();
    if let Some(i) = shape.iter().position(|&r| !(r > floor)) {
        return Err(Error::config(
            "fan.n_rays",
            format!("ray at xi = {} falls below the amplitude floor", labels[i]),
        ));
    }
    let interval_flux = labels
        .windows(2)
        .map(|w| {
            let r = profile.shape_at(0.5 * (w[0] + w[1]));
            r * r * (w[1] - w[0])
        })
        .collect();
    let points: Vec<[f64; 2]> = labels.iter().map(|&l| [l, 0.0]).collect();
    medium.validate(&points)?;
    let rays = labels
        .iter()
        .map(|&l| RayState::launch(l, profile.amplitude(l), medium.momentum_magnitude(l, 0.0)))
        .collect();
    WavefrontFan::new(rays, shape, interval_flux)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_values() {
        let p = gaussian(0.25).unwrap();
        assert_eq!(p.amplitude(0.0), 1.0);
        assert!((p.amplitude(4.0) - (-1f64).exp()).abs() < 1e-15);
        assert!((p.g_analytic(0.0).unwrap() + 0.125).abs() < 1e-15);
    }

    #[test]
    fn algebraic_values() {
        let p = algebraic(0.25, 1).unwrap();
        assert_eq!(p.amplitude(0.0), 1.0);
        assert_eq!(p.amplitude(4.0), 0.5);
        assert!((p.g_analytic(0.0).unwrap() + 0.125).abs() < 1e-15);
    }

    #[test]
    fn algebraic_second_derivative_matches_differences() {
        for n in 1..=4 {
            let p = algebraic(0.25, n).unwrap();
            for x in [-7.0, -1.3, 0.0, 2.2, 5.0] {
                let h = 1e-3;
                let fd = (p.amplitude(x + h) - 2.0 * p.amplitude(x) + p.amplitude(x - h)) / (h * h);
                assert!((fd - p.second_derivative(x).unwrap()).abs() < 1e-6, "N={n} x={x}");
            }
        }
    }

    #[test]
    fn two_beam_values() {
        let g = gaussian(0.25).unwrap();
        let t = two_beam(g.clone(), 0.0).unwrap();
        for x in [-3.0, 0.0, 1.7] {
            assert_eq!(t.amplitude(x), 2.0 * g.amplitude(x));
        }
        let t = two_beam(g, 8.0).unwrap();
        assert!((t.amplitude(8.0) - (1.0 + (-16f64).exp())).abs() < 1e-15);
        assert!(two_beam(t.clone(), 1.0).is_err());
    }

    #[test]
    fn invalid_parameters() {
        assert!(gaussian(1.5).is_err());
        assert!(gaussian(0.0).is_err());
        assert!(algebraic(0.25, 0).is_err());
        assert!(custom_samples(vec![0.0, 0.0], vec![1.0, 1.0], 0.25).is_err());
    }

    #[test]
    fn small_fan() {
        let fan = sample_fan(&gaussian(0.25).unwrap(), 5, -2.0, 2.0).unwrap();
        assert_eq!(fan.labels(), vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
        let p = gaussian(0.25).unwrap();
        for r in &fan.rays {
            assert_eq!((r.rho_x, r.rho_z, r.zeta, r.tau), (0.0, 1.0, 0.0, 0.0));
            assert_eq!(r.amplitude_r, p.amplitude(r.launch_label()));
        }
    }

    #[test]
    fn floor_names_offending_edge() {
        let err = sample_fan(&gaussian(0.25).unwrap(), 11, -40.0, 12.0).unwrap_err();
        assert!(err.to_string().contains("fan.xi_min"), "{err}");
        let err = sample_fan(&gaussian(0.25).unwrap(), 11, -12.0, 40.0).unwrap_err();
        assert!(err.to_string().contains("fan.xi_max"), "{err}");
    }

    #[test]
    fn labels_mirror_exactly() {
        let l = fan_labels(201, -12.0, 12.0);
        for k in 0..201 {
            assert_eq!(l[k], -l[200 - k]);
        }
        assert_eq!(l[100], 0.0);
    }

    #[test]
    fn samples_interpolate_linearly() {
        let p = custom_samples(vec![-1.0, 0.0, 2.0], vec![0.0, 1.0, 0.0], 0.5).unwrap();
        assert_eq!(p.amplitude(1.0), 0.5);
        assert_eq!(p.amplitude(-0.5), 0.5);
        assert_eq!(p.amplitude(3.0), 0.0);
        assert!(p.second_derivative(0.5).is_none());
    }

    #[test]
    fn flat_top_widens_with_n() {
        let widths: Vec<f64> = (1..=4)
            .map(|n| algebraic(0.25, n).unwrap().flat_top_half_width(0.99))
            .collect();
        assert!(widths.windows(2).all(|w| w[1] > w[0]), "{widths:?}");
        assert!(gaussian(0.25).unwrap().flat_top_half_width(0.99) < widths[1]);
    }
}
