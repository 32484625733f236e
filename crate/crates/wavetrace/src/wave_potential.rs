//! The wave potential G = (1/R)∇²R on a fan, and the coupling force it drives.
//!
//! Two couplings are provided. [`flux_tube_gradient`] is the default: every
//! interval between neighbouring rays is a flux tube carrying the fixed flux
//! R0²·Δlabel, so the local intensity is flux over tube width and the force
//! on each ray is the divergence of the stress ρ·(½ ln ρ)'' across it. The
//! direct form evaluates G from the carried amplitudes with 3-point Lagrange
//! stencils in arc length ([`second_derivative_on_fan`],
//! [`wave_potential_gradient`]) and is kept for comparison; it is unstable
//! once rays start to converge.

use crate::beam_model::{WavefrontFan, MIN_RAYS};
use crate::error::{Error, Result};
use crate::launch_profiles::AMPLITUDE_FLOOR;

#[derive(Debug, Clone, PartialEq)]
pub struct WavefrontParametrization {
    /// Cumulative chord length along the fan, starting at 0.
    pub arc_coordinate: Vec<f64>,
    /// Unit vector perpendicular to ρ, (1, 0) for ρ = (0, 1).
    pub transverse_unit: Vec<[f64; 2]>,
}

/// (ρz, -ρx)/|ρ|
pub fn transverse_unit(rho: [f64; 2]) -> [f64; 2] {
    let p = rho[0].hypot(rho[1]);
    [rho[1] / p, -rho[0] / p]
}

pub fn parametrize(fan: &WavefrontFan) -> Result<WavefrontParametrization> {
    if let Some(i) = fan.first_crossing() {
        return Err(Error::Caustic {
            step: fan.step_index,
            left: i,
            right: i + 1,
        });
    }
    let mut s = Vec::with_capacity(fan.len());
    s.push(0.0);
    for w in fan.rays.windows(2) {
        let d = (w[1].xi - w[0].xi).hypot(w[1].zeta - w[0].zeta);
        s.push(s.last().unwrap() + d);
    }
    let t = fan
        .rays
        .iter()
        .map(|r| transverse_unit([r.rho_x, r.rho_z]))
        .collect();
    Ok(WavefrontParametrization {
        arc_coordinate: s,
        transverse_unit: t,
    })
}

/// First and second derivatives of the 3-point Lagrange interpolant at each
/// node. Node i uses the stencil centred on clamp(i, 1, n-2), so the end
/// nodes get one-sided stencils.
pub fn lagrange3(x: &[f64], f: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = x.len();
    assert!(n >= 3 && f.len() == n);
    let mut d1 = vec![0.0; n];
    let mut d2 = vec![0.0; n];
    for i in 0..n {
        let j = i.clamp(1, n - 2);
        let (x0, x1, x2) = (x[j - 1], x[j], x[j + 1]);
        let f01 = (f[j] - f[j - 1]) / (x1 - x0);
        let f12 = (f[j + 1] - f[j]) / (x2 - x1);
        let f012 = (f12 - f01) / (x2 - x0);
        d1[i] = f01 + f012 * ((x[i] - x0) + (x[i] - x1));
        d2[i] = 2.0 * f012;
    }
    (d1, d2)
}

/// Value at `x` of the parabola through three points.
pub fn extrapolate3(xs: [f64; 3], ys: [f64; 3], x: f64) -> f64 {
    let [x0, x1, x2] = xs;
    let [y0, y1, y2] = ys;
    y0 * (x - x1) * (x - x2) / ((x0 - x1) * (x0 - x2))
        + y1 * (x - x0) * (x - x2) / ((x1 - x0) * (x1 - x2))
        + y2 * (x - x0) * (x - x1) / ((x2 - x0) * (x2 - x1))
}

/// G_i = (d²R/ds²)/R from the launch shape carried by each ray.
///
/// Rays below the amplitude floor get G = 0.
pub fn second_derivative_on_fan(fan: &WavefrontFan, param: &WavefrontParametrization) -> Result<Vec<f64>> {
    if fan.len() < MIN_RAYS {
        return Err(Error::config(
            "fan.n_rays",
            format!("need at least {MIN_RAYS} rays, got {}", fan.len()),
        ));
    }
    let r = &fan.shape;
    let peak = r.iter().cloned().fold(0.0, f64::max);
    let (_, d2) = lagrange3(&param.arc_coordinate, r);
    Ok(d2
        .iter()
        .zip(r)
        .map(|(d, &ri)| if ri < AMPLITUDE_FLOOR * peak { 0.0 } else { d / ri })
        .collect())
}

/// ∇G = (dG/ds)·t, tangent to the wavefront by construction.
pub fn wave_potential_gradient(
    fan: &WavefrontFan,
    param: &WavefrontParametrization,
    g_values: &[f64],
) -> Vec<[f64; 2]> {
    debug_assert_eq!(g_values.len(), fan.len());
    let (d1, _) = lagrange3(&param.arc_coordinate, g_values);
    d1.iter()
        .zip(&param.transverse_unit)
        .map(|(d, t)| [d * t[0], d * t[1]])
        .collect()
}

/// Tube widths between neighbouring rays: the chord projected on the mean
/// transverse unit. Non-positive widths (or NaN) report the interval index,
/// unless `min_width` > 0, in which case they are clamped to it.
fn tube_widths(pos: &[[f64; 2]], t: &[[f64; 2]], min_width: f64) -> std::result::Result<Vec<f64>, usize> {
    let mut w = Vec::with_capacity(pos.len() - 1);
    for j in 0..pos.len() - 1 {
        let tb = [t[j][0] + t[j + 1][0], t[j][1] + t[j + 1][1]];
        let nb = tb[0].hypot(tb[1]);
        let d = [pos[j + 1][0] - pos[j][0], pos[j + 1][1] - pos[j][1]];
        let l = (d[0] * tb[0] + d[1] * tb[1]) / nb;
        if l > min_width {
            w.push(l);
        } else if min_width > 0.0 && !l.is_nan() {
            w.push(min_width);
        } else {
            return Err(j);
        }
    }
    Ok(w)
}

fn prefix_and_mid(width: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut s = Vec::with_capacity(width.len() + 1);
    s.push(0.0);
    for l in width {
        s.push(s.last().unwrap() + l);
    }
    let c = width.iter().zip(&s).map(|(l, si)| si + 0.5 * l).collect();
    (s, c)
}

/// Wave-potential gradient of the flux-tube coupling (force per unit C).
///
/// `flux[j]` belongs to the interval between rays j and j+1. Interior rays
/// feel the stress difference of their two tubes over half the adjacent
/// flux; edge rays take the parabola through the three nearest interior
/// rays. On a crossed or degenerate tube the interval index is returned.
///
/// The result is the average of the stencil evaluated in both index
/// directions, so a mirror-symmetric fan feels exactly mirrored forces.
pub fn flux_tube_gradient(
    pos: &[[f64; 2]],
    mom: &[[f64; 2]],
    flux: &[f64],
    min_width: f64,
) -> std::result::Result<Vec<[f64; 2]>, usize> {
    let n = pos.len();
    let fwd = flux_tube_gradient_oriented(pos, mom, flux, min_width)?;
    let (mp, mm, mf) = mirrored(pos, mom, flux);
    let back = flux_tube_gradient_oriented(&mp, &mm, &mf, min_width).map_err(|j| n - 2 - j)?;
    Ok((0..n)
        .map(|i| {
            let b = back[n - 1 - i];
            [0.5 * (fwd[i][0] - b[0]), 0.5 * (fwd[i][1] + b[1])]
        })
        .collect())
}

/// The fan reflected through ξ = 0, re-indexed so ξ still increases.
fn mirrored(pos: &[[f64; 2]], mom: &[[f64; 2]], flux: &[f64]) -> (Vec<[f64; 2]>, Vec<[f64; 2]>, Vec<f64>) {
    let flip = |v: &[[f64; 2]]| v.iter().rev().map(|p| [-p[0], p[1]]).collect();
    (flip(pos), flip(mom), flux.iter().rev().cloned().collect())
}

fn flux_tube_gradient_oriented(
    pos: &[[f64; 2]],
    mom: &[[f64; 2]],
    flux: &[f64],
    min_width: f64,
) -> std::result::Result<Vec<[f64; 2]>, usize> {
    let n = pos.len();
    let t: Vec<[f64; 2]> = mom.iter().map(|&m| transverse_unit(m)).collect();
    let width = tube_widths(pos, &t, min_width)?;
    let (s, c) = prefix_and_mid(&width);
    let rho: Vec<f64> = flux.iter().zip(&width).map(|(f, l)| f / l).collect();
    let a: Vec<f64> = rho.iter().map(|r| 0.5 * r.ln()).collect();
    let (_, a2) = lagrange3(&c, &a);
    let sigma: Vec<f64> = rho.iter().zip(&a2).map(|(r, d)| r * d).collect();
    let mut f = vec![0.0; n];
    for i in 1..n - 1 {
        f[i] = (sigma[i] - sigma[i - 1]) / (0.5 * (flux[i - 1] + flux[i]));
    }
    f[0] = extrapolate3([s[1], s[2], s[3]], [f[1], f[2], f[3]], s[0]);
    f[n - 1] = extrapolate3(
        [s[n - 4], s[n - 3], s[n - 2]],
        [f[n - 4], f[n - 3], f[n - 2]],
        s[n - 1],
    );
    if let Some(j) = f.iter().position(|v| !v.is_finite()) {
        return Err(j.min(n - 2));
    }
    Ok(f.iter().zip(&t).map(|(fi, ti)| [fi * ti[0], fi * ti[1]]).collect())
}

/// Per-ray G of the flux-tube picture: R_eff''/R_eff with R_eff = √(flux/width),
/// evaluated at tube centres and averaged onto the rays.
pub fn flux_tube_g(pos: &[[f64; 2]], mom: &[[f64; 2]], flux: &[f64]) -> Vec<f64> {
    let n = pos.len();
    let fwd = flux_tube_g_oriented(pos, mom, flux);
    let (mp, mm, mf) = mirrored(pos, mom, flux);
    let back = flux_tube_g_oriented(&mp, &mm, &mf);
    (0..n).map(|i| 0.5 * (fwd[i] + back[n - 1 - i])).collect()
}

fn flux_tube_g_oriented(pos: &[[f64; 2]], mom: &[[f64; 2]], flux: &[f64]) -> Vec<f64> {
    let n = pos.len();
    let t: Vec<[f64; 2]> = mom.iter().map(|&m| transverse_unit(m)).collect();
    let Ok(width) = tube_widths(pos, &t, 0.0) else {
        return vec![f64::NAN; n];
    };
    let (_, c) = prefix_and_mid(&width);
    let r: Vec<f64> = flux.iter().zip(&width).map(|(f, l)| (f / l).sqrt()).collect();
    let (_, d2) = lagrange3(&c, &r);
    let gm: Vec<f64> = d2.iter().zip(&r).map(|(d, ri)| d / ri).collect();
    let mut g = vec![0.0; n];
    g[0] = gm[0];
    g[n - 1] = gm[n - 2];
    for i in 1..n - 1 {
        g[i] = 0.5 * (gm[i - 1] + gm[i]);
    }
    g
}
