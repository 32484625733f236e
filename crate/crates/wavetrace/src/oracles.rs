//! Independent references: the Gaussian-beam envelope, a paraxial
//! angular-spectrum solver, the fringe detector and finite-difference checks.

use std::f64::consts::PI;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::beam_model::{ScalarField, TrajectoryBundle};
use crate::error::{Error, Result};
use crate::launch_profiles::LaunchProfile;

/// Peaks must stand out by this fraction of the histogram maximum.
pub const FRINGE_PROMINENCE: f64 = 0.2;
/// Bins within this fraction of the maximum below a peak belong to its crest.
pub const CREST_TOLERANCE: f64 = 0.05;
/// Histogram bin width in units of w0.
pub const BIN_WIDTH_PER_W0: f64 = 0.1;
pub const MIN_BINS: usize = 50;

/// Half-width w(ζ)/λ0 = (1/ε)√(1 + (ε²ζ/π)²) of a Gaussian beam with waist 1/ε.
pub fn gaussian_envelope(epsilon: f64, zeta: f64) -> f64 {
    let u = epsilon * epsilon * zeta / PI;
    (1.0 + u * u).sqrt() / epsilon
}

/// Rayleigh range π/ε².
pub fn rayleigh_range(epsilon: f64) -> f64 {
    PI / (epsilon * epsilon)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    /// Periodic transverse domain length, centred on ξ = 0.
    pub length: f64,
    pub n_points: usize,
}

impl GridSpec {
    /// At least 16× the fan and 64 samples per w0, rounded up to a power of two.
    pub fn auto(profile: &LaunchProfile, fan_half_width: f64) -> Self {
        let length = 32.0 * fan_half_width.max(profile.w0());
        let dx = profile.w0() / 64.0;
        let n_points = ((length / dx).ceil() as usize).next_power_of_two();
        Self { length, n_points }
    }

    pub fn dx(&self) -> f64 {
        self.length / self.n_points as f64
    }

    pub fn xi(&self) -> Vec<f64> {
        let n = self.n_points as i64;
        (0..n).map(|i| (i - n / 2) as f64 * self.dx()).collect()
    }
}

/// |ψ(ξ, ζ)|² on a grid of planes.
#[derive(Debug, Clone)]
pub struct ParaxialField {
    pub xi: Vec<f64>,
    pub zetas: Vec<f64>,
    /// One row per plane in `zetas`.
    pub intensity: Vec<Vec<f64>>,
    pub launch_intensity: Vec<f64>,
}

impl ParaxialField {
    pub fn power(&self, row: &[f64]) -> f64 {
        row.iter().sum::<f64>() * (self.xi[1] - self.xi[0])
    }

    /// Second-moment width 2√⟨ξ²⟩ of one plane, which is w(ζ) for a Gaussian.
    pub fn rms_half_width(&self, plane: usize) -> f64 {
        let row = &self.intensity[plane];
        let p: f64 = row.iter().sum();
        let m2: f64 = row.iter().zip(&self.xi).map(|(i, x)| i * x * x).sum();
        2.0 * (m2 / p).sqrt()
    }
}

/// Propagates R(ξ, 0) under the paraxial equation with the exact free-space
/// propagator exp(-iκ²ζ/4π) applied to the launch spectrum.
pub fn paraxial_grid_propagate(profile: &LaunchProfile, zetas: &[f64], grid: &GridSpec) -> Result<ParaxialField> {
    let n = grid.n_points;
    let dx = grid.dx();
    if n < 16 || !n.is_power_of_two() {
        return Err(Error::OracleResolution(format!("grid needs a power-of-two size >= 16, got {n}")));
    }
    if profile.w0() / dx < 8.0 {
        return Err(Error::OracleResolution(format!(
            "only {:.1} samples per w0 (need 8)",
            profile.w0() / dx
        )));
    }
    let xi = grid.xi();
    let launch: Vec<Complex<f64>> = xi.iter().map(|&x| Complex::new(profile.amplitude(x), 0.0)).collect();
    let launch_intensity: Vec<f64> = launch.iter().map(|c| c.norm_sqr()).collect();

    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(n);
    let mut spectrum = launch.clone();
    fwd.process(&mut spectrum);

    let kappa: Vec<f64> = (0..n)
        .map(|i| {
            let m = if i <= n / 2 { i as f64 } else { i as f64 - n as f64 };
            2.0 * PI * m / grid.length
        })
        .collect();
    let total: f64 = spectrum.iter().map(|c| c.norm_sqr()).sum();
    let k_max = PI / dx;
    let band_edge: f64 = spectrum
        .iter()
        .zip(&kappa)
        .filter(|(_, k)| k.abs() > 0.9 * k_max)
        .map(|(c, _)| c.norm_sqr())
        .sum();
    if band_edge > 1e-6 * total {
        return Err(Error::OracleResolution(format!(
            "launch spectrum aliased: {:.2e} of the power sits at the band edge",
            band_edge / total
        )));
    }

    let p0: f64 = launch_intensity.iter().sum();
    let margin = n / 20;
    let edge_power = |row: &[f64]| -> f64 { row[..margin].iter().chain(&row[n - margin..]).sum() };
    // plane waves fill the box from the start
    let allowed = 1e-6f64.max(2.0 * edge_power(&launch_intensity) / p0);
    let mut intensity = Vec::with_capacity(zetas.len());
    for &z in zetas {
        let mut field: Vec<Complex<f64>> = spectrum
            .iter()
            .zip(&kappa)
            .map(|(c, k)| c * Complex::from_polar(1.0, -k * k * z / (4.0 * PI)))
            .collect();
        inv.process(&mut field);
        let scale = 1.0 / (n as f64 * n as f64);
        let row: Vec<f64> = field.iter().map(|c| c.norm_sqr() * scale).collect();
        let p: f64 = row.iter().sum();
        if ((p - p0) / p0).abs() > 1e-6 {
            return Err(Error::OracleResolution(format!("power not conserved at zeta = {z}")));
        }
        let edge = edge_power(&row);
        if edge > allowed * p {
            return Err(Error::OracleResolution(format!(
                "field reaches the periodic boundary at zeta = {z} ({:.2e} of the power in the margins)",
                edge / p
            )));
        }
        intensity.push(row);
    }
    Ok(ParaxialField {
        xi,
        zetas: zetas.to_vec(),
        intensity,
        launch_intensity,
    })
}

fn cumulative(row: &[f64]) -> Vec<f64> {
    let mut c = vec![0.0; row.len()];
    for i in 1..row.len() {
        c[i] = c[i - 1] + 0.5 * (row[i - 1] + row[i]);
    }
    let total = c[row.len() - 1];
    c.iter_mut().for_each(|v| *v /= total);
    c
}

/// Piecewise-linear y(x) for non-decreasing `xs`, clamped at the ends.
pub fn interp(x: f64, xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len();
    if x <= xs[0] {
        return ys[0];
    }
    if x >= xs[n - 1] {
        return ys[n - 1];
    }
    let j = xs.partition_point(|&v| v < x).clamp(1, n - 1);
    let (x0, x1) = (xs[j - 1], xs[j]);
    if x1 == x0 {
        return ys[j];
    }
    ys[j - 1] + (x - x0) / (x1 - x0) * (ys[j] - ys[j - 1])
}

/// Where the oracle puts each launch label on a plane: the position whose
/// cumulative detector intensity equals the label's cumulative launch intensity.
pub fn flux_quantile_positions(field: &ParaxialField, plane: usize, labels: &[f64]) -> Vec<f64> {
    let c0 = cumulative(&field.launch_intensity);
    let c = cumulative(&field.intensity[plane]);
    labels
        .iter()
        .map(|&l| interp(interp(l, &field.xi, &c0), &c, &field.xi))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Peak {
    pub position: f64,
    pub height: f64,
    /// Prominence as a fraction of the histogram maximum.
    pub prominence: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FringeReport {
    pub detector_zeta: f64,
    pub bin_width: f64,
    pub bin_edges: Vec<f64>,
    pub ray_density_histogram: Vec<f64>,
    /// Sorted by |ξ|.
    pub peaks: Vec<Peak>,
    /// ξ of the middle ray; peaks more than a bin away from it are off-axis.
    pub axis: f64,
    pub is_fringed: bool,
}

impl FringeReport {
    pub fn off_axis_peaks(&self) -> Vec<Peak> {
        self.peaks.iter().filter(|p| (p.position - self.axis).abs() > self.bin_width).cloned().collect()
    }
}

/// Ray density with each gap between neighbouring rays holding unit mass
/// spread evenly across it.
pub fn smooth_density(positions: &[f64], edges: &[f64]) -> Vec<f64> {
    let nb = edges.len() - 1;
    let e0 = edges[0];
    let bw = edges[1] - edges[0];
    let mut h = vec![0.0; nb];
    for w in positions.windows(2) {
        let (lo, hi) = if w[0] <= w[1] { (w[0], w[1]) } else { (w[1], w[0]) };
        let first = (((lo - e0) / bw).floor().max(0.0) as usize).min(nb - 1);
        if hi == lo {
            h[first] += 1.0;
            continue;
        }
        for (b, hb) in h.iter_mut().enumerate().skip(first) {
            if edges[b] >= hi {
                break;
            }
            let ov = edges[b + 1].min(hi) - edges[b].max(lo);
            if ov > 0.0 {
                *hb += ov / (hi - lo);
            }
        }
    }
    h
}

/// Local maxima (plateaus count once) with topographic prominence of at
/// least `prom`·max, the histogram ends counting as zero. The reported
/// position is the centre of the peak's crest.
pub fn find_peaks(centers: &[f64], h: &[f64], prom: f64, crest: f64) -> Vec<Peak> {
    let n = h.len();
    let g = h.iter().cloned().fold(0.0, f64::max);
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && h[j + 1] == h[i] {
            j += 1;
        }
        let left = if i > 0 { h[i - 1] } else { f64::NEG_INFINITY };
        let right = if j + 1 < n { h[j + 1] } else { f64::NEG_INFINITY };
        if h[i] > left && h[i] > right && h[i] > 0.0 {
            let mut lmin = h[i];
            let mut k = i as isize - 1;
            while k >= 0 && h[k as usize] <= h[i] {
                lmin = lmin.min(h[k as usize]);
                k -= 1;
            }
            let lb = if k >= 0 { lmin } else { lmin.min(0.0) };
            let mut rmin = h[i];
            let mut k = j + 1;
            while k < n && h[k] <= h[i] {
                rmin = rmin.min(h[k]);
                k += 1;
            }
            let rb = if k < n { rmin } else { rmin.min(0.0) };
            let p = h[i] - lb.max(rb);
            if p >= prom * g {
                let (mut a, mut b) = (i, j);
                while a > 0 && h[a - 1] >= h[i] - crest * g {
                    a -= 1;
                }
                while b < n - 1 && h[b + 1] >= h[i] - crest * g {
                    b += 1;
                }
                out.push(Peak {
                    position: 0.5 * (centers[a] + centers[b]),
                    height: h[i],
                    prominence: p / g,
                });
            }
        }
        i = j + 1;
    }
    out.sort_by(|a, b| a.position.abs().total_cmp(&b.position.abs()).then(a.position.total_cmp(&b.position)));
    out
}

/// Bin edges on multiples of `bw` covering `positions` with two spare bins a
/// side, widened symmetrically to at least [`MIN_BINS`].
pub fn detector_bins(positions: &[f64], bw: f64) -> Vec<f64> {
    let lo = positions.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = positions.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut a = (lo / bw).floor() as i64 - 2;
    let mut b = (hi / bw).ceil() as i64 + 2;
    while ((b - a) as usize) < MIN_BINS {
        a -= 1;
        b += 1;
    }
    (a..=b).map(|k| k as f64 * bw).collect()
}

/// Fringe analysis of ray positions on one detector plane.
pub fn fringe_report(positions: &[f64], w0: f64, detector_zeta: f64) -> FringeReport {
    let bw = BIN_WIDTH_PER_W0 * w0;
    let edges = detector_bins(positions, bw);
    let centers: Vec<f64> = edges.windows(2).map(|e| 0.5 * (e[0] + e[1])).collect();
    let h = smooth_density(positions, &edges);
    let peaks = find_peaks(&centers, &h, FRINGE_PROMINENCE, CREST_TOLERANCE);
    let n = positions.len();
    let axis = if n % 2 == 1 {
        positions[n / 2]
    } else {
        0.5 * (positions[n / 2 - 1] + positions[n / 2])
    };
    let is_fringed = peaks.iter().any(|p| (p.position - axis).abs() > bw);
    FringeReport {
        detector_zeta,
        bin_width: bw,
        bin_edges: edges,
        ray_density_histogram: h,
        peaks,
        axis,
        is_fringed,
    }
}

/// Fringe analysis of a simulated bundle at ζ = `detector_zeta`.
pub fn detect_fringes(bundle: &TrajectoryBundle, detector_zeta: f64, w0: f64) -> Result<FringeReport> {
    let pos = bundle.positions_at_zeta(detector_zeta)?;
    Ok(fringe_report(&pos, w0, detector_zeta))
}

/// Planes 0 < ζ ≤ `zeta_max` spaced by `step`.
pub fn scan_planes(zeta_max: f64, step: f64) -> Vec<f64> {
    (1..).map(|k| k as f64 * step).take_while(|z| *z <= zeta_max).collect()
}

/// First scanned plane where the bundle shows off-axis gathering.
pub fn first_gathering_zeta(bundle: &TrajectoryBundle, w0: f64, step: f64) -> Option<f64> {
    let planes = scan_planes(bundle.zeta_reached(), step);
    let positions = bundle.positions_at_planes(&planes);
    planes
        .iter()
        .zip(positions)
        .find_map(|(&z, p)| p.filter(|p| fringe_report(p, w0, z).is_fringed).map(|_| z))
}

/// First scanned plane where the oracle's trajectory density shows gathering.
pub fn oracle_first_gathering_zeta(
    profile: &LaunchProfile,
    labels: &[f64],
    zeta_max: f64,
    step: f64,
    grid: &GridSpec,
) -> Result<Option<f64>> {
    let planes = scan_planes(zeta_max, step);
    let field = paraxial_grid_propagate(profile, &planes, grid)?;
    Ok(planes.iter().enumerate().find_map(|(k, &z)| {
        let pos = flux_quantile_positions(&field, k, labels);
        fringe_report(&pos, profile.w0(), z).is_fringed.then_some(z)
    }))
}

/// ξ(ζ) of the ray launched at `label`, interpolated linearly in label between
/// its two neighbours in each snapshot; returns (ζ, ξ) pairs.
pub fn trajectory_at_label(bundle: &TrajectoryBundle, label: f64) -> Option<Vec<(f64, f64)>> {
    let labels = bundle.labels();
    let j = labels.partition_point(|&l| l <= label);
    if j == 0 || j > labels.len() {
        return None;
    }
    let j = j.min(labels.len() - 1);
    let (a, b) = (j - 1, j);
    let t = (label - labels[a]) / (labels[b] - labels[a]);
    Some(
        bundle
            .snapshots
            .iter()
            .map(|s| {
                let (ra, rb) = (s.rays[a], s.rays[b]);
                (ra.zeta + t * (rb.zeta - ra.zeta), ra.xi + t * (rb.xi - ra.xi))
            })
            .collect(),
    )
}

/// Largest relative deviation of the ray launched at ξ = w0 from the
/// analytic envelope over 0 ≤ ζ ≤ `zeta_max`.
pub fn envelope_error(bundle: &TrajectoryBundle, epsilon: f64, zeta_max: f64) -> Option<f64> {
    let traj = trajectory_at_label(bundle, 1.0 / epsilon)?;
    if traj.last()?.0 < zeta_max {
        return None;
    }
    Some(
        traj.iter()
            .filter(|(z, _)| *z <= zeta_max)
            .map(|&(z, x)| {
                let w = gaussian_envelope(epsilon, z);
                ((x - w) / w).abs()
            })
            .fold(0.0, f64::max),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FluxRow {
    pub center: f64,
    pub simulated: f64,
    pub oracle: f64,
    pub relative_error: f64,
    pub core: bool,
}

/// Flux landing in each bin: from the rays (each interval's launch flux
/// spread across its span) and from the oracle intensity, each normalized
/// over the bins shown. Core bins hold at least a quarter of the largest
/// oracle bin.
pub fn flux_correspondence(
    positions: &[f64],
    interval_flux: &[f64],
    field: &ParaxialField,
    plane: usize,
    edges: &[f64],
) -> Vec<FluxRow> {
    let nb = edges.len() - 1;
    let mut sim = vec![0.0; nb];
    for (w, f) in positions.windows(2).zip(interval_flux) {
        let unit = smooth_density(w, edges);
        sim.iter_mut().zip(unit).for_each(|(s, u)| *s += f * u);
    }
    let mut orc = vec![0.0; nb];
    for (x, i) in field.xi.iter().zip(&field.intensity[plane]) {
        if *x >= edges[0] && *x < edges[nb] {
            let b = (((x - edges[0]) / (edges[1] - edges[0])) as usize).min(nb - 1);
            orc[b] += i;
        }
    }
    let (ts, to): (f64, f64) = (sim.iter().sum(), orc.iter().sum());
    let omax = orc.iter().cloned().fold(0.0, f64::max) / to;
    (0..nb)
        .map(|b| {
            let (s, o) = (sim[b] / ts, orc[b] / to);
            FluxRow {
                center: 0.5 * (edges[b] + edges[b + 1]),
                simulated: s,
                oracle: o,
                relative_error: if o > 0.0 { (s - o).abs() / o } else { f64::INFINITY },
                core: o >= 0.25 * omax,
            }
        })
        .collect()
}

/// Worst gap between a field's gradient and central differences of step `h`.
pub fn finite_difference_gradient_check(field: &ScalarField, points: &[[f64; 2]], h: f64) -> f64 {
    points
        .iter()
        .map(|p| {
            let g = field.gradient(p[0], p[1]);
            let fx = (field.value(p[0] + h, p[1]) - field.value(p[0] - h, p[1])) / (2.0 * h);
            let fz = (field.value(p[0], p[1] + h) - field.value(p[0], p[1] - h)) / (2.0 * h);
            (g[0] - fx).abs().max((g[1] - fz).abs())
        })
        .fold(0.0, f64::max)
}

/// Worst gap between a profile's analytic R'' and the second difference of step `h`.
pub fn finite_difference_second_derivative_check(profile: &LaunchProfile, points: &[f64], h: f64) -> Option<f64> {
    points.iter().try_fold(0.0f64, |acc, &x| {
        let d2 = profile.second_derivative(x)?;
        let fd = (profile.amplitude(x + h) - 2.0 * profile.amplitude(x) + profile.amplitude(x - h)) / (h * h);
        Some(acc.max((d2 - fd).abs()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::launch_profiles::{algebraic, custom_samples, gaussian};

    #[test]
    fn peaks_are_off_axis_relative_to_the_middle_ray() {
        let centred: Vec<f64> = (-50..=50).map(|k| 0.1 * k as f64 * (1.0 + 0.002 * (k * k) as f64)).collect();
        let shifted: Vec<f64> = centred.iter().map(|x| x + 3.0).collect();
        let a = fringe_report(&centred, 4.0, 10.0);
        let b = fringe_report(&shifted, 4.0, 10.0);
        assert_eq!(a.axis, 0.0);
        assert!((b.axis - 3.0).abs() < 1e-12);
        assert!(!a.is_fringed && !b.is_fringed);
        assert!(b.peaks.iter().all(|p| (p.position - 3.0).abs() <= b.bin_width));
    }

    #[test]
    fn envelope_values() {
        assert_eq!(gaussian_envelope(0.25, 0.0), 4.0);
        let z = rayleigh_range(0.25);
        assert!((z - 50.265_482_457_436_69).abs() < 1e-12);
        assert!((gaussian_envelope(0.25, z) - 2f64.sqrt() * 4.0).abs() < 1e-12);
        let (z1, z2) = (1e9, 1e9 + 1.0);
        let slope = gaussian_envelope(0.25, z2) - gaussian_envelope(0.25, z1);
        assert!((slope - 0.25 / PI).abs() < 1e-6);
    }

    #[test]
    fn plane_wave_is_stationary() {
        let p = custom_samples(vec![-1e6, 1e6], vec![1.0, 1.0], 0.25).unwrap();
        let grid = GridSpec { length: 256.0, n_points: 1024 };
        let f = paraxial_grid_propagate(&p, &[0.0, 50.0], &grid).unwrap();
        for row in &f.intensity {
            assert!(row.iter().all(|v| (v - 1.0).abs() < 1e-12));
        }
    }

    #[test]
    fn gaussian_width_matches_envelope() {
        let p = gaussian(0.25).unwrap();
        let grid = GridSpec::auto(&p, 12.0);
        let zs = [0.0, 50.0, 100.0, 200.0];
        let f = paraxial_grid_propagate(&p, &zs, &grid).unwrap();
        for (k, &z) in zs.iter().enumerate() {
            let w = f.rms_half_width(k);
            assert!((w / gaussian_envelope(0.25, z) - 1.0).abs() < 0.01, "z={z} w={w}");
            assert!((f.power(&f.intensity[k]) / f.power(&f.launch_intensity) - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn coarse_grid_is_rejected() {
        let p = gaussian(0.25).unwrap();
        let grid = GridSpec { length: 2048.0, n_points: 256 };
        assert!(matches!(paraxial_grid_propagate(&p, &[1.0], &grid), Err(Error::OracleResolution(_))));
    }

    #[test]
    fn quantile_map_is_identity_at_launch() {
        let p = algebraic(0.25, 1).unwrap();
        let grid = GridSpec::auto(&p, 48.0);
        let f = paraxial_grid_propagate(&p, &[0.0], &grid).unwrap();
        let labels = [-20.0, -3.3, 0.0, 7.1];
        for (l, x) in labels.iter().zip(flux_quantile_positions(&f, 0, &labels)) {
            assert!((l - x).abs() < 1e-9);
        }
    }

    #[test]
    fn density_of_even_rays_is_flat() {
        let pos: Vec<f64> = (0..=40).map(|k| -4.0 + 0.2 * k as f64).collect();
        let edges: Vec<f64> = (0..=8).map(|k| -4.0 + k as f64).collect();
        let h = smooth_density(&pos, &edges);
        assert!(h.iter().all(|v| (v - 5.0).abs() < 1e-12), "{h:?}");
    }

    #[test]
    fn plateau_and_prominence() {
        let c: Vec<f64> = (0..9).map(|k| k as f64).collect();
        let h = [0.0, 1.0, 5.0, 5.0, 2.0, 1.5, 1.8, 1.0, 0.0];
        let p = find_peaks(&c, &h, 0.2, 0.05);
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].position, 2.5);
        let p = find_peaks(&c, &h, 0.05, 0.05);
        assert_eq!(p.len(), 2);
        assert_eq!(p[1].position, 6.0);
    }

    #[test]
    fn bins_have_minimum_count() {
        let e = detector_bins(&[-0.3, 0.2], 0.4);
        assert!(e.len() - 1 >= MIN_BINS);
    }

    #[test]
    fn fd_checks() {
        let lin = ScalarField::Linear { c0: 0.3, g_xi: 0.5, g_zeta: -1.0 };
        assert!(finite_difference_gradient_check(&lin, &[[1.0, 2.0], [-3.0, 0.5]], 1e-3) < 1e-12);
        let c = ScalarField::Constant(2.0);
        assert_eq!(finite_difference_gradient_check(&c, &[[1.0, 2.0]], 1e-3), 0.0);
        let g = gaussian(0.25).unwrap();
        let pts = [-5.0, -1.0, 0.0, 2.5, 6.0];
        let e1 = finite_difference_second_derivative_check(&g, &pts, 0.1).unwrap();
        let e2 = finite_difference_second_derivative_check(&g, &pts, 0.05).unwrap();
        assert!((e1 / e2 - 4.0).abs() < 0.1, "{e1} {e2}");
    }
}
