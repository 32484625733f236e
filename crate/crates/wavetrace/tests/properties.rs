use proptest::prelude::*;

use wavetrace::beam_model::{optical_quantum_bridge, Medium, ScalarField};
use wavetrace::launch_profiles::{algebraic, fan_labels, gaussian, sample_fan, two_beam};
use wavetrace::wave_potential::{flux_tube_g, lagrange3, transverse_unit};

fn field_values(f: &ScalarField, pts: &[(f64, f64)]) -> Vec<u64> {
    pts.iter().map(|&(x, z)| f.value(x, z).to_bits()).collect()
}

fn launch_state(profile: &wavetrace::launch_profiles::LaunchProfile, n: usize, half: f64) -> (Vec<[f64; 2]>, Vec<[f64; 2]>, Vec<f64>) {
    let fan = sample_fan(profile, n, -half, half).unwrap();
    let pos = fan.rays.iter().map(|r| [r.xi, r.zeta]).collect();
    let mom = fan.rays.iter().map(|r| [r.rho_x, r.rho_z]).collect();
    (pos, mom, fan.interval_flux)
}

proptest! {
    #[test]
    fn bridge_round_trips(c0 in -2.0..2.0f64, gx in -0.1..0.1f64, gz in -0.1..0.1f64,
                          x in -50.0..50.0f64, z in 0.0..200.0f64) {
        let f = ScalarField::Linear { c0, g_xi: gx, g_zeta: gz };
        let back = optical_quantum_bridge(optical_quantum_bridge(f.clone()));
        let pts = [(x, z), (0.0, 0.0), (-x, 2.0 * z)];
        prop_assert_eq!(field_values(&f, &pts), field_values(&back, &pts));
        let once = optical_quantum_bridge(f.clone());
        prop_assert!((once.value(x, z) - (1.0 - f.value(x, z))).abs() < 1e-15);
    }

    #[test]
    fn refractive_and_potential_media_agree(c in 0.5..1.5f64, gx in -0.01..0.01f64, x in -20.0..20.0f64) {
        let opt = Medium::refractive(ScalarField::Linear { c0: c, g_xi: gx, g_zeta: 0.0 });
        let qm = Medium::potential(ScalarField::Linear { c0: 1.0 - c, g_xi: 0.0 - gx, g_zeta: 0.0 });
        prop_assert_eq!(opt.potential_over_e(x, 1.0).to_bits(), qm.potential_over_e(x, 1.0).to_bits());
        prop_assert_eq!(opt.force(x, 1.0), qm.force(x, 1.0));
    }

    #[test]
    fn profiles_are_even(eps in 0.05..1.0f64, n in 1u32..=6, x in 0.0..40.0f64) {
        let g = gaussian(eps).unwrap();
        let a = algebraic(eps, n).unwrap();
        let t = two_beam(a.clone(), 3.0 / eps).unwrap();
        for p in [&g, &a, &t] {
            prop_assert_eq!(p.amplitude(x).to_bits(), p.amplitude(-x).to_bits());
        }
        prop_assert_eq!(g.amplitude(0.0), 1.0);
        prop_assert_eq!(a.amplitude(0.0), 1.0);
    }

    #[test]
    fn fan_labels_mirror(n in 5usize..600, half in 0.5..100.0f64) {
        let l = fan_labels(n, -half, half);
        for i in 0..n {
            prop_assert_eq!(l[i], -l[n - 1 - i]);
        }
        prop_assert_eq!(l[0], -half);
        prop_assert_eq!(l[n - 1], half);
    }

    #[test]
    fn lagrange_is_exact_on_quadratics(a in -3.0..3.0f64, b in -3.0..3.0f64, c in -3.0..3.0f64,
                                       gaps in prop::collection::vec(0.1..2.0f64, 2..20)) {
        let mut x = vec![-1.0];
        for g in &gaps {
            x.push(x.last().unwrap() + g);
        }
        let f: Vec<f64> = x.iter().map(|x| a * x * x + b * x + c).collect();
        let (d1, d2) = lagrange3(&x, &f);
        for (i, xi) in x.iter().enumerate() {
            prop_assert!((d2[i] - 2.0 * a).abs() < 1e-9 * (1.0 + a.abs()) * 100.0, "d2 {} vs {}", d2[i], 2.0 * a);
            prop_assert!((d1[i] - (2.0 * a * xi + b)).abs() < 1e-8 * (1.0 + xi.abs()) * 100.0);
        }
    }

    #[test]
    fn transverse_unit_is_perpendicular(px in -1.0..1.0f64, pz in 0.01..2.0f64) {
        let t = transverse_unit([px, pz]);
        prop_assert!((t[0] * px + t[1] * pz).abs() < 1e-15);
        prop_assert!((t[0].hypot(t[1]) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn launch_g_ignores_normalization(eps in 0.1..0.6f64, k in -6i32..6, c in 0.01..100.0f64) {
        let (pos, mom, flux) = launch_state(&gaussian(eps).unwrap(), 41, 3.0 / eps);
        let g = flux_tube_g(&pos, &mom, &flux);
        let pow4 = 4f64.powi(k);
        let scaled: Vec<f64> = flux.iter().map(|f| f * pow4).collect();
        let gp = flux_tube_g(&pos, &mom, &scaled);
        prop_assert!(g.iter().zip(&gp).all(|(a, b)| a.to_bits() == b.to_bits()));
        let scaled: Vec<f64> = flux.iter().map(|f| f * c).collect();
        let gc = flux_tube_g(&pos, &mom, &scaled);
        for (a, b) in g.iter().zip(&gc) {
            prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()), "{a} vs {b}");
        }
    }
}

#[test]
fn launch_g_converges_with_ray_spacing() {
    for profile in [gaussian(0.25).unwrap(), algebraic(0.25, 1).unwrap(), algebraic(0.25, 2).unwrap()] {
        let err = |n: usize| {
            let (pos, mom, flux) = launch_state(&profile, n, 8.0);
            let g = flux_tube_g(&pos, &mom, &flux);
            // interior rays only; the ends take one-sided stencils
            (n / 10..n - n / 10)
                .map(|i| (g[i] - profile.g_analytic(pos[i][0]).unwrap()).abs())
                .fold(0.0, f64::max)
        };
        let e: Vec<f64> = [41, 81, 161, 321].iter().map(|&n| err(n)).collect();
        for w in e.windows(2) {
            assert!(w[0] / w[1] >= 3.0, "{}: {:?}", profile.describe(), e);
        }
    }
}
