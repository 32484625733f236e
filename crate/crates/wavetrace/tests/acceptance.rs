//! Acceptance criteria, one line each. Exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use wavetrace::beam_model::{Medium, ScalarField, TrajectoryBundle};
use wavetrace::cli::{oracle_comparison, sweep};
use wavetrace::config::RunConfig;
use wavetrace::error::Error;
use wavetrace::integrator::{compute_wave_potential, run, FanSpec, IntegratorConfig};
use wavetrace::launch_profiles::{algebraic, custom_samples, gaussian, sample_fan, two_beam, LaunchProfile};
use wavetrace::oracles::{detect_fringes, envelope_error, rayleigh_range};
use wavetrace::wave_potential::{parametrize, second_derivative_on_fan};

const EPS: f64 = 0.25;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

/// Full bundle, or the partial one of a halted run with its cause.
fn integrate(p: &LaunchProfile, m: &Medium, fan: &FanSpec, cfg: &IntegratorConfig) -> (TrajectoryBundle, Option<Error>) {
    match run(p, m, fan, cfg) {
        Ok(b) => (b, None),
        Err(Error::Halted { cause, partial }) => (*partial, Some(*cause)),
        Err(e) => panic!("launch failed: {e}"),
    }
}

fn default_run(p: &LaunchProfile) -> (TrajectoryBundle, Option<Error>) {
    let cfg = IntegratorConfig::for_epsilon(p.epsilon);
    integrate(p, &Medium::vacuum(), &FanSpec::auto(p), &cfg)
}

fn detector() -> f64 {
    2.0 * PI / (EPS * EPS)
}

/// Edge rays travel obliquely, so leave a margin beyond τ = ζ.
fn steps_past(zeta: f64, d_tau: f64) -> usize {
    (1.25 * zeta / d_tau).ceil() as usize
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Detector-plane ξ of `fine` at the launch labels of `coarse`, which must
/// be a subset of the fine labels.
fn nested_positions(coarse: &TrajectoryBundle, fine: &TrajectoryBundle, zeta: f64) -> Option<(Vec<f64>, Vec<f64>)> {
    let fl = fine.labels();
    let idx: Vec<usize> = coarse
        .labels()
        .iter()
        .map(|l| fl.iter().position(|f| f == l).expect("nested labels"))
        .collect();
    let pc = coarse.positions_at_zeta(zeta).ok()?;
    let pf = fine.positions_at_zeta(zeta).ok()?;
    Some((pc, idx.iter().map(|&i| pf[i]).collect()))
}

fn mirror_error(b: &TrajectoryBundle) -> f64 {
    b.snapshots
        .iter()
        .flat_map(|s| {
            let n = s.rays.len();
            (0..n).map(move |i| {
                let (a, z) = (&s.rays[i], &s.rays[n - 1 - i]);
                (a.xi + z.xi).abs().max((a.rho_x + z.rho_x).abs()).max((a.zeta - z.zeta).abs())
            })
        })
        .fold(0.0, f64::max)
}

fn c1_straight_rays() -> Outcome {
    let xi: Vec<f64> = (0..=80).map(|i| -40.0 + i as f64).collect();
    let profile = custom_samples(xi, vec![1.0; 81], EPS).unwrap();
    let fan = FanSpec { n_rays: 101, xi_min: -20.0, xi_max: 20.0, amplitude_floor: 1e-8 };
    let mut cfg = IntegratorConfig::for_epsilon(EPS);
    cfg.n_steps = 2000;
    let t = Instant::now();
    let (b, err) = integrate(&profile, &Medium::vacuum(), &fan, &cfg);
    let secs = t.elapsed().as_secs_f64();
    let worst = b
        .snapshots
        .iter()
        .flat_map(|s| s.rays.iter().map(|r| (r.xi - r.launch_label()).abs() / r.zeta.max(1e-300)))
        .fold(0.0, f64::max);
    let reached = b.zeta_reached();
    outcome(
        err.is_none() && reached >= 200.0 - 1e-9 && worst < 1e-12 && secs < 1.0,
        format!("max |dxi|/zeta = {worst:.2e} to zeta {reached:.1} (limit 1e-12), {secs:.3} s (limit 1 s)"),
    )
}

fn c2_momentum() -> Outcome {
    let p = gaussian(EPS).unwrap();
    let two_rr = 2.0 * rayleigh_range(EPS);
    let mut cfg = IntegratorConfig::for_epsilon(EPS);
    cfg.n_steps = steps_past(two_rr, cfg.d_tau);
    cfg.enforce_constraint = false;
    let (free, e1) = integrate(&p, &Medium::vacuum(), &FanSpec::auto(&p), &cfg);
    cfg.enforce_constraint = true;
    let (held, e2) = integrate(&p, &Medium::vacuum(), &FanSpec::auto(&p), &cfg);
    let d_free = free.diagnostics.max_drift_recorded;
    let d_held = held.diagnostics.max_drift_recorded;
    let halted: Vec<String> = [e1, e2].into_iter().flatten().map(|e| e.to_string()).collect();
    let reached = free.zeta_reached().min(held.zeta_reached());
    outcome(
        halted.is_empty() && reached >= two_rr && d_free < 1e-6 && d_held < 1e-14,
        format!(
            "unconstrained {d_free:.2e} (limit 1e-6), constrained {d_held:.2e} (limit 1e-14) to zeta {reached:.1}{}",
            if halted.is_empty() { String::new() } else { format!("; halted: {}", halted.join(", ")) }
        ),
    )
}

fn c3_envelope() -> Outcome {
    let t = Instant::now();
    let (b, err) = default_run(&gaussian(EPS).unwrap());
    let secs = t.elapsed().as_secs_f64();
    let e = envelope_error(&b, EPS, detector());
    outcome(
        err.is_none() && e.is_some_and(|e| e < 0.02) && secs < 10.0,
        format!("max relative error {:.3}% (limit 2%), {secs:.2} s (limit 10 s)", 100.0 * e.unwrap_or(f64::NAN)),
    )
}

fn c4_launch_g() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for p in [gaussian(EPS).unwrap(), algebraic(EPS, 1).unwrap()] {
        let half = 3.0 / EPS;
        let n = (2.0 * half / 0.05).round() as usize + 1;
        let mut fan = sample_fan(&p, n, -half, half).unwrap();
        let mid = n / 2;
        assert_eq!(fan.rays[mid].xi, 0.0);
        let direct = second_derivative_on_fan(&fan, &parametrize(&fan).unwrap()).unwrap()[mid];
        compute_wave_potential(&mut fan, &IntegratorConfig::for_epsilon(EPS)).unwrap();
        let coupled = fan.g_values[mid];
        for g in [direct, coupled] {
            ok &= (g + 0.125).abs() <= 1e-3;
        }
        parts.push(format!("{}: {direct:.6} / {coupled:.6}", p.describe()));
    }
    outcome(ok, format!("G(0) direct / coupled, target -0.125 +- 1e-3: {}", parts.join("; ")))
}

fn c5_dichotomy() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for (p, want) in [
        (gaussian(EPS).unwrap(), false),
        (algebraic(EPS, 1).unwrap(), true),
        (algebraic(EPS, 2).unwrap(), true),
    ] {
        let (b, err) = default_run(&p);
        match detect_fringes(&b, detector(), p.w0()) {
            Ok(f) => {
                ok &= f.is_fringed == want;
                parts.push(format!("{} fringed={} (want {want})", p.describe(), f.is_fringed));
            }
            Err(e) => {
                ok = false;
                let cause = err.map_or(e.to_string(), |c| c.to_string());
                parts.push(format!("{} no detector plane: {cause}", p.describe()));
            }
        }
    }
    outcome(ok, parts.join("; "))
}

fn c6_fringe_positions() -> Outcome {
    let t = Instant::now();
    let mut parts = Vec::new();
    let mut ok = true;
    for n in [1, 2] {
        let cfg = RunConfig::parse(&format!("profile.kind = algebraic\nprofile.n = {n}")).unwrap();
        let (cmp, _) = oracle_comparison(&cfg.resolve().unwrap()).unwrap();
        let reached = cmp.checks.iter().find(|c| c.name == "simulation_reached_detector").unwrap().passed;
        let peaks = cmp.checks.iter().find(|c| c.name == "fringe_peaks_within_one_bin");
        let this = reached && peaks.is_some_and(|c| c.passed);
        ok &= this;
        let detail = match (&cmp.simulated_fringes, reached) {
            (Some(f), true) => format!(
                "N={n}: {} simulated peaks, worst delta {:.3} (bin {:.3}), {} unmatched oracle peaks",
                f.peaks.len(),
                cmp.fringe_deltas.iter().cloned().fold(0.0, f64::max),
                f.bin_width,
                cmp.unmatched_oracle_peaks
            ),
            _ => format!("N={n}: simulation stopped at zeta {:.1} before the detector", cmp.zeta_reached),
        };
        parts.push(detail);
    }
    let secs = t.elapsed().as_secs_f64();
    ok &= secs < 60.0;
    outcome(ok, format!("{}; {secs:.1} s (limit 60 s)", parts.join("; ")))
}

fn c7_epsilon() -> Outcome {
    let base = RunConfig::parse("profile.kind = algebraic\nprofile.n = 2").unwrap();
    let values: Vec<String> = ["0.1", "0.25", "0.5"].iter().map(|s| s.to_string()).collect();
    let report = sweep(&base, "epsilon", &values).unwrap();
    let z: Vec<Option<f64>> = report.runs.iter().map(|r| r.first_gathering_zeta).collect();
    let ok = z.iter().all(Option::is_some) && z.windows(2).all(|w| w[0] > w[1]);
    outcome(ok, format!("first gathering zeta at eps 0.1, 0.25, 0.5: {z:?}"))
}

fn c8_normalization() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for p in [gaussian(EPS).unwrap(), algebraic(EPS, 1).unwrap(), algebraic(EPS, 2).unwrap()] {
        let (a, _) = default_run(&p);
        let (b, _) = default_run(&p.scaled(7.3));
        let same = a.same_trajectories(&b);
        ok &= same;
        parts.push(format!("{}: {} steps {}", p.describe(), a.snapshots.len(), if same { "identical" } else { "differ" }));
    }
    outcome(ok, parts.join("; "))
}

fn c9_front_ends() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    let pairs = [
        ("n^2 = 1 / V = 0", "medium.kind = refractive\nmedium.c0 = 1", "front_end = quantum\nmedium.kind = potential\nmedium.c0 = 0"),
        (
            "n^2 = 1 + 1e-3 xi / V = -1e-3 xi",
            "medium.kind = refractive\nmedium.c0 = 1\nmedium.grad_xi = 0.001",
            "front_end = quantum\nmedium.kind = potential\nmedium.c0 = 0\nmedium.grad_xi = -0.001",
        ),
    ];
    for (name, opt, qm) in pairs {
        let common = "profile.kind = algebraic\nprofile.n = 1\nintegrator.n_steps = 600\n";
        let a = RunConfig::parse(&format!("{common}{opt}")).unwrap().resolve().unwrap();
        let b = RunConfig::parse(&format!("{common}{qm}")).unwrap().resolve().unwrap();
        let (ba, _) = integrate(&a.profile, &a.medium, &a.fan, &a.integrator);
        let (bb, _) = integrate(&b.profile, &b.medium, &b.fan, &b.integrator);
        let same = ba.same_trajectories(&bb) && ba.snapshots.len() == 601;
        ok &= same;
        parts.push(format!("{name}: {}", if same { "identical" } else { "differ" }));
    }
    outcome(ok, parts.join("; "))
}

fn c10_go_limit() -> Outcome {
    let g = 2e-3;
    let medium = Medium::potential(ScalarField::Linear { c0: 0.1, g_xi: g, g_zeta: 0.0 });
    let p = gaussian(EPS).unwrap();
    let mut cfg = IntegratorConfig::for_epsilon(EPS);
    cfg.n_steps = 1000;
    cfg.go_limit_mode = true;
    cfg.enforce_constraint = false;
    let (b, err) = integrate(&p, &medium, &FanSpec::auto(&p), &cfg);
    let parabola = b
        .snapshots
        .iter()
        .flat_map(|s| {
            s.rays.iter().map(|r| {
                let x0 = r.launch_label();
                let rz = (1.0 - medium.potential_over_e(x0, 0.0)).sqrt();
                let t = r.tau;
                (r.xi - (x0 - 0.25 * g * t * t)).abs().max((r.zeta - rz * t).abs())
            })
        })
        .fold(0.0, f64::max);

    let n1 = algebraic(EPS, 1).unwrap();
    let fan = FanSpec::auto(&n1);
    let mut cfg = IntegratorConfig::for_epsilon(EPS);
    cfg.go_limit_mode = true;
    let (go, _) = integrate(&n1, &Medium::vacuum(), &fan, &cfg);
    let go_pos = go.positions_at_zeta(detector()).unwrap();
    cfg.go_limit_mode = false;
    let scales = [1.0, 0.5, 0.25, 0.125, 0.0625, 0.0];
    let diffs: Vec<Option<f64>> = scales
        .iter()
        .map(|&s| {
            cfg.coupling_scale = s;
            let (b, _) = integrate(&n1, &Medium::vacuum(), &fan, &cfg);
            b.positions_at_zeta(detector()).ok().map(|p| max_abs_diff(&p, &go_pos))
        })
        .collect();
    let monotone = diffs.iter().all(Option::is_some)
        && diffs.windows(2).all(|w| w[1].unwrap() < w[0].unwrap())
        && diffs.last() == Some(&Some(0.0));
    let shown: Vec<String> = diffs.iter().map(|d| d.map_or("-".into(), |d| format!("{d:.3}"))).collect();
    outcome(
        err.is_none() && parabola < 1e-10 && monotone,
        format!(
            "parabola error {parabola:.2e} over 1000 steps (limit 1e-10); detector diff to GO at scale {scales:?}: [{}]",
            shown.join(", ")
        ),
    )
}

fn c11_convergence() -> Outcome {
    let zd = detector();
    let p = gaussian(EPS).unwrap();
    let fan = FanSpec::auto(&p);
    let by_dtau: Vec<TrajectoryBundle> = [0.1, 0.05, 0.025, 0.0125]
        .iter()
        .map(|&dt| {
            let mut cfg = IntegratorConfig::for_epsilon(EPS);
            cfg.d_tau = dt;
            cfg.n_steps = steps_past(zd, dt);
            integrate(&p, &Medium::vacuum(), &fan, &cfg).0
        })
        .collect();
    let dt_diffs: Vec<f64> = by_dtau
        .windows(2)
        .map(|w| match (w[0].positions_at_zeta(zd), w[1].positions_at_zeta(zd)) {
            (Ok(a), Ok(b)) => max_abs_diff(&a, &b),
            _ => f64::NAN,
        })
        .collect();
    let dt_ratios: Vec<f64> = dt_diffs.windows(2).map(|w| w[0] / w[1]).collect();

    let by_h: Vec<TrajectoryBundle> = [101, 201, 401]
        .iter()
        .map(|&n| {
            let mut cfg = IntegratorConfig::for_epsilon(EPS);
            cfg.d_tau = 0.00625;
            cfg.n_steps = steps_past(zd, cfg.d_tau);
            integrate(&p, &Medium::vacuum(), &FanSpec { n_rays: n, ..fan.clone() }, &cfg).0
        })
        .collect();
    let h_diffs: Vec<f64> = by_h
        .windows(2)
        .map(|w| nested_positions(&w[0], &w[1], zd).map_or(f64::NAN, |(a, b)| max_abs_diff(&a, &b)))
        .collect();
    let h_ratios: Vec<f64> = h_diffs.windows(2).map(|w| w[0] / w[1]).collect();

    let mut mirror = Vec::new();
    for prof in [
        gaussian(EPS).unwrap(),
        algebraic(EPS, 1).unwrap(),
        algebraic(EPS, 2).unwrap(),
        two_beam(gaussian(EPS).unwrap(), 8.0).unwrap(),
    ] {
        let (b, _) = default_run(&prof);
        mirror.push((prof.describe(), mirror_error(&b)));
    }
    let mirror_ok = mirror.iter().all(|(_, e)| *e <= 1e-10);
    let ok = dt_ratios.len() == 2 && h_ratios.len() == 1 && dt_ratios.iter().chain(&h_ratios).all(|r| *r >= 3.0) && mirror_ok;

    let n1 = algebraic(EPS, 1).unwrap();
    let n1_fan = FanSpec::auto(&n1);
    let n1_runs: Vec<Option<Vec<f64>>> = [0.1, 0.05, 0.025]
        .iter()
        .map(|&dt| {
            let mut cfg = IntegratorConfig::for_epsilon(EPS);
            cfg.d_tau = dt;
            cfg.n_steps = steps_past(zd, dt);
            integrate(&n1, &Medium::vacuum(), &n1_fan, &cfg).0.positions_at_zeta(zd).ok()
        })
        .collect();
    let n1_diffs: Vec<String> = n1_runs
        .windows(2)
        .map(|w| match (&w[0], &w[1]) {
            (Some(a), Some(b)) => format!("{:.2e}", max_abs_diff(a, b)),
            _ => "-".into(),
        })
        .collect();

    let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.2}")).collect::<Vec<_>>().join(", ");
    let mirrors: Vec<String> = mirror.iter().map(|(n, e)| format!("{n} {e:.1e}")).collect();
    outcome(
        ok,
        format!(
            "gaussian d_tau ratios [{}], spacing ratios [{}] (limit 3); mirror [{}] (limit 1e-10); N=1 d_tau diffs [{}] (reported only)",
            fmt(&dt_ratios),
            fmt(&h_ratios),
            mirrors.join("; "),
            n1_diffs.join(", ")
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("straight-ray limit", c1_straight_rays),
        ("momentum conservation", c2_momentum),
        ("gaussian envelope", c3_envelope),
        ("launch-plane G", c4_launch_g),
        ("fringe dichotomy", c5_dichotomy),
        ("fringe-position agreement", c6_fringe_positions),
        ("epsilon monotonicity", c7_epsilon),
        ("normalization invariance", c8_normalization),
        ("front-end equivalence", c9_front_ends),
        ("classical limit", c10_go_limit),
        ("self-convergence", c11_convergence),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|x| name.contains(x.as_str())) {
            continue;
        }
        let o = f();
        println!("{} criterion {:>2} {name}: {}", if o.passed { "PASS" } else { "FAIL" }, i + 1, o.detail);
        failed += usize::from(!o.passed);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
