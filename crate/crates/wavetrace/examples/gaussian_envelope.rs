//! A Gaussian fan spreads self-similarly: the ray launched at ξ0 follows
//! ξ0·√(1 + (ζ/ζR)²).

use wavetrace::cli::simulate;
use wavetrace::config::RunConfig;
use wavetrace::oracles::{envelope_error, rayleigh_range};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = RunConfig::parse("profile.kind = gaussian")?.resolve()?;
    let sim = simulate(&r)?;
    let b = &sim.bundle;
    let zr = rayleigh_range(r.profile.epsilon);
    println!("{} rays, {} snapshots, {:.2} s", b.n_rays(), b.snapshots.len(), sim.runtime_s);

    let ray = b.labels().iter().position(|l| *l >= r.profile.w0()).unwrap();
    let label = b.labels()[ray];
    println!("ray {ray} launched at xi = {label:.3}");
    println!("{:>8} {:>10} {:>10} {:>10}", "zeta", "ray", "envelope", "rel err");
    for k in 0..=7 {
        let zeta = k as f64 * 0.25 * r.detector_zeta;
        let xi = b.xi_at_zeta(ray, zeta).unwrap();
        let want = label * (1.0 + (zeta / zr).powi(2)).sqrt();
        println!("{zeta:>8.2} {xi:>10.4} {want:>10.4} {:>10.2e}", (xi - want).abs() / want);
    }
    let e = envelope_error(b, r.profile.epsilon, r.detector_zeta).unwrap();
    println!("worst relative envelope error up to the detector: {:.3}%", 100.0 * e);
    Ok(())
}
