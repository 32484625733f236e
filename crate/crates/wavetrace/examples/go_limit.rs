//! Scaling the wave-potential coefficient down to zero moves a Gaussian
//! fan onto its geometrical-optics rays, which stay straight in vacuum.

use wavetrace::cli::simulate;
use wavetrace::config::RunConfig;

fn detector_xi(extra: &str) -> Result<Vec<f64>, Box<dyn std::error::Error>> {
    let r = RunConfig::parse(&format!("profile.kind = gaussian\n{extra}"))?.resolve()?;
    Ok(simulate(&r)?.bundle.positions_at_zeta(r.detector_zeta)?)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let go = detector_xi("integrator.go_limit = true")?;
    let straight = go.iter().zip(&detector_xi("integrator.coupling_scale = 0")?).all(|(a, b)| a == b);
    println!("coupling_scale = 0 reproduces the GO run: {straight}");
    for s in [1.0, 0.5, 0.25, 0.1, 0.01] {
        let xi = detector_xi(&format!("integrator.coupling_scale = {s}"))?;
        let d = xi.iter().zip(&go).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        println!("scale {s:>5}: max detector difference to GO {d:.4}");
    }
    Ok(())
}
