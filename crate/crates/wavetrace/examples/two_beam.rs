//! Two Gaussian beams launched side by side at ξ = ±ξ0. Writes the
//! trajectory pattern for each separation.

use std::path::Path;

use wavetrace::cli::{analyze, simulate};
use wavetrace::config::RunConfig;
use wavetrace::output::{atomic_write, pattern_svg};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for xi0 in [6.0, 8.0, 12.0] {
        let cfg = RunConfig::parse(&format!("profile.kind = two_beam\nprofile.xi0 = {xi0}\nfan.n_rays = 401"))?;
        let r = cfg.resolve()?;
        let sim = simulate(&r)?;
        let a = analyze(&r, &sim.bundle);
        print!("xi0 = {xi0:>4}: reached zeta {:.1}", sim.bundle.zeta_reached());
        if let Some(e) = &sim.error {
            print!(" (halted: {e})");
        }
        if let Some(f) = &a.fringe {
            let peaks: Vec<String> = f.peaks.iter().map(|p| format!("{:.1}", p.position)).collect();
            print!(", detector peaks [{}]", peaks.join(", "));
        }
        println!();
        let svg = pattern_svg(&sim.bundle, &r.profile.describe(), 80, Some(r.detector_zeta));
        atomic_write(&Path::new("out/examples/two_beam").join(format!("xi0_{xi0}.svg")), svg.as_bytes())?;
    }
    Ok(())
}
