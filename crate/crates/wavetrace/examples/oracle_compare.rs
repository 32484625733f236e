//! Rays against the paraxial grid solution for an algebraic N=1 beam.
//! Pass a profile order to try another, e.g. `-- 2`.

use wavetrace::cli::oracle_comparison;
use wavetrace::config::RunConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = std::env::args().nth(1).unwrap_or_else(|| "1".into());
    let r = RunConfig::parse(&format!("profile.kind = algebraic\nprofile.n = {n}"))?.resolve()?;
    let (cmp, field) = oracle_comparison(&r)?;
    println!("{} at zeta {:.1}, grid of {} points", cmp.profile, cmp.detector_zeta, field.xi.len());
    if let Some(h) = &cmp.halted {
        println!("halted: {}", h.message);
    }
    let oracle: Vec<String> = cmp.oracle_fringes.peaks.iter().map(|p| format!("{:.2}", p.position)).collect();
    println!("oracle peaks: {}", oracle.join(" "));
    if let Some(f) = &cmp.simulated_fringes {
        let sim: Vec<String> = f.peaks.iter().map(|p| format!("{:.2}", p.position)).collect();
        println!("ray peaks:    {}", sim.join(" "));
    }
    for c in &cmp.checks {
        let show = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.4}"));
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        println!("{verdict} {} = {} (threshold {})", c.name, show(c.value), show(c.threshold));
    }
    Ok(())
}
