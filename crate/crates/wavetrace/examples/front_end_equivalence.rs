//! The optical and quantum front ends describe the same medium two ways:
//! n² = 1 + g·ξ and V/E = -g·ξ give identical trajectories.

use wavetrace::cli::simulate;
use wavetrace::config::RunConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let common = "profile.kind = gaussian\nintegrator.n_steps = 800\n";
    for g in [0.0, 1e-3, -2e-3] {
        let optical = RunConfig::parse(&format!("{common}front_end = optical\nmedium.kind = refractive\nmedium.grad_xi = {g}"))?;
        let quantum = RunConfig::parse(&format!("{common}front_end = quantum\nmedium.kind = potential\nmedium.grad_xi = {}", -g))?;
        let a = simulate(&optical.resolve()?)?.bundle;
        let b = simulate(&quantum.resolve()?)?.bundle;
        let centre = a.n_rays() / 2;
        println!(
            "grad {g:>7}: identical = {}, centre ray ends at xi = {:.4}",
            a.same_trajectories(&b),
            a.last().unwrap().rays[centre].xi
        );
    }
    Ok(())
}
