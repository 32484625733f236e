//! Larger ε (narrower beams in wavelengths) gather closer to the launch
//! plane. The sweep runs each ε, the grid oracle gives the reference.

use std::path::Path;

use wavetrace::cli::{sweep, sweep_svg};
use wavetrace::config::RunConfig;
use wavetrace::output::atomic_write;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let base = RunConfig::parse("profile.kind = algebraic\nprofile.n = 2")?;
    let values: Vec<String> = ["0.1", "0.25", "0.5"].map(String::from).to_vec();
    let report = sweep(&base, "epsilon", &values)?;
    for run in &report.runs {
        println!(
            "eps {:>5}: first gathering {:?}, oracle {:?}, {}",
            run.value, run.first_gathering_zeta, run.oracle_first_gathering_zeta, run.status
        );
    }
    let out = Path::new("out/examples/epsilon_sweep.svg");
    atomic_write(out, sweep_svg(&report).as_bytes())?;
    println!("plot in {}", out.display());
    Ok(())
}
