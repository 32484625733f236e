use wavetrace::cli::sweep;
use wavetrace::config::RunConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let base = RunConfig::parse("profile.kind = gaussian")?;
    for (parameter, values) in [("d_tau", ["0.1", "0.05", "0.025"]), ("n_rays", ["101", "201", "401"])] {
        let values: Vec<String> = values.map(String::from).to_vec();
        let report = sweep(&base, parameter, &values)?;
        println!("{parameter}");
        for c in &report.cauchy {
            println!("  {} -> {}: max detector difference {:.3e}", c.from, c.to, c.max_difference);
        }
        for r in &report.cauchy_ratios {
            println!("  ratio {r:.2}");
        }
    }
    Ok(())
}
