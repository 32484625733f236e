use wavetrace::cli::{analyze, simulate};
use wavetrace::config::RunConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for text in ["profile.kind = gaussian", "profile.kind = algebraic\nprofile.n = 1"] {
        let r = RunConfig::parse(text)?.resolve()?;
        let sim = simulate(&r)?;
        let a = analyze(&r, &sim.bundle);
        let f = a.fringe.expect("detector plane reached");
        println!("{}", r.profile.describe());
        println!("  fringed at zeta {:.1}: {}", f.detector_zeta, f.is_fringed);
        for p in &f.peaks {
            println!("  peak at xi {:>7.2}, prominence {:.2}", p.position, p.prominence);
        }
        match a.first_gathering_zeta {
            Some(z) => println!("  first gathering at zeta {z:.2}"),
            None => println!("  no gathering"),
        }
    }
    Ok(())
}
