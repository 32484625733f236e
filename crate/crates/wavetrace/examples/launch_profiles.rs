//! Launch amplitudes R(ξ) and launch-plane G = R''/R for the Gaussian and
//! the first two algebraic profiles, as a table and as two SVG plots.

use std::path::Path;

use wavetrace::launch_profiles::{algebraic, gaussian, LaunchProfile};
use wavetrace::output::atomic_write;
use wavetrace::plot::{Plot, Series};

fn curve(p: &LaunchProfile, f: impl Fn(&LaunchProfile, f64) -> f64) -> Vec<(f64, f64)> {
    (0..=600).map(|i| -15.0 + 0.05 * i as f64).map(|x| (x, f(p, x))).collect()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let eps = 0.25;
    let profiles = [gaussian(eps)?, algebraic(eps, 1)?, algebraic(eps, 2)?];

    println!("{:>6} {:>22} {:>22} {:>22}", "xi", "R0 / G0", "R1 / G1", "R2 / G2");
    for xi in [0.0, 2.0, 4.0, 6.0, 8.0, 12.0] {
        print!("{xi:>6.1}");
        for p in &profiles {
            print!(" {:>10.4} {:>11.5}", p.amplitude(xi), p.g_analytic(xi).unwrap());
        }
        println!();
    }

    let colors = ["#1f4e8c", "#c0392b", "#27ae60"];
    let mut amp = Plot::new("launch amplitude", "xi", "R");
    let mut pot = Plot::new("launch-plane G", "xi", "G = R''/R");
    for (p, c) in profiles.iter().zip(colors) {
        amp.add(Series::line(p.describe(), curve(p, |p, x| p.amplitude(x))).color(c));
        pot.add(Series::line(p.describe(), curve(p, |p, x| p.g_analytic(x).unwrap())).color(c));
    }
    let dir = Path::new("out/examples/launch_profiles");
    atomic_write(&dir.join("amplitude.svg"), amp.to_svg().as_bytes())?;
    atomic_write(&dir.join("g.svg"), pot.to_svg().as_bytes())?;
    println!("plots in {}", dir.display());
    Ok(())
}
