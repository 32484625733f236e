//! Ray tracing with a wave-potential coupling.
//!
//! A beam is launched as a fan of rays carrying a fixed amplitude profile.
//! Each ray obeys Hamilton's equations in the dimensionless variables
//! ξ = x/λ0, ζ = z/λ0, with the momentum driven by the medium and by the
//! transverse gradient of the wave potential G = (∇²R)/R of the fan. With G
//! switched off the rays are those of geometrical optics; with G on, a
//! Gaussian fan spreads along the Gaussian-beam envelope and algebraic
//! profiles gather into fringes.
//!
//! The same integrator serves an optical front end (refractive index n²)
//! and a quantum one (potential V/E); media are stored as V/E internally.
//!
//! Examples, one per capability:
//!
//! * `launch_profiles`: amplitude and launch-plane G curves
//! * `gaussian_envelope`: Gaussian beam spreading against w(ζ)
//! * `fringe_dichotomy`: smooth divergence versus fringe formation
//! * `oracle_compare`: rays against a paraxial grid solution
//! * `front_end_equivalence`: optical and quantum runs coincide
//! * `go_limit`: the classical limit and coupling scaling
//! * `epsilon_sweep`: first gathering moves toward the launch plane
//! * `two_beam`: two displaced beams
//! * `convergence`: self-convergence in step size and ray spacing
//!
//! ```no_run
//! use wavetrace::config::RunConfig;
//! use wavetrace::cli::{analyze, simulate};
//!
//! let cfg = RunConfig::parse("profile.kind = algebraic\nprofile.n = 1").unwrap();
//! let r = cfg.resolve().unwrap();
//! let sim = simulate(&r).unwrap();
//! let a = analyze(&r, &sim.bundle);
//! println!("fringed: {:?}", a.fringe.map(|f| f.is_fringed));
//! ```

pub mod beam_model;
pub mod cli;
pub mod config;
pub mod error;
pub mod integrator;
pub mod launch_profiles;
pub mod oracles;
pub mod output;
pub mod plot;
pub mod wave_potential;
