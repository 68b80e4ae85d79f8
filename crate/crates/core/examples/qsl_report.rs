//! Which bound sets the speed limit for a few states at a given Omega.
//!
//! cargo run --example qsl_report -- [Omega]

use qutrit_qsl::bounds::{self, StateDistribution};
use qutrit_qsl::Spectrum;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let omega: f64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(1.0);
    let spec = Spectrum::unit(omega)?;

    let states = [
        ("uniform", [1.0 / 3.0; 3]),
        ("centre of CA", [0.25, 0.5, 0.25]),
        ("near E1", [0.8, 0.15, 0.05]),
        ("near E3", [0.05, 0.15, 0.8]),
        ("E1/E3 qubit", [0.5, 0.0, 0.5]),
    ];

    println!("Omega = {omega}");
    println!(
        "{:<14} {:>8} {:>8} {:>8} {:>8} {:>8}  bound",
        "state", "sigma", "E", "E*", "alpha", "beta"
    );
    for (name, [r1, r2, r3]) in states {
        let state = StateDistribution::new(r1, r2, r3)?;
        let q = bounds::qsl_report(&state, &spec)?;
        println!(
            "{:<14} {:>8.4} {:>8.4} {:>8.4} {:>8.4} {:>8.4}  {} (tau_qsl = {:.4})",
            name,
            q.sigma,
            q.cal_e,
            q.cal_e_star,
            q.alpha,
            q.beta,
            q.dominant.label(),
            q.tau_qsl
        );
    }
    Ok(())
}
