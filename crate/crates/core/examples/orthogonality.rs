//! Orthogonality for vertex, edge and interior states, checked against a
//! direct scan of the overlap.
//!
//! cargo run --example orthogonality

use qutrit_qsl::bounds::StateDistribution;
use qutrit_qsl::ortho;
use qutrit_qsl::Spectrum;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        ("vertex A", [0.5, 0.5, 0.0], 0.7),
        ("AB, Omega = 2", [0.5, 0.3, 0.2], 2.0),
        ("AB, Omega = 1", [0.5, 0.3, 0.2], 1.0),
        ("BC, Omega = 1/2", [0.25, 0.25, 0.5], 0.5),
        ("CA, Omega = 3", [0.2, 0.5, 0.3], 3.0),
        ("uniform, Omega = 1", [1.0 / 3.0; 3], 1.0),
        ("uniform, Omega = 2", [1.0 / 3.0; 3], 2.0),
        ("outside", [0.6, 0.3, 0.1], 1.0),
    ];
    for (name, [r1, r2, r3], omega) in cases {
        let state = StateDistribution::new(r1, r2, r3)?;
        let spec = Spectrum::unit(omega)?;
        let (res, cert) = ortho::certified_orthogonality(&state, &spec)?;
        print!("{name:<20} {:?}", res.reachable);
        match (res.tau1, cert) {
            (Some(t), Some(c)) => println!(
                "  tau1 = {:.6} ({:.4} pi), |S| = {:.1e}, first zero: {}",
                t,
                t / std::f64::consts::PI,
                c.residual,
                c.is_first_zero()
            ),
            _ => println!(),
        }
    }
    Ok(())
}
