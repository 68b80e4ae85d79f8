//! Level structure of the extended Bose-Hubbard dimer with two bosons and
//! where the equally spaced and commensurate cases sit in (J, K).
//!
//! cargo run --example bose_hubbard

use qutrit_qsl::spectrum::{self, BoseHubbardParams, TripleWellParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let u = 1.0;
    for (j, k) in [(2f64.sqrt(), 0.0), (1.0, 0.0), (0.5, 0.5), (2.0, 1.0), (3.0, 0.2)] {
        let p = BoseHubbardParams::new(j, k, u)?;
        let lv = spectrum::bose_hubbard_levels(p);
        let om = spectrum::bose_hubbard_omega(p);
        let [e1, e2, e3] = lv.levels.as_array();
        println!(
            "J = {j:.4} K = {k:.2}: E = ({e1:.4}, {e2:.4}, {e3:.4}) Omega = {:.6} [{}]",
            om.omega,
            om.branch.label()
        );
    }

    // Omega along K = 0 grows monotonically from 0 toward 1 as J/U grows.
    let j_half = (1..=4000)
        .map(|i| i as f64 * 1e-3)
        .find(|&j| spectrum::bose_hubbard_omega(BoseHubbardParams::new(j, 0.0, u).unwrap()).omega >= 0.5);
    println!(
        "K = 0: Omega first reaches 1/2 near J/U = {:.3}",
        j_half.unwrap_or(f64::NAN)
    );

    let tw = spectrum::triple_well_levels(TripleWellParams::new(-1.0, -0.3)?);
    let s = spectrum::spectrum_from_levels(tw)?;
    println!("triple well h1 = -1, h2 = -0.3: Omega = {:.6}", s.omega());
    Ok(())
}
