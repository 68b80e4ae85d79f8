//! Area of each dominance region as Omega sweeps over four decades.
//!
//! cargo run --release --example area_sweep

use qutrit_qsl::speed;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let omegas = speed::log_spaced(1e-2, 1e2, 25);
    let reports = speed::area_sweep(&omegas, 200)?;
    println!("{:>10} {:>8} {:>8} {:>8}", "Omega", "f_MT", "f_ML", "f_ML*");
    for a in &reports {
        println!("{:>10.4} {:>8.4} {:>8.4} {:>8.4}", a.omega, a.f_mt, a.f_ml, a.f_ml_star);
    }
    let peak = reports.iter().max_by(|a, b| a.f_mt.total_cmp(&b.f_mt)).unwrap();
    println!("largest MT region at Omega = {:.4}", peak.omega);
    Ok(())
}
