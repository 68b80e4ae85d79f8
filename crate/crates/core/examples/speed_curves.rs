//! Speed s = tau_qsl / tau1 along the interior orthogonality curves.
//!
//! cargo run --release --example speed_curves

use qutrit_qsl::speed;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for omega in [0.5, 0.8, 1.0, 1.2, 1.5, 2.0] {
        let curve = speed::speed_curve(omega, 1000)?;
        let min = curve.iter().min_by(|a, b| a.s.total_cmp(&b.s)).unwrap();
        let max = curve.iter().max_by(|a, b| a.s.total_cmp(&b.s)).unwrap();
        let all_mt = curve.iter().all(|p| p.dominant.label() == "MT");
        println!(
            "Omega = {omega:<4} s in [{:.4}, {:.4}], min at (r2, r3) = ({:.4}, {:.4}), MT throughout: {all_mt}",
            min.s, max.s, min.r2, min.r3
        );
    }
    Ok(())
}
