//! Closed-form first orthogonality times versus a brute-force scan of the
//! overlap, for random points on the interior curves.
//!
//! cargo run --release --example oracle_check

use qutrit_qsl::{oracle, ortho, Spectrum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let omega = rng.gen_range(0.2..4.0);
        let (lo, hi) = ortho::curve_interval(omega)?;
        let tt = rng.gen_range(lo..hi);
        let [r1, r2, r3] = ortho::law_of_sines_weights(tt, omega)?;
        let state = qutrit_qsl::StateDistribution::new(r1, r2, r3)?;
        let spec = Spectrum::unit(omega)?;
        let analytic = ortho::orthogonality(&state, &spec)?
            .tau1
            .expect("curve point reaches zero");
        let scanned =
            oracle::first_zero(&state, &spec, 2.0 * analytic, oracle::max_step(&spec))?.expect("scan finds the zero");
        worst = worst.max((analytic - scanned).abs() / analytic);
    }
    println!("50 curve points: worst relative disagreement {worst:.2e}");
    Ok(())
}
