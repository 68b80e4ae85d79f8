//! Colour map of the dominant bound over the (r2, r3) plane, written as PPM.
//!
//! cargo run --release --example region_map -- [Omega] [N] [out.ppm]

use qutrit_qsl::cli::map_to_ppm;
use qutrit_qsl::speed;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let omega: f64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1.0);
    let n: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(400);
    let out = args.next().unwrap_or_else(|| format!("region_map_{omega}.ppm"));

    let grid = speed::region_map(omega, n)?;
    std::fs::write(&out, map_to_ppm(&grid))?;

    let a = grid.areas();
    println!("wrote {out}");
    println!("fractions: MT {:.5}  ML {:.5}  ML* {:.5}", a.f_mt, a.f_ml, a.f_ml_star);
    let [mt, ml, mls] = a.plane_areas();
    println!("plane areas: MT {mt:.5}  ML {ml:.5}  ML* {mls:.5}");
    Ok(())
}
