//! Closed-form speed along the three edges of the central triangle.
//!
//! cargo run --example edge_speeds

use qutrit_qsl::ortho::Edge;
use qutrit_qsl::speed;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let families = [
        (Edge::AB, [2.0, 4.0, 2.0 / 3.0]),
        (Edge::BC, [0.5, 1.5, 1.0 / 4.0]),
        (Edge::CA, [1.0, 3.0, 5.0]),
    ];
    for (edge, omegas) in families {
        for omega in omegas {
            let row: Vec<String> = [0.05, 0.15, 0.25, 0.35, 0.45]
                .iter()
                .map(|&r| {
                    let e = speed::edge_speed_detail(edge, r, omega).unwrap();
                    format!("{:.4}({})", e.s, e.dominant.label())
                })
                .collect();
            println!("{edge:?} Omega = {omega:<6.4} {}", row.join(" "));
        }
    }
    match speed::edge_speed(Edge::AB, 0.25, 1.0) {
        Err(e) => println!("AB at Omega = 1: {e}"),
        Ok(s) => println!("AB at Omega = 1: s = {s}"),
    }
    Ok(())
}
