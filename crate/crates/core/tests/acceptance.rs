//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Tolerances are the contractual ones; nothing is relaxed.

use std::f64::consts::PI;
use std::process::Command;
use std::time::Instant;

use nalgebra::Matrix3;
use qutrit_qsl::bounds::{self, StateDistribution};
use qutrit_qsl::ortho::{self, Edge};
use qutrit_qsl::spectrum::{self, BoseHubbardParams};
use qutrit_qsl::{oracle, speed, Spectrum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const CURVE_OMEGAS: [f64; 6] = [0.5, 0.8, 1.0, 1.2, 1.5, 2.0];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qutrit-qsl"))
}

/// Uniform point on the simplex.
fn simplex(rng: &mut ChaCha8Rng) -> [f64; 3] {
    let (a, b): (f64, f64) = (rng.gen(), rng.gen());
    let (lo, hi) = (a.min(b), a.max(b));
    [lo, hi - lo, 1.0 - hi]
}

fn mt_area_equal_spacing() -> Outcome {
    let start = Instant::now();
    let out = bin()
        .args([
            "areas",
            "--omega-min",
            "1",
            "--omega-max",
            "1",
            "--steps",
            "1",
            "--n",
            "400",
        ])
        .output()
        .unwrap();
    let secs = start.elapsed().as_secs_f64();
    let text = String::from_utf8(out.stdout).unwrap();
    let row: Vec<f64> = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .map(|x| x.parse().unwrap())
        .collect();
    let f_mt = row[1];
    outcome(
        (f_mt - 0.20833).abs() <= 0.002 && secs < 10.0,
        format!(
            "f_MT = {f_mt:.5} (target 0.20833 +/- 0.002) in {secs:.2}s; as plane area {:.5}",
            f_mt * speed::PLANE_AREA
        ),
    )
}

fn ml_asymptote() -> Outcome {
    let a = speed::region_map(1e3, 400).unwrap().areas();
    outcome((a.f_ml - 0.75).abs() <= 0.01, format!("f_ML(1e3) = {:.5}", a.f_ml))
}

fn area_symmetry() -> Outcome {
    let mut worst = 0.0f64;
    for omega in [2.0, 5.0, 10.0] {
        let a = speed::region_map(omega, 400).unwrap().areas();
        let b = speed::region_map(1.0 / omega, 400).unwrap().areas();
        worst = worst.max((a.f_ml - b.f_ml_star).abs());
    }
    outcome(worst < 0.01, format!("max |f_ML(W) - f_ML*(1/W)| = {worst:.5}"))
}

fn curves_mt_dominated() -> Outcome {
    let mut violations = 0;
    for omega in CURVE_OMEGAS {
        let spec = Spectrum::unit(omega).unwrap();
        for p in ortho::trace_curve(omega, 1000).unwrap() {
            let (a, b) = bounds::alpha_beta(&p.state().unwrap(), &spec).unwrap();
            if !(a < 1.0 && b < 1.0) {
                violations += 1;
            }
        }
    }
    outcome(violations == 0, format!("{violations} violations in 6000 curve points"))
}

fn equal_spacing_endpoint() -> Outcome {
    let dist = |margin: f64| {
        let c = ortho::trace_curve_with_margin(1.0, 1000, margin).unwrap();
        let last = c.last().unwrap();
        (last.r2 - 0.5).hypot(last.r3 - 0.25)
    };
    let d: Vec<f64> = [1e-2, 1e-4, 1e-6].into_iter().map(dist).collect();
    outcome(
        d[2] < 1e-3 && d[0] > d[1] && d[1] > d[2],
        format!(
            "distance to (1/2, 1/4) at margins 1e-2/1e-4/1e-6: {:.2e} {:.2e} {:.2e}",
            d[0], d[1], d[2]
        ),
    )
}

fn speed_floor() -> Outcome {
    let mut mins = Vec::new();
    for omega in CURVE_OMEGAS {
        let c = speed::speed_curve(omega, 1000).unwrap();
        let m = c.iter().min_by(|a, b| a.s.total_cmp(&b.s)).unwrap();
        mins.push((omega, m.s, m.r2, m.r3));
    }
    let floor = mins.iter().map(|m| m.1).fold(f64::INFINITY, f64::min);
    let uni = StateDistribution::new(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0).unwrap();
    let s_uni = speed::speed(&uni, &Spectrum::unit(1.0).unwrap()).unwrap().s;
    let expect = 3.0 / (4.0 * (2.0f64 / 3.0).sqrt());
    let per: Vec<String> = mins.iter().map(|(o, s, _, _)| format!("{o}:{s:.4}")).collect();
    let worst = mins.iter().min_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
    outcome(
        floor >= 0.72 && (s_uni - expect).abs() <= 1e-6,
        format!(
            "min s = {floor:.5} at Omega={} (r2, r3) = ({:.4}, {:.4}); per curve [{}]; uniform s = {s_uni:.7}",
            worst.0,
            worst.2,
            worst.3,
            per.join(" ")
        ),
    )
}

fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    while b - a > 1e-12 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

fn edge_ca_minimum() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for omega in [1.0, 3.0, 5.0] {
        let (r, s) = golden_min(|r| speed::edge_speed(Edge::CA, r, omega).unwrap(), 1e-9, 0.5 - 1e-9);
        let (r_exp, s_exp) = (0.5 / (1.0 + omega), 1.0 / (1.0 + omega * omega).sqrt());
        pass &= (r - r_exp).abs() <= 1e-6 && (s - s_exp).abs() <= 1e-9;
        parts.push(format!("Omega={omega}: r*={r:.8} s*={s:.10}"));
    }
    outcome(pass, parts.join("; "))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let cases: Vec<(f64, f64)> = (0..1000)
        .map(|_| {
            let omega = 10f64.powf(rng.gen_range(-1.0..1.0));
            let (lo, hi) = ortho::curve_interval(omega).unwrap();
            (omega, lo + (hi - lo) * rng.gen_range(1e-6..1.0 - 1e-6))
        })
        .collect();
    let results: Vec<Result<f64, String>> = cases
        .par_iter()
        .map(|&(omega, tt)| {
            let [r1, r2, r3] = ortho::law_of_sines_weights(tt, omega).map_err(|e| e.to_string())?;
            let st = StateDistribution::new(r1, r2, r3).map_err(|e| e.to_string())?;
            let spec = Spectrum::unit(omega).unwrap();
            let tau = ortho::orthogonality(&st, &spec)
                .map_err(|e| e.to_string())?
                .tau1
                .ok_or(format!("no analytic tau1 at Omega={omega} tt={tt}"))?;
            let found = oracle::first_zero(&st, &spec, 1.5 * tau, oracle::max_step(&spec))
                .unwrap()
                .ok_or(format!("oracle found no zero at Omega={omega} tt={tt}"))?;
            let cert = oracle::certify(&st, &spec, tau).unwrap();
            if !cert.is_first_zero() {
                return Err(format!("earlier zero {:?} at Omega={omega} tt={tt}", cert.earlier_zero));
            }
            Ok((found - tau).abs() / tau)
        })
        .collect();
    let errors: Vec<&String> = results.iter().filter_map(|r| r.as_ref().err()).collect();
    let worst = results
        .iter()
        .filter_map(|r| r.as_ref().ok())
        .fold(0.0f64, |m, &x| m.max(x));
    outcome(
        errors.is_empty() && worst <= 1e-9,
        format!(
            "worst relative difference {worst:.2e}; {} failures{}",
            errors.len(),
            errors.first().map(|e| format!(", first: {e}")).unwrap_or_default()
        ),
    )
}

fn unreachability() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut cases = Vec::with_capacity(10_000);
    while cases.len() < 10_000 {
        let r = simplex(&mut rng);
        if r.iter().copied().fold(0.0, f64::max) > 0.55 {
            cases.push((r, 5.0 * (1.0 - rng.gen::<f64>())));
        }
    }
    let bad = cases
        .par_iter()
        .filter(|&&(r, omega)| {
            let st = StateDistribution::new(r[0], r[1], r[2]).unwrap();
            let spec = Spectrum::unit(omega).unwrap();
            let tr = oracle::overlap_trace(&st, &spec, 200.0 * PI, oracle::max_step(&spec)).unwrap();
            !tr.zeros.is_empty() || tr.min_abs() < 2.0 * st.max_weight() - 1.0 - 1e-9
        })
        .count();
    outcome(bad == 0, format!("{bad} of 10000 states violate the scan checks"))
}

fn bose_hubbard() -> Outcome {
    let mut detail = Vec::new();
    let half_ok = [0.3, 1.0, 7.0].iter().all(|&u| {
        let o = spectrum::bose_hubbard_omega(BoseHubbardParams::new(2f64.sqrt() * u, 0.0, u).unwrap()).omega;
        (o - 0.5).abs() <= 1e-12
    });
    detail.push(format!("J=sqrt2 U, K=0 gives 1/2: {half_ok}"));

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let crossing_ok = (0..1000).all(|_| {
        let (k, u): (f64, f64) = (rng.gen_range(0.01..5.0), rng.gen_range(0.0..5.0));
        let j = (2.0 * k * (u + k)).sqrt();
        spectrum::bose_hubbard_levels(BoseHubbardParams::new(j, k, u).unwrap()).is_crossing()
    });
    detail.push(format!("crossing flagged: {crossing_ok}"));

    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let (j, k, u) = (
            rng.gen_range(0.05..5.0),
            rng.gen_range(0.0..5.0),
            rng.gen_range(0.0..5.0),
        );
        let p = BoseHubbardParams::new(j, k, u).unwrap();
        if spectrum::bose_hubbard_levels(p).is_crossing() {
            continue;
        }
        let s = 2f64.sqrt() * j;
        let m = Matrix3::new(2.0 * u, -s, -2.0 * k, -s, 0.0, -s, -2.0 * k, -s, 2.0 * u);
        let e = m.symmetric_eigen().eigenvalues;
        let lv = spectrum::RawLevels::new(e[0], e[1], e[2]);
        let eig_omega = spectrum::spectrum_from_levels(lv).unwrap().omega();
        worst = worst.max((eig_omega - spectrum::bose_hubbard_omega(p).omega).abs());
    }
    detail.push(format!("closed form vs eigen max |dOmega| = {worst:.1e}"));
    outcome(half_ok && crossing_ok && worst <= 1e-12, detail.join("; "))
}

fn bhatia_davis() -> Outcome {
    let chunks: Vec<(f64, f64, usize)> = (0..100u64)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 + c);
            let (mut lo, mut hi, mut qubit_bad) = (f64::INFINITY, f64::NEG_INFINITY, 0);
            for i in 0..10_000 {
                let mut r = simplex(&mut rng);
                let omega = 10f64.powf(rng.gen_range(-3.0..3.0));
                let qubit = i % 10 == 0;
                if qubit {
                    r[rng.gen_range(0..3)] = 0.0;
                    let s: f64 = r.iter().sum();
                    if s == 0.0 {
                        continue;
                    }
                    r = r.map(|x| x / s);
                }
                let Ok(st) = StateDistribution::normalized(r[0], r[1], r[2]) else {
                    continue;
                };
                let Ok((a, b)) = bounds::alpha_beta(&st, &Spectrum::unit(omega).unwrap()) else {
                    continue;
                };
                let ab = a * b;
                if qubit {
                    qubit_bad += usize::from((ab - 1.0).abs() > 1e-12);
                } else {
                    lo = lo.min(ab);
                    hi = hi.max(ab);
                }
            }
            (lo, hi, qubit_bad)
        })
        .collect();
    let lo = chunks.iter().map(|c| c.0).fold(f64::INFINITY, f64::min);
    let hi = chunks.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max);
    let qubit_bad: usize = chunks.iter().map(|c| c.2).sum();
    outcome(
        lo >= 0.0 && hi <= 1.0 + 1e-12 && qubit_bad == 0,
        format!("alpha*beta in [{lo:.3e}, {hi:.15}] over 1e6 samples; {qubit_bad} qubit deviations"),
    )
}

fn cli_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<Vec<&str>> = vec![
        vec!["bounds", "--r1", "0.2", "--r2", "0.3", "--r3", "0.5", "--omega", "1.7"],
        vec!["region-map", "--omega", "1.3", "--n", "150"],
        vec!["region-map", "--omega", "1.3", "--n", "150", "--format", "ppm"],
        vec!["region-map", "--omega", "1.3", "--n", "60", "--format", "json"],
        vec!["areas", "--steps", "9", "--n", "150"],
        vec!["ortho", "--r1", "0.3", "--r2", "0.3", "--r3", "0.4", "--omega", "1"],
        vec!["curve", "--omega", "1.2", "--samples", "500"],
        vec!["edge-speed", "--edge", "bc", "--omega", "1.5", "--samples", "200"],
        vec!["bose-hubbard", "--j", "1.1", "--k", "0.4", "--u", "1"],
        vec!["bose-hubbard", "--map", "--n", "40"],
        vec!["verify", "--r1", "0.25", "--r2", "0.5", "--r3", "0.25", "--omega", "3"],
    ];
    let mut differing = Vec::new();
    for (i, args) in runs.iter().enumerate() {
        let bytes: Vec<Vec<u8>> = (0..2)
            .map(|k| {
                let p = dir.path().join(format!("{i}_{k}"));
                let ok = bin().args(args).arg("--out").arg(&p).status().unwrap().success();
                assert!(ok, "{args:?}");
                std::fs::read(&p).unwrap()
            })
            .collect();
        if bytes[0] != bytes[1] || bytes[0].is_empty() {
            differing.push(args[0]);
        }
    }
    outcome(
        differing.is_empty(),
        format!("{} subcommand runs, differing: {differing:?}", runs.len()),
    )
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("MT area at Omega = 1", mt_area_equal_spacing),
        ("ML asymptote", ml_asymptote),
        ("area symmetry", area_symmetry),
        ("interior curves are MT-dominated", curves_mt_dominated),
        ("Omega = 1 curve endpoint", equal_spacing_endpoint),
        ("speed floor", speed_floor),
        ("edge CA minimum", edge_ca_minimum),
        ("oracle equivalence", oracle_equivalence),
        ("unreachability", unreachability),
        ("Bose-Hubbard", bose_hubbard),
        ("Bhatia-Davis", bhatia_davis),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!o.pass);
        println!(
            "criterion {:>2} {tag}  {name} ({:.1}s): {}",
            i + 1,
            start.elapsed().as_secs_f64(),
            o.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
