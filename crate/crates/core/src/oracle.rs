//! Brute-force overlap evolution.
//!
//! Evolves the survival amplitude `S(t) = <psi(t)|psi(0)>` directly in the
//! energy eigenbasis and locates its zeros numerically. Nothing here uses
//! the closed-form orthogonality results, so it can be used to check them.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::StateDistribution;
use crate::spectrum::Spectrum;

/// `|S|` below which a refined minimum counts as an exact zero.
pub const ZERO_THRESHOLD: f64 = 1e-9;
/// Width of the final golden-section bracket, relative to `max(1, t)`.
pub const REFINE_TOL: f64 = 1e-12;
/// Coarse samples required per period of the fastest phase, `2 pi / omega31`.
pub const SAMPLES_PER_PERIOD: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum OracleError {
    #[error("coarse step {step} exceeds {max} (1/20 of the fastest period)")]
    StepTooCoarse { step: f64, max: f64 },
    #[error("scan horizon must be positive, got {0}")]
    BadHorizon(f64),
}

/// `r1 + r2 e^{i omega21 t} + r3 e^{i omega31 t}`. The global phase
/// `e^{i E1 t}` is dropped; it does not change `|S|`.
pub fn overlap(state: &StateDistribution, spec: &Spectrum, t: f64) -> Complex64 {
    let [r1, r2, r3] = state.weights();
    let s = Complex64::new(r1, 0.0)
        + r2 * Complex64::from_polar(1.0, spec.omega21() * t)
        + r3 * Complex64::from_polar(1.0, spec.omega31() * t);
    debug_assert!({
        let v = overlap_vector(state, spec, t);
        (s.norm() - v[0].hypot(v[1])).abs() < 1e-14
    });
    s
}

/// The same sum written as planar vectors `r_i (cos omega_i1 t, sin omega_i1 t)`.
/// Orthogonality is the closure of the triangle they form.
pub fn overlap_vector(state: &StateDistribution, spec: &Spectrum, t: f64) -> [f64; 2] {
    let [r1, r2, r3] = state.weights();
    let (s2, c2) = (spec.omega21() * t).sin_cos();
    let (s3, c3) = (spec.omega31() * t).sin_cos();
    [r1 + r2 * c2 + r3 * c3, r2 * s2 + r3 * s3]
}

fn overlap_norm_sqr(state: &StateDistribution, spec: &Spectrum, t: f64) -> f64 {
    let [x, y] = overlap_vector(state, spec, t);
    x * x + y * y
}

/// Largest admissible coarse step for `spec`.
pub fn max_step(spec: &Spectrum) -> f64 {
    2.0 * PI / spec.omega31() / SAMPLES_PER_PERIOD
}

fn check_scan(spec: &Spectrum, t_max: f64, step: f64) -> Result<(), OracleError> {
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(OracleError::BadHorizon(t_max));
    }
    let max = max_step(spec);
    if !(step > 0.0 && step <= max * (1.0 + 1e-12)) {
        return Err(OracleError::StepTooCoarse { step, max });
    }
    Ok(())
}

/// Sampled overlap on `[0, t_max]` together with every certified zero.
#[derive(Debug, Clone, Serialize)]
pub struct OverlapTrace {
    pub times: Vec<f64>,
    #[serde(skip)]
    pub values: Vec<Complex64>,
    pub zeros: Vec<f64>,
}

impl OverlapTrace {
    pub fn min_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min)
    }
}

pub fn overlap_trace(
    state: &StateDistribution,
    spec: &Spectrum,
    t_max: f64,
    step: f64,
) -> Result<OverlapTrace, OracleError> {
    check_scan(spec, t_max, step)?;
    let n = (t_max / step).ceil() as usize;
    let times: Vec<f64> = (0..=n).map(|k| (k as f64 * step).min(t_max)).collect();
    let values: Vec<Complex64> = times.iter().map(|&t| overlap(state, spec, t)).collect();
    let mut search = ZeroSearch::new(state, spec, step, None);
    for k in 1..times.len() {
        search.interval(times[k - 1], values[k - 1].norm(), times[k], values[k].norm());
    }
    Ok(OverlapTrace {
        times,
        values,
        zeros: search.found,
    })
}

/// Earliest `t` in `(0, t_max]` with `S(t) = 0`, or `None`.
pub fn first_zero(
    state: &StateDistribution,
    spec: &Spectrum,
    t_max: f64,
    coarse_step: f64,
) -> Result<Option<f64>, OracleError> {
    check_scan(spec, t_max, coarse_step)?;
    let n = (t_max / coarse_step).ceil() as usize;
    let mut search = ZeroSearch::new(state, spec, coarse_step, Some(1));
    // Streamed so long horizons stay cheap; stops at the first hit.
    let (mut a, mut fa) = (0.0, 1.0);
    for k in 1..=n {
        let b = (k as f64 * coarse_step).min(t_max);
        let fb = overlap(state, spec, b).norm();
        search.interval(a, fa, b, fb);
        if let Some(&t0) = search.found.first() {
            return Ok(Some(t0));
        }
        (a, fa) = (b, fb);
    }
    Ok(None)
}

/// Every certified zero in `(0, t_max]`, in increasing order.
pub fn zeros(
    state: &StateDistribution,
    spec: &Spectrum,
    t_max: f64,
    coarse_step: f64,
) -> Result<Vec<f64>, OracleError> {
    overlap_trace(state, spec, t_max, coarse_step).map(|tr| tr.zeros)
}

/// Depth-first bisection of scan intervals, left half first.
///
/// `|S'| <= lip = r2 omega21 + r3 omega31`, so `[a, b]` can only contain a
/// zero if `|S(a)| + |S(b)| <= lip (b - a)`. Intervals failing that are
/// dropped; survivors are halved down to `min_width`, then refined by
/// golden section. Two zeros closer than one coarse step are resolved.
struct ZeroSearch<'a> {
    state: &'a StateDistribution,
    spec: &'a Spectrum,
    lip: f64,
    min_width: f64,
    limit: Option<usize>,
    found: Vec<f64>,
}

impl<'a> ZeroSearch<'a> {
    fn new(state: &'a StateDistribution, spec: &'a Spectrum, step: f64, limit: Option<usize>) -> Self {
        let [_, r2, r3] = state.weights();
        ZeroSearch {
            state,
            spec,
            lip: r2 * spec.omega21() + r3 * spec.omega31(),
            min_width: step * 1e-9,
            limit,
            found: Vec::new(),
        }
    }

    fn done(&self) -> bool {
        self.limit.is_some_and(|l| self.found.len() >= l)
    }

    fn interval(&mut self, a: f64, fa: f64, b: f64, fb: f64) {
        if self.done() || fa + fb > self.lip * (b - a) * (1.0 + 1e-9) + 1e-15 {
            return;
        }
        if b - a <= self.min_width {
            // Widen so a zero anywhere in [a, b] is interior; a minimum on
            // the widened edge only means the zero lies further out.
            let w = b - a;
            let (lo, hi) = (a - w, b + w);
            let (t, val) = golden_min(|t| overlap_norm_sqr(self.state, self.spec, t), lo, hi);
            let interior = t - lo > 0.25 * w && hi - t > 0.25 * w;
            let fresh = self.found.last().is_none_or(|&p| (t - p).abs() > 1e-9 * t.max(1.0));
            if interior && val.sqrt() < ZERO_THRESHOLD && t > 0.0 && fresh {
                self.found.push(t);
            }
            return;
        }
        let m = 0.5 * (a + b);
        let fm = overlap(self.state, self.spec, m).norm();
        self.interval(a, fa, m, fm);
        self.interval(m, fm, b, fb);
    }
}

/// Golden-section minimum of `f` on `[a, b]`; returns `(t, f(t))`.
fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if (b - a) <= REFINE_TOL * b.abs().max(1.0) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let m = 0.5 * (a + b);
    let fm = f(m);
    [(c, fc), (d, fd), (m, fm)]
        .into_iter()
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .unwrap()
}

/// Outcome of checking a claimed orthogonality time against the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Certificate {
    pub tau: f64,
    /// `|S(tau)|`
    pub residual: f64,
    /// A zero found strictly before `tau`, if any.
    pub earlier_zero: Option<f64>,
}

impl Certificate {
    pub fn is_first_zero(&self) -> bool {
        self.residual < ZERO_THRESHOLD && self.earlier_zero.is_none()
    }
}

/// Checks that `tau` zeroes the overlap and that nothing earlier does,
/// scanning `(0, tau)` with step `min(tau / 1e4, max_step)`.
pub fn certify(state: &StateDistribution, spec: &Spectrum, tau: f64) -> Result<Certificate, OracleError> {
    if !(tau.is_finite() && tau > 0.0) {
        return Err(OracleError::BadHorizon(tau));
    }
    let residual = overlap(state, spec, tau).norm();
    let step = (tau / 1e4).min(max_step(spec));
    // Stop short of tau so its own zero is not reported; there |S| ~ 1e-6 tau.
    let horizon = tau * (1.0 - 1e-6);
    let earlier_zero = first_zero(state, spec, horizon, step)?;
    Ok(Certificate {
        tau,
        residual,
        earlier_zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn state(r1: f64, r2: f64, r3: f64) -> StateDistribution {
        StateDistribution::new(r1, r2, r3).unwrap()
    }

    #[test]
    fn overlap_starts_at_one() {
        let s = state(0.2, 0.3, 0.5);
        let spec = Spectrum::unit(1.4).unwrap();
        let v = overlap(&s, &spec, 0.0);
        assert_eq!(v, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn uniform_state_zero_at_two_thirds_pi() {
        let s = state(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);
        let spec = Spectrum::unit(1.0).unwrap();
        assert!(overlap(&s, &spec, 2.0 * PI / 3.0).norm() < 1e-15);
        let t = first_zero(&s, &spec, 4.0 * PI, max_step(&spec)).unwrap().unwrap();
        assert_relative_eq!(t, 2.0 * PI / 3.0, epsilon = 1e-9);
    }

    #[test]
    fn balanced_qubit_antipode() {
        for omega in [0.2, 1.0, 3.5] {
            let spec = Spectrum::unit(omega).unwrap();
            let s = state(0.5, 0.5, 0.0);
            assert!(overlap(&s, &spec, PI).norm() < 1e-15);
        }
    }

    #[test]
    fn outside_triangle_never_vanishes() {
        let s = state(0.6, 0.3, 0.1);
        for omega in [0.3, 1.0, 2.7] {
            let spec = Spectrum::unit(omega).unwrap();
            let tr = overlap_trace(&s, &spec, 200.0 * PI, max_step(&spec)).unwrap();
            assert!(tr.zeros.is_empty());
            assert!(tr.min_abs() >= 0.2 - 1e-12);
            assert_eq!(first_zero(&s, &spec, 200.0 * PI, max_step(&spec)).unwrap(), None);
        }
    }

    #[test]
    fn edge_bc_point() {
        let s = state(0.25, 0.25, 0.5);
        let spec = Spectrum::unit(0.5).unwrap();
        let t = first_zero(&s, &spec, 10.0 * PI, max_step(&spec)).unwrap().unwrap();
        assert_relative_eq!(t, 2.0 * PI, epsilon = 1e-9);
    }

    #[test]
    fn vertex_recurrences() {
        let s = state(0.5, 0.5, 0.0);
        let spec = Spectrum::unit(1.3).unwrap();
        let z = zeros(&s, &spec, 5.5 * PI, max_step(&spec)).unwrap();
        assert_eq!(z.len(), 3);
        for (l, t) in z.iter().enumerate() {
            assert_relative_eq!(*t, (2 * l + 1) as f64 * PI, epsilon = 1e-9);
        }
    }

    #[test]
    fn resolves_zeros_closer_than_one_step() {
        // Symmetric state with zeros at pi -/+ 0.0323, well inside one step.
        let r1 = 0.250_065_119_465_264_3;
        let s = state(r1, 1.0 - 2.0 * r1, r1);
        let spec = Spectrum::unit(1.0).unwrap();
        let z = zeros(&s, &spec, 4.0, max_step(&spec)).unwrap();
        assert_eq!(z.len(), 2);
        assert_relative_eq!(z[0], 3.109_316_802_703_37, max_relative = 1e-9);
        assert_relative_eq!(z[0] + z[1], 2.0 * PI, max_relative = 1e-9);
        let first = first_zero(&s, &spec, 4.0, max_step(&spec)).unwrap().unwrap();
        assert_eq!(first, z[0]);
    }

    #[test]
    fn coarse_step_rejected() {
        let s = state(0.2, 0.3, 0.5);
        let spec = Spectrum::unit(1.0).unwrap();
        let too_big = max_step(&spec) * 1.5;
        assert!(matches!(
            first_zero(&s, &spec, 10.0, too_big),
            Err(OracleError::StepTooCoarse { .. })
        ));
        assert!(first_zero(&s, &spec, -1.0, 0.01).is_err());
    }

    #[test]
    fn certificate_flags_later_claim() {
        let s = state(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);
        let spec = Spectrum::unit(1.0).unwrap();
        let good = certify(&s, &spec, 2.0 * PI / 3.0).unwrap();
        assert!(good.is_first_zero());
        // 4 pi / 3 is also a zero, but not the first one.
        let late = certify(&s, &spec, 4.0 * PI / 3.0).unwrap();
        assert!(late.residual < ZERO_THRESHOLD);
        assert!(late.earlier_zero.is_some());
        assert!(!late.is_first_zero());
    }
}
