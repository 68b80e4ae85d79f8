//! Reachability of an orthogonal state and the first orthogonality time.
//!
//! Orthogonality at time `t` means the planar vectors
//! `r_i (cos omega_i1 t, sin omega_i1 t)` close into a triangle. This needs
//! every `r_i <= 1/2`, so only the central triangle Pi with vertices
//! A = (1/2, 1/2, 0), B = (1/2, 0, 1/2), C = (0, 1/2, 1/2) can ever reach an
//! orthogonal state. Vertices always do; edges only for commensurate gaps;
//! interior points only for one specific Omega curve per state.

use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

use crate::bounds::StateDistribution;
use crate::oracle::{self, Certificate, OracleError};
use crate::spectrum::Spectrum;

/// Tolerance on `r_i = 1/2` and `r_i = 0` when classifying points.
pub const GATE_TOL: f64 = 1e-10;
/// Absolute tolerance on Omega when matching it to a rational `n/m`.
pub const RATIONAL_TOL: f64 = 1e-9;
/// Largest denominator tried when matching Omega to a rational.
pub const MAX_DENOMINATOR: u64 = 1000;
/// Agreement required between the two independent interior time formulas,
/// in units of `pi / omega21`.
pub const CONSISTENCY_TOL: f64 = 1e-9;
/// Slack allowed on arccos arguments before they are rejected.
pub const ACOS_SLACK: f64 = 1e-12;
/// Endpoint exclusion in [`trace_curve`], relative to the interval length.
pub const DEFAULT_CURVE_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum OrthoError {
    #[error("arccos argument {arg} outside [-1, 1]: no triangle for this state and Omega")]
    DomainError { arg: f64 },
    #[error("dimensionless time {tilde_tau1} outside the open interval ({lo}, {hi})")]
    OutOfInterval { tilde_tau1: f64, lo: f64, hi: f64 },
    #[error("the gap between the two occupied levels vanishes")]
    DegenerateGap,
    #[error("point is not of the expected class: {0}")]
    WrongClass(&'static str),
    #[error("Omega must be positive, got {0}")]
    BadOmega(f64),
    #[error("need at least 2 samples")]
    TooFewSamples,
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Vertex {
    A,
    B,
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Edge {
    AB,
    BC,
    CA,
}

impl Edge {
    /// The full state at edge parameter `r`:
    /// AB = (1/2, 1/2 - r, r), BC = (1/2 - r, r, 1/2), CA = (r, 1/2, 1/2 - r).
    pub fn point(&self, r: f64) -> [f64; 3] {
        match self {
            Edge::AB => [0.5, 0.5 - r, r],
            Edge::BC => [0.5 - r, r, 0.5],
            Edge::CA => [r, 0.5, 0.5 - r],
        }
    }

    pub fn state(&self, r: f64) -> Result<StateDistribution, crate::bounds::BoundsError> {
        let [a, b, c] = self.point(r);
        StateDistribution::new(a, b, c)
    }

    /// Parity of `(n, m)` in `Omega = n/m` that allows orthogonality.
    pub fn parity(&self) -> ParityFamily {
        match self {
            Edge::AB => ParityFamily {
                n_even: true,
                m_even: false,
            },
            Edge::BC => ParityFamily {
                n_even: false,
                m_even: true,
            },
            Edge::CA => ParityFamily {
                n_even: false,
                m_even: false,
            },
        }
    }
}

impl std::str::FromStr for Edge {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "AB" => Ok(Edge::AB),
            "BC" => Ok(Edge::BC),
            "CA" => Ok(Edge::CA),
            _ => Err(format!("unknown edge '{s}' (expected AB, BC or CA)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum PointClass {
    Vertex { vertex: Vertex },
    Edge { edge: Edge, r: f64 },
    Interior,
    Outside,
}

/// Places a normalized state relative to the triangle Pi.
pub fn triangle_gate(state: &StateDistribution) -> PointClass {
    let r = state.weights();
    if r.iter().any(|&x| x > 0.5 + GATE_TOL) {
        return PointClass::Outside;
    }
    let half = |x: f64| (x - 0.5).abs() <= GATE_TOL;
    match (half(r[0]), half(r[1]), half(r[2])) {
        (true, true, _) => PointClass::Vertex { vertex: Vertex::A },
        (true, _, true) => PointClass::Vertex { vertex: Vertex::B },
        (_, true, true) => PointClass::Vertex { vertex: Vertex::C },
        (true, false, false) => PointClass::Edge {
            edge: Edge::AB,
            r: r[2],
        },
        (false, false, true) => PointClass::Edge {
            edge: Edge::BC,
            r: r[1],
        },
        (false, true, false) => PointClass::Edge {
            edge: Edge::CA,
            r: r[0],
        },
        _ => PointClass::Interior,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reachability {
    /// Vertices: orthogonal for every Hamiltonian.
    Always,
    /// Edge point whose Omega is not in the admissible rational family.
    ConditionalOnOmega,
    YesForThisOmega,
    /// Interior point that does not sit on this Omega's orthogonality curve.
    NeverForThisOmega,
    /// Outside Pi: never, whatever the Hamiltonian.
    Never,
}

impl Reachability {
    pub fn is_reached(&self) -> bool {
        matches!(self, Reachability::Always | Reachability::YesForThisOmega)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParityFamily {
    pub n_even: bool,
    pub m_even: bool,
}

/// `Omega = n/m` with the smallest admissible `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EdgeCommensurability {
    pub n: u64,
    pub m: u64,
}

impl EdgeCommensurability {
    /// The `(l, l')` indices with `m`, `n` written as `2l+1` / `2(l+1)` etc.
    pub fn indices(&self) -> (u64, u64) {
        let idx = |k: u64| if k % 2 == 1 { (k - 1) / 2 } else { k / 2 - 1 };
        (idx(self.m), idx(self.n))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrthogonalityResult {
    pub reachable: Reachability,
    pub point_class: PointClass,
    /// First orthogonality time, in the time units of the spectrum.
    pub tau1: Option<f64>,
    /// For edges: the parity family Omega must belong to.
    pub omega_constraint: Option<ParityFamily>,
    /// For edges with admissible Omega: the matching `n/m`.
    pub commensurability: Option<EdgeCommensurability>,
}

/// Interior angles of the closing triangle at `tau1`:
/// `a = pi - omega21 tau1`, `b = pi - omega32 tau1`, `c = omega31 tau1 - pi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriangleAngles {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl TriangleAngles {
    pub fn at(spec: &Spectrum, tau1: f64) -> Self {
        TriangleAngles {
            a: PI - spec.omega21() * tau1,
            b: PI - spec.omega32() * tau1,
            c: spec.omega31() * tau1 - PI,
        }
    }

    pub fn sum(&self) -> f64 {
        self.a + self.b + self.c
    }

    pub fn all_open(&self) -> bool {
        [self.a, self.b, self.c].iter().all(|&x| x > 0.0 && x < PI)
    }
}

/// Continued-fraction match of `x` to `p/q` with `q <= max_den`, returning
/// the smallest such denominator within `tol`.
pub fn rational_approx(x: f64, tol: f64, max_den: u64) -> Option<(u64, u64)> {
    if !(x.is_finite() && x > 0.0) {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0u64, 1u64, 1u64, 0u64);
    let mut rest = x;
    for _ in 0..64 {
        let a = rest.floor();
        if a > 1e15 {
            break;
        }
        let a = a as u64;
        let (p2, q2) = (a.checked_mul(p1)?.checked_add(p0)?, a.checked_mul(q1)?.checked_add(q0)?);
        if q2 > max_den {
            break;
        }
        if (x - p2 as f64 / q2 as f64).abs() <= tol {
            return Some((p2, q2));
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = rest - a as f64;
        if frac <= 0.0 {
            break;
        }
        rest = 1.0 / frac;
    }
    None
}

/// Admissible `n/m` for `edge`, if Omega is one.
pub fn edge_commensurability(edge: Edge, omega: f64) -> Option<EdgeCommensurability> {
    let (n, m) = rational_approx(omega, RATIONAL_TOL, MAX_DENOMINATOR).filter(|&(n, _)| n > 0)?;
    // Any n/m equal to the reduced p/q is (kp)/(kq); the parities can only
    // match with k odd, so the reduced fraction must match itself.
    let fam = edge.parity();
    ((n % 2 == 0) == fam.n_even && (m % 2 == 0) == fam.m_even).then_some(EdgeCommensurability { n, m })
}

/// Orthogonality times of a vertex: odd multiples of `pi / omega`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VertexTimes {
    pub omega: f64,
    pub tau1: f64,
}

impl VertexTimes {
    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0u64..).map(move |l| (2 * l + 1) as f64 * self.tau1)
    }
}

pub fn tau_vertex(vertex: Vertex, spec: &Spectrum) -> Result<VertexTimes, OrthoError> {
    let omega = match vertex {
        Vertex::A => spec.omega21(),
        Vertex::B => spec.omega31(),
        Vertex::C => spec.omega32(),
    };
    if omega <= 0.0 {
        return Err(OrthoError::DegenerateGap);
    }
    Ok(VertexTimes {
        omega,
        tau1: PI / omega,
    })
}

pub fn tau_edge(edge: Edge, r: f64, spec: &Spectrum) -> Result<OrthogonalityResult, OrthoError> {
    if !(r > 0.0 && r < 0.5) {
        return Err(OrthoError::WrongClass("edge parameter must lie in (0, 1/2)"));
    }
    let comm = edge_commensurability(edge, spec.omega());
    Ok(OrthogonalityResult {
        reachable: if comm.is_some() {
            Reachability::YesForThisOmega
        } else {
            Reachability::ConditionalOnOmega
        },
        point_class: PointClass::Edge { edge, r },
        tau1: comm.map(|c| c.m as f64 * PI / spec.omega21()),
        omega_constraint: Some(edge.parity()),
        commensurability: comm,
    })
}

fn checked_acos(arg: f64) -> Result<f64, OrthoError> {
    if arg.is_nan() || arg.abs() > 1.0 + ACOS_SLACK {
        return Err(OrthoError::DomainError { arg });
    }
    Ok(arg.clamp(-1.0, 1.0).acos())
}

/// The three expressions for `tau1` obtained from the triangle angles with
/// `r1` eliminated, in the time units of `spec`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InteriorTimes {
    pub from_omega21: f64,
    pub from_omega32: f64,
    pub from_omega31: f64,
}

pub fn interior_times(state: &StateDistribution, spec: &Spectrum) -> Result<InteriorTimes, OrthoError> {
    let [r1, r2, r3] = state.weights();
    if r1 <= 0.0 || r2 <= 0.0 || r3 <= 0.0 {
        return Err(OrthoError::WrongClass("all three weights must be positive"));
    }
    if spec.omega() <= 0.0 {
        return Err(OrthoError::BadOmega(spec.omega()));
    }
    let w = spec.omega21();
    let arg_a = (1.0 - 2.0 * r3) / (2.0 * r2 * r1) - 1.0;
    let arg_b = (2.0 * (r2 + r3) - 1.0) / (2.0 * r2 * r3) - 1.0;
    let arg_c = (1.0 - 2.0 * r2) / (2.0 * r3 * r1) - 1.0;
    Ok(InteriorTimes {
        from_omega21: (PI - checked_acos(arg_a)?) / w,
        from_omega32: (PI - checked_acos(arg_b)?) / (spec.omega() * w),
        from_omega31: (PI + checked_acos(arg_c)?) / ((1.0 + spec.omega()) * w),
    })
}

/// First orthogonality time of a point inside Pi (edge points work too, as
/// limits). Only the solution whose triangle angles all lie in `(0, pi)` is
/// considered, i.e. `omega21 tau1 < pi` and `omega32 tau1 < pi`.
pub fn tau_interior(state: &StateDistribution, spec: &Spectrum) -> Result<OrthogonalityResult, OrthoError> {
    let class = triangle_gate(state);
    if class == PointClass::Outside {
        return Err(OrthoError::WrongClass("point lies outside Pi"));
    }
    let t = interior_times(state, spec)?;
    let tol = CONSISTENCY_TOL * PI / spec.omega21();
    let consistent = (t.from_omega21 - t.from_omega32).abs() <= tol;
    Ok(OrthogonalityResult {
        reachable: if consistent {
            Reachability::YesForThisOmega
        } else {
            Reachability::NeverForThisOmega
        },
        point_class: class,
        tau1: consistent.then_some(0.5 * (t.from_omega21 + t.from_omega32)),
        omega_constraint: None,
        commensurability: None,
    })
}

/// Admissible open interval for `omega21 tau1` on an interior curve:
/// `(pi/(1+Omega), min(pi, pi/Omega))`.
pub fn curve_interval(omega: f64) -> Result<(f64, f64), OrthoError> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(OrthoError::BadOmega(omega));
    }
    Ok((PI / (1.0 + omega), PI.min(PI / omega)))
}

/// Weights of the interior state that first becomes orthogonal at
/// dimensionless time `tilde_tau1 = omega21 tau1`, from the law of sines.
pub fn law_of_sines_weights(tilde_tau1: f64, omega: f64) -> Result<[f64; 3], OrthoError> {
    let (lo, hi) = curve_interval(omega)?;
    if !(tilde_tau1 > lo && tilde_tau1 < hi) {
        return Err(OrthoError::OutOfInterval { tilde_tau1, lo, hi });
    }
    let s31 = ((1.0 + omega) * tilde_tau1).sin();
    let s21 = tilde_tau1.sin();
    let s32 = (omega * tilde_tau1).sin();
    let d = s31 - s21 - s32;
    let r2 = s31 / d;
    let r3 = -s21 / d;
    Ok([1.0 - r2 - r3, r2, r3])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub r2: f64,
    pub r3: f64,
    pub tilde_tau1: f64,
}

impl CurvePoint {
    pub fn state(&self) -> Result<StateDistribution, crate::bounds::BoundsError> {
        StateDistribution::from_projection(self.r2, self.r3)
    }
}

/// States that reach orthogonality for this Omega, sampled uniformly in
/// `tilde_tau1` over the open interval with the default endpoint margin.
pub fn trace_curve(omega: f64, samples: usize) -> Result<Vec<CurvePoint>, OrthoError> {
    trace_curve_with_margin(omega, samples, DEFAULT_CURVE_MARGIN)
}

/// As [`trace_curve`], excluding `margin * (hi - lo)` at each end.
pub fn trace_curve_with_margin(omega: f64, samples: usize, margin: f64) -> Result<Vec<CurvePoint>, OrthoError> {
    if samples < 2 {
        return Err(OrthoError::TooFewSamples);
    }
    let (lo, hi) = curve_interval(omega)?;
    let pad = margin * (hi - lo);
    let (a, b) = (lo + pad, hi - pad);
    (0..samples)
        .map(|i| {
            let t = a + (b - a) * i as f64 / (samples - 1) as f64;
            let [_, r2, r3] = law_of_sines_weights(t, omega)?;
            Ok(CurvePoint { r2, r3, tilde_tau1: t })
        })
        .collect()
}

/// Classifies the state and computes its first orthogonality time through
/// the closed forms that apply to its class.
pub fn orthogonality(state: &StateDistribution, spec: &Spectrum) -> Result<OrthogonalityResult, OrthoError> {
    match triangle_gate(state) {
        PointClass::Outside => Ok(OrthogonalityResult {
            reachable: Reachability::Never,
            point_class: PointClass::Outside,
            tau1: None,
            omega_constraint: None,
            commensurability: None,
        }),
        PointClass::Vertex { vertex } => {
            let times = tau_vertex(vertex, spec)?;
            Ok(OrthogonalityResult {
                reachable: Reachability::Always,
                point_class: PointClass::Vertex { vertex },
                tau1: Some(times.tau1),
                omega_constraint: None,
                commensurability: None,
            })
        }
        PointClass::Edge { edge, r } => tau_edge(edge, r, spec),
        PointClass::Interior => tau_interior(state, spec),
    }
}

/// [`orthogonality`] plus an oracle check that the returned time zeroes the
/// overlap and is the first zero.
pub fn certified_orthogonality(
    state: &StateDistribution,
    spec: &Spectrum,
) -> Result<(OrthogonalityResult, Option<Certificate>), OrthoError> {
    let res = orthogonality(state, spec)?;
    let cert = match res.tau1 {
        Some(t) => Some(oracle::certify(state, spec, t)?),
        None => None,
    };
    Ok((res, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn state(r1: f64, r2: f64, r3: f64) -> StateDistribution {
        StateDistribution::new(r1, r2, r3).unwrap()
    }

    #[test]
    fn gate_classes() {
        assert_eq!(
            triangle_gate(&state(0.5, 0.5, 0.0)),
            PointClass::Vertex { vertex: Vertex::A }
        );
        assert_eq!(
            triangle_gate(&state(0.5, 0.0, 0.5)),
            PointClass::Vertex { vertex: Vertex::B }
        );
        assert_eq!(
            triangle_gate(&state(0.0, 0.5, 0.5)),
            PointClass::Vertex { vertex: Vertex::C }
        );
        assert_eq!(
            triangle_gate(&state(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0)),
            PointClass::Interior
        );
        assert_eq!(triangle_gate(&state(0.6, 0.3, 0.1)), PointClass::Outside);
        assert_eq!(
            triangle_gate(&state(0.5, 0.3, 0.2)),
            PointClass::Edge { edge: Edge::AB, r: 0.2 }
        );
        assert_eq!(
            triangle_gate(&state(0.3, 0.2, 0.5)),
            PointClass::Edge { edge: Edge::BC, r: 0.2 }
        );
        assert_eq!(
            triangle_gate(&state(0.2, 0.5, 0.3)),
            PointClass::Edge { edge: Edge::CA, r: 0.2 }
        );
        let res = orthogonality(&state(0.6, 0.3, 0.1), &Spectrum::unit(1.0).unwrap()).unwrap();
        assert_eq!(res.reachable, Reachability::Never);
    }

    #[test]
    fn vertex_times() {
        let spec = Spectrum::unit(1.0).unwrap();
        assert_relative_eq!(tau_vertex(Vertex::A, &spec).unwrap().tau1, PI);
        assert_relative_eq!(tau_vertex(Vertex::B, &spec).unwrap().tau1, PI / 2.0);
        let spec2 = Spectrum::unit(2.0).unwrap();
        assert_relative_eq!(tau_vertex(Vertex::C, &spec2).unwrap().tau1, PI / 2.0);
        let v = tau_vertex(Vertex::A, &spec).unwrap();
        let first: Vec<f64> = v.times().take(3).collect();
        assert_relative_eq!(first[2], 5.0 * PI);
        assert!(tau_vertex(Vertex::C, &Spectrum::unit(0.0).unwrap()).is_err());
    }

    #[test]
    fn rational_detection() {
        assert_eq!(rational_approx(2.0, 1e-9, 1000), Some((2, 1)));
        assert_eq!(rational_approx(0.5, 1e-9, 1000), Some((1, 2)));
        assert_eq!(rational_approx(1.5, 1e-9, 1000), Some((3, 2)));
        assert_eq!(rational_approx(355.0 / 113.0, 1e-9, 1000), Some((355, 113)));
        assert_eq!(rational_approx(2f64.sqrt(), 1e-9, 1000), None);
        assert_eq!(rational_approx(1.0 / 1001.0, 1e-12, 1000), None);
    }

    #[test]
    fn edge_families() {
        let ab = tau_edge(Edge::AB, 0.2, &Spectrum::unit(2.0).unwrap()).unwrap();
        assert_eq!(ab.reachable, Reachability::YesForThisOmega);
        assert_eq!(ab.commensurability, Some(EdgeCommensurability { n: 2, m: 1 }));
        assert_relative_eq!(ab.tau1.unwrap(), PI);

        let bc = tau_edge(Edge::BC, 0.25, &Spectrum::unit(0.5).unwrap()).unwrap();
        assert_relative_eq!(bc.tau1.unwrap(), 2.0 * PI);

        let irr = tau_edge(Edge::AB, 0.2, &Spectrum::unit(2f64.sqrt()).unwrap()).unwrap();
        assert_eq!(irr.reachable, Reachability::ConditionalOnOmega);
        assert_eq!(irr.tau1, None);
        assert_eq!(
            irr.omega_constraint,
            Some(ParityFamily {
                n_even: true,
                m_even: false
            })
        );

        // Omega = 1 is odd/odd: CA only.
        assert!(edge_commensurability(Edge::CA, 1.0).is_some());
        assert!(edge_commensurability(Edge::AB, 1.0).is_none());
        assert!(edge_commensurability(Edge::BC, 1.0).is_none());
        assert_eq!(EdgeCommensurability { n: 4, m: 3 }.indices(), (1, 1));
    }

    #[test]
    fn interior_uniform_state() {
        let s = state(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);
        let res = tau_interior(&s, &Spectrum::unit(1.0).unwrap()).unwrap();
        assert_eq!(res.reachable, Reachability::YesForThisOmega);
        assert_relative_eq!(res.tau1.unwrap(), 2.0 * PI / 3.0, epsilon = 1e-12);

        let res = tau_interior(&s, &Spectrum::unit(2.0).unwrap()).unwrap();
        assert_eq!(res.reachable, Reachability::NeverForThisOmega);
        assert_eq!(res.tau1, None);
    }

    #[test]
    fn ca_midpoint_limit() {
        let s = state(0.25, 0.5, 0.25);
        let res = tau_interior(&s, &Spectrum::unit(1.0).unwrap()).unwrap();
        assert_relative_eq!(res.tau1.unwrap(), PI, epsilon = 1e-12);
    }

    #[test]
    fn law_of_sines_uniform() {
        let w = law_of_sines_weights(2.0 * PI / 3.0, 1.0).unwrap();
        for x in w {
            assert_relative_eq!(x, 1.0 / 3.0, epsilon = 1e-15);
        }
        assert!(matches!(
            law_of_sines_weights(PI, 1.0),
            Err(OrthoError::OutOfInterval { .. })
        ));
        assert!(law_of_sines_weights(0.5, 1.0).is_err());
    }

    #[test]
    fn angles_close() {
        let spec = Spectrum::unit(1.3).unwrap();
        let s = {
            let [a, b, c] = law_of_sines_weights(2.0, 1.3).unwrap();
            state(a, b, c)
        };
        let t = tau_interior(&s, &spec).unwrap().tau1.unwrap();
        let ang = TriangleAngles::at(&spec, t);
        assert_relative_eq!(ang.sum(), PI, epsilon = 1e-10);
        assert!(ang.all_open());
    }

    #[test]
    fn curve_endpoints() {
        let c = trace_curve_with_margin(1.0, 50, 1e-7).unwrap();
        let last = c.last().unwrap();
        assert!((last.r2 - 0.5).hypot(last.r3 - 0.25) < 1e-6);
        // Omega < 1: from near B (r2 = 0, r3 = 1/2) to near A (r2 = 1/2, r3 = 0).
        let c = trace_curve(0.5, 50).unwrap();
        assert!(c[0].r2.hypot(c[0].r3 - 0.5) < 1e-4);
        let l = c.last().unwrap();
        assert!((l.r2 - 0.5).hypot(l.r3) < 1e-4);
        // Omega > 1: from near B to near C (r2 = r3 = 1/2).
        let c = trace_curve(2.0, 50).unwrap();
        assert!(c[0].r2.hypot(c[0].r3 - 0.5) < 1e-4);
        let l = c.last().unwrap();
        assert!((l.r2 - 0.5).hypot(l.r3 - 0.5) < 1e-4);
        assert!(c.windows(2).all(|w| w[0].tilde_tau1 < w[1].tilde_tau1));
        assert!(matches!(trace_curve(1.0, 1), Err(OrthoError::TooFewSamples)));
    }

    #[test]
    fn phases_do_not_matter() {
        let spec = Spectrum::unit(1.0).unwrap();
        let third = 1.0 / 3.0;
        let a = StateDistribution::with_phases([third; 3], [0.0; 3]).unwrap();
        let b = StateDistribution::with_phases([third; 3], [0.4, 2.0, 5.9]).unwrap();
        assert_eq!(
            orthogonality(&a, &spec).unwrap().tau1,
            orthogonality(&b, &spec).unwrap().tau1
        );
    }

    #[test]
    fn certified_results() {
        let spec = Spectrum::unit(1.0).unwrap();
        let (res, cert) = certified_orthogonality(&state(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0), &spec).unwrap();
        assert!(res.reachable.is_reached());
        assert!(cert.unwrap().is_first_zero());
        let (_, cert) = certified_orthogonality(&state(0.5, 0.0, 0.5), &spec).unwrap();
        assert!(cert.unwrap().is_first_zero());
    }
}
