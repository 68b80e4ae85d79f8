//! Energy statistics and the Mandelstam-Tamm (MT), Margolus-Levitin (ML)
//! and dual (ML*) bounds on the orthogonality time of a qutrit state.
//!
//! With hbar = 1:
//!
//! * `tau_MT  = pi / (2 sigma_H)`
//! * `tau_ML  = pi / (2 E)`,  `E  = <H> - E_min`
//! * `tau_ML* = pi / (2 E*)`, `E* = E_max - <H>`
//!
//! where `E_min`/`E_max` are the lowest/highest *occupied* levels. The
//! quantum speed limit is the largest of the three. Which one wins is decided
//! by `alpha = sigma_H / E` and `beta = sigma_H / E*`.

use std::f64::consts::PI;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::spectrum::Spectrum;

/// Tolerance on the normalization `r1 + r2 + r3 = 1`.
pub const NORMALIZATION_TOL: f64 = 1e-12;
/// Weights at or below this are treated as unoccupied.
pub const OCCUPATION_TOL: f64 = 1e-12;
/// Relative tolerance under which two competing bounds are reported as tied.
pub const TIE_TOL: f64 = 1e-10;
/// Omega at or below this is treated as E2 = E3.
pub const DEGENERACY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum BoundsError {
    #[error("invalid state: {0}")]
    InvalidState(&'static str),
    #[error("weights sum to {sum}, not 1")]
    NotNormalized { sum: f64 },
    #[error("state occupies a single energy level; no finite bound exists")]
    StationaryState,
    #[error("spectrum is degenerate (Omega = {omega}); use the qubit reduction")]
    DegenerateSpectrum { omega: f64 },
    #[error("edge parameter r = {r} outside (0, 1/2)")]
    OutOfRange { r: f64 },
    #[error("state has three distinct occupied levels; not an effective qubit")]
    NotAQubit,
}

/// Populations `r_i` of the energy eigenstates and their phases.
///
/// Phases never enter any bound or orthogonality time; they are carried for
/// bookkeeping only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StateDistribution {
    r: [f64; 3],
    phi: [f64; 3],
}

impl StateDistribution {
    pub fn new(r1: f64, r2: f64, r3: f64) -> Result<Self, BoundsError> {
        Self::with_phases([r1, r2, r3], [0.0; 3])
    }

    pub fn with_phases(r: [f64; 3], phi: [f64; 3]) -> Result<Self, BoundsError> {
        if r.iter().any(|x| !x.is_finite() || *x < 0.0 || *x > 1.0) {
            return Err(BoundsError::InvalidState("weights must lie in [0, 1]"));
        }
        let sum: f64 = r.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(BoundsError::NotNormalized { sum });
        }
        if phi.iter().any(|x| !x.is_finite()) {
            return Err(BoundsError::InvalidState("phases must be finite"));
        }
        let phi = phi.map(|p| p.rem_euclid(2.0 * PI));
        Ok(StateDistribution { r, phi })
    }

    /// Divides the weights by their sum. Fails only on invalid input.
    pub fn normalized(r1: f64, r2: f64, r3: f64) -> Result<Self, BoundsError> {
        let r = [r1, r2, r3];
        if r.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(BoundsError::InvalidState("weights must be finite and >= 0"));
        }
        let sum: f64 = r.iter().sum();
        if sum <= 0.0 {
            return Err(BoundsError::InvalidState("weights sum to zero"));
        }
        Self::new(r1 / sum, r2 / sum, r3 / sum)
    }

    /// Point `(1 - r2 - r3, r2, r3)` of the projected simplex.
    pub fn from_projection(r2: f64, r3: f64) -> Result<Self, BoundsError> {
        let r1 = 1.0 - r2 - r3;
        // Round-off on the hypotenuse r2 + r3 = 1.
        let r1 = if r1 < 0.0 && r1 > -NORMALIZATION_TOL { 0.0 } else { r1 };
        Self::new(r1, r2, r3)
    }

    pub fn weights(&self) -> [f64; 3] {
        self.r
    }

    pub fn phases(&self) -> [f64; 3] {
        self.phi
    }

    pub fn r1(&self) -> f64 {
        self.r[0]
    }

    pub fn r2(&self) -> f64 {
        self.r[1]
    }

    pub fn r3(&self) -> f64 {
        self.r[2]
    }

    pub fn max_weight(&self) -> f64 {
        self.r.iter().copied().fold(0.0, f64::max)
    }

    pub fn is_occupied(&self, i: usize) -> bool {
        self.r[i] > OCCUPATION_TOL
    }

    pub fn occupied_count(&self) -> usize {
        (0..3).filter(|&i| self.is_occupied(i)).count()
    }

    /// Some weight vanishes, leaving at most two occupied levels.
    pub fn is_effective_qubit(&self) -> bool {
        self.occupied_count() < 3
    }
}

/// `<H>` (measured from E1), `sigma_H`, `E` and `E*`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyStats {
    pub mean_energy: f64,
    pub sigma: f64,
    pub cal_e: f64,
    pub cal_e_star: f64,
}

/// Energy statistics of `state` under the given level energies.
///
/// The variance uses the pairwise form `sum_{i<k} r_i r_k (E_i - E_k)^2`
/// and `E`, `E*` are sums of non-negative terms, so nothing cancels.
fn stats_for_energies(state: &StateDistribution, e: [f64; 3]) -> EnergyStats {
    let r = state.weights();
    let mean_energy = r[0] * e[0] + r[1] * e[1] + r[2] * e[2];
    let var =
        r[0] * r[1] * (e[1] - e[0]).powi(2) + r[0] * r[2] * (e[2] - e[0]).powi(2) + r[1] * r[2] * (e[2] - e[1]).powi(2);
    let occupied: Vec<f64> = (0..3).filter(|&i| state.is_occupied(i)).map(|i| e[i]).collect();
    let e_min = occupied.iter().copied().fold(f64::INFINITY, f64::min);
    let e_max = occupied.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let cal_e = (0..3).map(|i| r[i] * (e[i] - e_min)).sum::<f64>().max(0.0);
    let cal_e_star = (0..3).map(|i| r[i] * (e_max - e[i])).sum::<f64>().max(0.0);
    EnergyStats {
        mean_energy,
        sigma: var.max(0.0).sqrt(),
        cal_e,
        cal_e_star,
    }
}

pub fn energy_stats(state: &StateDistribution, spec: &Spectrum) -> Result<EnergyStats, BoundsError> {
    if spec.is_upper_degenerate(DEGENERACY_TOL) {
        return Err(BoundsError::DegenerateSpectrum { omega: spec.omega() });
    }
    Ok(stats_for_energies(state, spec.energies()))
}

pub fn alpha_beta(state: &StateDistribution, spec: &Spectrum) -> Result<(f64, f64), BoundsError> {
    let st = energy_stats(state, spec)?;
    ratios(&st)
}

fn ratios(st: &EnergyStats) -> Result<(f64, f64), BoundsError> {
    if st.cal_e <= 0.0 || st.cal_e_star <= 0.0 || st.sigma <= 0.0 {
        return Err(BoundsError::StationaryState);
    }
    Ok((st.sigma / st.cal_e, st.sigma / st.cal_e_star))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bound {
    Mt,
    Ml,
    MlStar,
}

impl Bound {
    pub const ALL: [Bound; 3] = [Bound::Mt, Bound::Ml, Bound::MlStar];

    pub fn label(&self) -> &'static str {
        match self {
            Bound::Mt => "MT",
            Bound::Ml => "ML",
            Bound::MlStar => "ML*",
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

/// The bound that sets the speed limit, or a tie between several.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dominant {
    Unique(Bound),
    /// Two or three bounds agree within [`TIE_TOL`]; sorted, never resolved.
    Tie(Vec<Bound>),
}

impl Dominant {
    pub fn label(&self) -> &'static str {
        match self {
            Dominant::Unique(b) => b.label(),
            Dominant::Tie(_) => "boundary",
        }
    }

    pub fn unique(&self) -> Option<Bound> {
        match self {
            Dominant::Unique(b) => Some(*b),
            Dominant::Tie(_) => None,
        }
    }

    pub fn contenders(&self) -> Vec<Bound> {
        match self {
            Dominant::Unique(b) => vec![*b],
            Dominant::Tie(v) => v.clone(),
        }
    }

    pub fn is(&self, b: Bound) -> bool {
        self.unique() == Some(b)
    }
}

impl Serialize for Dominant {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

/// Picks the largest of `tau_MT : tau_ML : tau_ML* = 1 : alpha : beta`.
pub fn dominance(alpha: f64, beta: f64) -> Dominant {
    let vals = [(Bound::Mt, 1.0), (Bound::Ml, alpha), (Bound::MlStar, beta)];
    let top = vals.iter().map(|v| v.1).fold(f64::NEG_INFINITY, f64::max);
    let tied: Vec<Bound> = vals
        .iter()
        .filter(|(_, v)| (top - v) <= TIE_TOL * top)
        .map(|(b, _)| *b)
        .collect();
    if tied.len() == 1 {
        Dominant::Unique(tied[0])
    } else {
        Dominant::Tie(tied)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QslReport {
    pub mean_energy: f64,
    pub sigma: f64,
    pub cal_e: f64,
    pub cal_e_star: f64,
    pub alpha: f64,
    pub beta: f64,
    pub tau_mt: f64,
    pub tau_ml: f64,
    pub tau_ml_star: f64,
    pub tau_qsl: f64,
    pub dominant: Dominant,
}

impl QslReport {
    fn from_stats(st: EnergyStats) -> Result<Self, BoundsError> {
        let (alpha, beta) = ratios(&st)?;
        let tau_mt = PI / (2.0 * st.sigma);
        let tau_ml = PI / (2.0 * st.cal_e);
        let tau_ml_star = PI / (2.0 * st.cal_e_star);
        Ok(QslReport {
            mean_energy: st.mean_energy,
            sigma: st.sigma,
            cal_e: st.cal_e,
            cal_e_star: st.cal_e_star,
            alpha,
            beta,
            tau_mt,
            tau_ml,
            tau_ml_star,
            tau_qsl: tau_mt.max(tau_ml).max(tau_ml_star),
            dominant: dominance(alpha, beta),
        })
    }

    pub fn tau(&self, b: Bound) -> f64 {
        match b {
            Bound::Mt => self.tau_mt,
            Bound::Ml => self.tau_ml,
            Bound::MlStar => self.tau_ml_star,
        }
    }
}

/// Full speed-limit report for a state under a non-degenerate spectrum.
pub fn classify(state: &StateDistribution, spec: &Spectrum) -> Result<QslReport, BoundsError> {
    QslReport::from_stats(energy_stats(state, spec)?)
}

/// Speed limit along the edge CA = {(r, 1/2, 1/2 - r)}, read off from the
/// thresholds where `beta = 1` (`r = (1-Omega)/(2(1+Omega))`) and
/// `alpha = 1` (`r = 1/(1+Omega)`). Times are in units of 1/omega21.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeQsl {
    pub dominant: Dominant,
    pub tau_qsl: f64,
}

pub fn classify_edge_ca(r: f64, omega: f64) -> Result<EdgeQsl, BoundsError> {
    if !(r > 0.0 && r < 0.5) {
        return Err(BoundsError::OutOfRange { r });
    }
    if !(omega.is_finite() && omega > 0.0) {
        return Err(BoundsError::DegenerateSpectrum { omega });
    }
    let a = 1.0 + omega;
    let tau_ml_star = PI / (omega + 2.0 * r * a);
    let tau_mt = PI / (omega * omega + 4.0 * r * a - 4.0 * r * r * a * a).sqrt();
    let tau_ml = PI / (1.0 + (1.0 - 2.0 * r) * a);

    let beta_one = (1.0 - omega) / (2.0 * a);
    let alpha_one = 1.0 / a;
    let near = |x: f64| (r - x).abs() <= TIE_TOL;

    let dominant = if near(beta_one) {
        Dominant::Tie(vec![Bound::Mt, Bound::MlStar])
    } else if near(alpha_one) {
        Dominant::Tie(vec![Bound::Mt, Bound::Ml])
    } else if r < beta_one {
        Dominant::Unique(Bound::MlStar)
    } else if r > alpha_one {
        Dominant::Unique(Bound::Ml)
    } else {
        Dominant::Unique(Bound::Mt)
    };
    // Every tie on this edge involves MT, so tau_MT is exact there.
    let tau_qsl = match dominant.unique() {
        Some(Bound::Ml) => tau_ml,
        Some(Bound::MlStar) => tau_ml_star,
        _ => tau_mt,
    };
    Ok(EdgeQsl { dominant, tau_qsl })
}

/// A state that effectively lives on two levels separated by `omega`, with
/// weight `lower_weight` on the lower one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EffectiveQubit {
    pub lower_weight: f64,
    pub omega: f64,
}

impl EffectiveQubit {
    /// Groups occupied levels whose energies agree within `tol`. Exactly two
    /// groups make a qubit.
    pub fn detect(state: &StateDistribution, energies: [f64; 3], tol: f64) -> Result<Self, BoundsError> {
        let mut groups: Vec<(f64, f64)> = Vec::new();
        for i in (0..3).filter(|&i| state.is_occupied(i)) {
            let (e, w) = (energies[i], state.weights()[i]);
            match groups.iter_mut().find(|g| (g.0 - e).abs() <= tol) {
                Some(g) => g.1 += w,
                None => groups.push((e, w)),
            }
        }
        groups.sort_by(|a, b| a.0.total_cmp(&b.0));
        match groups[..] {
            [] | [_] => Err(BoundsError::StationaryState),
            [(lo, w_lo), (hi, w_hi)] => Ok(EffectiveQubit {
                lower_weight: w_lo / (w_lo + w_hi),
                omega: hi - lo,
            }),
            _ => Err(BoundsError::NotAQubit),
        }
    }

    /// Closed qubit forms: `E = omega (1 - r)`, `E* = omega r`,
    /// `sigma^2 = omega^2 r (1 - r)` with `r` the lower-level weight.
    pub fn report(&self) -> Result<QslReport, BoundsError> {
        let r = self.lower_weight;
        if r <= OCCUPATION_TOL || r >= 1.0 - OCCUPATION_TOL || self.omega <= 0.0 {
            return Err(BoundsError::StationaryState);
        }
        let w = self.omega;
        QslReport::from_stats(EnergyStats {
            mean_energy: w * (1.0 - r),
            sigma: w * (r * (1.0 - r)).sqrt(),
            cal_e: w * (1.0 - r),
            cal_e_star: w * r,
        })
    }
}

/// Speed-limit report for an effectively two-level state, either because a
/// weight vanishes or because two occupied levels are degenerate.
/// `energies` may be any three level energies (unsorted, degenerate allowed).
pub fn qubit_reduction(state: &StateDistribution, energies: [f64; 3]) -> Result<QslReport, BoundsError> {
    EffectiveQubit::detect(state, energies, DEGENERACY_TOL)?.report()
}

/// [`classify`] for genuine qutrit states, [`qubit_reduction`] when a weight
/// vanishes or E2 = E3.
pub fn qsl_report(state: &StateDistribution, spec: &Spectrum) -> Result<QslReport, BoundsError> {
    if state.is_effective_qubit() || spec.is_upper_degenerate(DEGENERACY_TOL) {
        qubit_reduction(state, spec.energies())
    } else {
        classify(state, spec)
    }
}
