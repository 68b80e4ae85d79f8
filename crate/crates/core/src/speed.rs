//! Speed of evolution `s = tau_qsl / tau1` and the region maps built from
//! the dominant-bound classification.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::{self, Bound, BoundsError, Dominant, StateDistribution};
use crate::ortho::{self, Edge, OrthoError, Reachability};
use crate::spectrum::Spectrum;

/// Largest tolerated excess of `s` over 1 from round-off.
pub const SPEED_SLACK: f64 = 1e-12;
pub const DEFAULT_GRID: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SpeedError {
    #[error("state does not reach an orthogonal state ({0:?})")]
    Unreachable(Reachability),
    #[error("Omega = {omega} is not admissible for edge {edge:?}")]
    InadmissibleOmega { edge: Edge, omega: f64 },
    #[error("edge parameter r = {0} outside (0, 1/2)")]
    OutOfRange(f64),
    #[error("speed {0} outside (0, 1]")]
    BoundViolated(f64),
    #[error("grid resolution must be at least 2")]
    BadResolution,
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Ortho(#[from] OrthoError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpeedSample {
    pub r2: f64,
    pub r3: f64,
    #[serde(rename = "Omega")]
    pub omega: f64,
    pub tau_qsl: f64,
    pub tau1: f64,
    pub s: f64,
    pub dominant: Dominant,
}

fn checked_ratio(tau_qsl: f64, tau1: f64) -> Result<f64, SpeedError> {
    let s = tau_qsl / tau1;
    if !(s > 0.0 && s <= 1.0 + SPEED_SLACK) {
        return Err(SpeedError::BoundViolated(s));
    }
    Ok(s.min(1.0))
}

pub fn speed(state: &StateDistribution, spec: &Spectrum) -> Result<SpeedSample, SpeedError> {
    let orth = ortho::orthogonality(state, spec)?;
    let tau1 = match (orth.reachable.is_reached(), orth.tau1) {
        (true, Some(t)) => t,
        _ => return Err(SpeedError::Unreachable(orth.reachable)),
    };
    let rep = bounds::qsl_report(state, spec)?;
    Ok(SpeedSample {
        r2: state.r2(),
        r3: state.r3(),
        omega: spec.omega(),
        tau_qsl: rep.tau_qsl,
        tau1,
        s: checked_ratio(rep.tau_qsl, tau1)?,
        dominant: rep.dominant,
    })
}

/// Closed-form speed on an edge of Pi.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeSpeed {
    pub r: f64,
    pub s: f64,
    pub dominant: Dominant,
}

/// `s` along an edge, with `tau1 = m pi / omega21` for the admissible
/// `Omega = n/m`. For the leading families this is
/// AB: `1/(1 + 2 r Omega)` (Omega = 2, 4, ...),
/// BC: `1/(2(1 + Omega - 2r))` (Omega = 1/2, 3/2, ...),
/// CA: `1/sqrt(Omega^2 + 4r(1+Omega) - 4r^2(1+Omega)^2)` below
/// `r = 1/(1+Omega)` and `1/(1 + (1-2r)(1+Omega))` above (Omega = 1, 3, ...).
pub fn edge_speed_detail(edge: Edge, r: f64, omega: f64) -> Result<EdgeSpeed, SpeedError> {
    if !(r > 0.0 && r < 0.5) {
        return Err(SpeedError::OutOfRange(r));
    }
    let comm = ortho::edge_commensurability(edge, omega).ok_or(SpeedError::InadmissibleOmega { edge, omega })?;
    let m = comm.m as f64;
    // tau_qsl * omega21 / pi for each edge
    let (qsl, dominant) = match edge {
        Edge::AB => (1.0 / (1.0 + 2.0 * r * omega), Dominant::Unique(Bound::Ml)),
        Edge::BC => (1.0 / (1.0 + omega - 2.0 * r), Dominant::Unique(Bound::MlStar)),
        Edge::CA => {
            let e = bounds::classify_edge_ca(r, omega)?;
            (e.tau_qsl / PI, e.dominant)
        }
    };
    Ok(EdgeSpeed {
        r,
        s: checked_ratio(qsl, m)?,
        dominant,
    })
}

pub fn edge_speed(edge: Edge, r: f64, omega: f64) -> Result<f64, SpeedError> {
    edge_speed_detail(edge, r, omega).map(|e| e.s)
}

/// Dominant-bound label at each cell centre of the projected simplex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MapCell {
    pub r2: f64,
    pub r3: f64,
    /// Fraction of the cell inside the simplex: 1, 1/2 on the hypotenuse, 0
    /// outside.
    pub weight: f64,
    pub label: Option<Dominant>,
}

/// `n x n` raster over `0 <= r2, r3 <= 1`, row-major with `r3` increasing
/// by row and `r2` by column.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MapGrid {
    #[serde(rename = "Omega")]
    pub omega: f64,
    pub n: usize,
    pub cells: Vec<MapCell>,
}

impl MapGrid {
    pub fn cell(&self, row: usize, col: usize) -> &MapCell {
        &self.cells[row * self.n + col]
    }

    /// Area fractions of the three regions, normalized to the simplex.
    /// Tied cells are shared equally between the tied bounds.
    pub fn areas(&self) -> AreaReport {
        let mut acc = [0.0f64; 3];
        let mut total = 0.0;
        for c in &self.cells {
            let Some(label) = &c.label else { continue };
            total += c.weight;
            let who = label.contenders();
            let share = c.weight / who.len() as f64;
            for b in who {
                acc[b as usize] += share;
            }
        }
        AreaReport {
            omega: self.omega,
            f_mt: acc[Bound::Mt as usize] / total,
            f_ml: acc[Bound::Ml as usize] / total,
            f_ml_star: acc[Bound::MlStar as usize] / total,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AreaReport {
    #[serde(rename = "Omega")]
    pub omega: f64,
    pub f_mt: f64,
    pub f_ml: f64,
    pub f_ml_star: f64,
}

/// Area of the full `(r2, r3)` triangle.
pub const PLANE_AREA: f64 = 0.5;

impl AreaReport {
    /// Region areas in the `(r2, r3)` plane rather than as fractions,
    /// ordered MT, ML, ML*.
    pub fn plane_areas(&self) -> [f64; 3] {
        [self.f_mt, self.f_ml, self.f_ml_star].map(|f| f * PLANE_AREA)
    }
}

pub fn region_map(omega: f64, n: usize) -> Result<MapGrid, SpeedError> {
    if n < 2 {
        return Err(SpeedError::BadResolution);
    }
    let spec = Spectrum::unit(omega).map_err(|_| BoundsError::DegenerateSpectrum { omega })?;
    let h = 1.0 / n as f64;
    let rows: Vec<Vec<MapCell>> = (0..n)
        .into_par_iter()
        .map(|row| {
            (0..n)
                .map(|col| {
                    let r2 = (col as f64 + 0.5) * h;
                    let r3 = (row as f64 + 0.5) * h;
                    // Centres sit on the hypotenuse exactly when row + col + 1 = n.
                    let weight = match (row + col + 1).cmp(&n) {
                        std::cmp::Ordering::Less => 1.0,
                        std::cmp::Ordering::Equal => 0.5,
                        std::cmp::Ordering::Greater => 0.0,
                    };
                    let label = if weight > 0.0 {
                        let state = StateDistribution::from_projection(r2, r3)?;
                        Some(bounds::classify(&state, &spec)?.dominant)
                    } else {
                        None
                    };
                    Ok(MapCell { r2, r3, weight, label })
                })
                .collect::<Result<Vec<_>, BoundsError>>()
        })
        .collect::<Result<Vec<_>, BoundsError>>()?;
    Ok(MapGrid {
        omega,
        n,
        cells: rows.into_iter().flatten().collect(),
    })
}

pub fn area_sweep(omegas: &[f64], n: usize) -> Result<Vec<AreaReport>, SpeedError> {
    omegas.iter().map(|&w| region_map(w, n).map(|g| g.areas())).collect()
}

/// `count` values of Omega evenly spaced in `log10` between `lo` and `hi`.
pub fn log_spaced(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => vec![],
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.log10(), hi.log10());
            (0..count)
                .map(|i| 10f64.powf(a + (b - a) * i as f64 / (count - 1) as f64))
                .collect()
        }
    }
}

/// Speed along the interior orthogonality curve for this Omega, in units
/// where omega21 = 1.
pub fn speed_curve(omega: f64, samples: usize) -> Result<Vec<SpeedSample>, SpeedError> {
    speed_curve_with_margin(omega, samples, ortho::DEFAULT_CURVE_MARGIN)
}

pub fn speed_curve_with_margin(omega: f64, samples: usize, margin: f64) -> Result<Vec<SpeedSample>, SpeedError> {
    let spec = Spectrum::unit(omega).map_err(|_| OrthoError::BadOmega(omega))?;
    let pts = ortho::trace_curve_with_margin(omega, samples, margin)?;
    pts.par_iter()
        .map(|p| {
            let state = p.state()?;
            let rep = bounds::classify(&state, &spec)?;
            // On the curve tilde_tau1 is the first orthogonality time itself.
            let tau1 = p.tilde_tau1;
            Ok(SpeedSample {
                r2: p.r2,
                r3: p.r3,
                omega,
                tau_qsl: rep.tau_qsl,
                tau1,
                s: checked_ratio(rep.tau_qsl, tau1)?,
                dominant: rep.dominant,
            })
        })
        .collect()
}
