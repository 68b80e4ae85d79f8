//! Energy structure of a qutrit.
//!
//! A non-degenerate three-level spectrum is fully described, up to an
//! irrelevant energy offset, by the lower transition frequency `omega21`
//! and the dimensionless ratio `Omega = omega32 / omega21`. Units use
//! hbar = 1, so energies and angular frequencies are interchangeable.
//!
//! Besides raw levels, spectra can be built from the extended Bose-Hubbard
//! dimer (two bosons on two sites with single and pair hopping) and from a
//! particle hopping between the wells of a triple-well potential.

use serde::Serialize;
use thiserror::Error;

/// Absolute gap below which two levels are treated as degenerate.
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SpectrumError {
    #[error("all three levels coincide (E3 - E1 = {span})")]
    FullyDegenerate { span: f64 },
    /// E1 = E2 while E3 is separated: Omega would be infinite. The state
    /// must be handled as an effective qubit.
    #[error("lower gap E2 - E1 = {gap} is degenerate; route through the qubit reduction")]
    LowerGapDegenerate { gap: f64 },
    #[error("invalid spectrum: {0}")]
    Invalid(&'static str),
    #[error("invalid Bose-Hubbard parameters: {0}")]
    InvalidParams(&'static str),
}

/// Qutrit spectrum in units where hbar = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Spectrum {
    omega21: f64,
    #[serde(rename = "Omega")]
    omega: f64,
}

impl Spectrum {
    pub fn new(omega21: f64, omega: f64) -> Result<Self, SpectrumError> {
        if !(omega21.is_finite() && omega21 > 0.0) {
            return Err(SpectrumError::Invalid("omega21 must be finite and > 0"));
        }
        if !(omega.is_finite() && omega >= 0.0) {
            return Err(SpectrumError::Invalid("Omega must be finite and >= 0"));
        }
        Ok(Spectrum { omega21, omega })
    }

    /// Spectrum with `omega21 = 1`, i.e. times measured in units of 1/omega21.
    pub fn unit(omega: f64) -> Result<Self, SpectrumError> {
        Self::new(1.0, omega)
    }

    pub fn omega21(&self) -> f64 {
        self.omega21
    }

    /// The ratio omega32 / omega21.
    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn omega32(&self) -> f64 {
        self.omega21 * self.omega
    }

    pub fn omega31(&self) -> f64 {
        self.omega21 * (1.0 + self.omega)
    }

    /// Level energies measured from E1.
    pub fn energies(&self) -> [f64; 3] {
        [0.0, self.omega21, self.omega31()]
    }

    /// True when E2 and E3 coincide within `tol` (relative to omega21).
    pub fn is_upper_degenerate(&self, tol: f64) -> bool {
        self.omega <= tol
    }

    /// Same Omega, with omega21 multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self, SpectrumError> {
        Self::new(self.omega21 * factor, self.omega)
    }
}

/// Three energy levels, kept sorted ascending.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RawLevels {
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
}

impl RawLevels {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        let mut e = [a, b, c];
        e.sort_by(f64::total_cmp);
        RawLevels {
            e1: e[0],
            e2: e[1],
            e3: e[2],
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.e1, self.e2, self.e3]
    }
}

/// Spectrum from sorted levels using the default degeneracy tolerance.
pub fn spectrum_from_levels(levels: RawLevels) -> Result<Spectrum, SpectrumError> {
    spectrum_from_levels_with_tol(levels, DEFAULT_DEGENERACY_TOL)
}

/// `omega21 = E2 - E1`, `Omega = (E3 - E2) / (E2 - E1)`. An upper gap at or
/// below `tol` is snapped to `Omega = 0`.
pub fn spectrum_from_levels_with_tol(levels: RawLevels, tol: f64) -> Result<Spectrum, SpectrumError> {
    let span = levels.e3 - levels.e1;
    if span <= tol {
        return Err(SpectrumError::FullyDegenerate { span });
    }
    let lower = levels.e2 - levels.e1;
    if lower <= tol {
        return Err(SpectrumError::LowerGapDegenerate { gap: lower });
    }
    let upper = levels.e3 - levels.e2;
    let omega = if upper <= tol { 0.0 } else { upper / lower };
    Spectrum::new(lower, omega)
}

/// Extended Bose-Hubbard dimer: hopping `j`, pair hopping `k`, on-site
/// repulsion `u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoseHubbardParams {
    j: f64,
    k: f64,
    u: f64,
}

impl BoseHubbardParams {
    pub fn new(j: f64, k: f64, u: f64) -> Result<Self, SpectrumError> {
        if !(j.is_finite() && j > 0.0) {
            return Err(SpectrumError::InvalidParams("J must be finite and > 0"));
        }
        if !(k.is_finite() && k >= 0.0) {
            return Err(SpectrumError::InvalidParams("K must be finite and >= 0"));
        }
        if !(u.is_finite() && u >= 0.0) {
            return Err(SpectrumError::InvalidParams("U must be finite and >= 0"));
        }
        Ok(BoseHubbardParams { j, k, u })
    }

    pub fn j(&self) -> f64 {
        self.j
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    /// `J^2 - 2K(U+K)`; its sign selects the eigenvalue ordering.
    pub fn branch_discriminant(&self) -> f64 {
        self.j * self.j - 2.0 * self.k * (self.u + self.k)
    }

    fn crossing_scale(&self) -> f64 {
        (self.j * self.j).max(2.0 * self.k * (self.u + self.k)).max(1.0)
    }

    pub fn branch(&self) -> Branch {
        let d = self.branch_discriminant();
        if d.abs() <= DEFAULT_DEGENERACY_TOL * self.crossing_scale() {
            Branch::Crossing
        } else if d < 0.0 {
            Branch::PairHoppingDominated
        } else {
            Branch::HoppingDominated
        }
    }
}

/// Which closed-form ordering of the Bose-Hubbard eigenvalues applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// `J^2 < 2K(U+K)`: Omega unbounded above.
    #[serde(rename = "J2<2K(U+K)")]
    PairHoppingDominated,
    /// `J^2 > 2K(U+K)`: 0 < Omega < 1.
    #[serde(rename = "J2>2K(U+K)")]
    HoppingDominated,
    /// `J^2 = 2K(U+K)`: E2 = E3, Omega = 0. No branch label is assigned.
    #[serde(rename = "crossing")]
    Crossing,
}

impl Branch {
    pub fn label(&self) -> &'static str {
        match self {
            Branch::PairHoppingDominated => "J2<2K(U+K)",
            Branch::HoppingDominated => "J2>2K(U+K)",
            Branch::Crossing => "crossing",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoseHubbardLevels {
    pub levels: RawLevels,
    pub branch: Branch,
}

impl BoseHubbardLevels {
    pub fn is_crossing(&self) -> bool {
        self.branch == Branch::Crossing
    }
}

/// `sqrt(4J^2 + (K-U)^2)`
fn radical(j: f64, k: f64, u: f64) -> f64 {
    (4.0 * j * j + (k - u) * (k - u)).sqrt()
}

/// The three eigenvalues of the Fock-basis matrix, unordered:
/// `U-K-R`, `U-K+R` (symmetric sector) and `2(U+K)` (antisymmetric sector).
/// Valid for any real `j`, `k`, `u`.
fn dimer_eigenvalues(j: f64, k: f64, u: f64) -> [f64; 3] {
    let r = radical(j, k, u);
    [u - k - r, u - k + r, 2.0 * (u + k)]
}

/// Ordered Bose-Hubbard eigenvalues, selecting E2/E3 by the sign of
/// `J^2 - 2K(U+K)`.
pub fn bose_hubbard_levels(p: BoseHubbardParams) -> BoseHubbardLevels {
    let (j, k, u) = (p.j, p.k, p.u);
    let e1 = u - k - radical(j, k, u);
    let antisym = 2.0 * (u + k);
    let sym_upper = 2.0 * (u - k) - e1;
    let branch = p.branch();
    let (e2, e3) = match branch {
        Branch::PairHoppingDominated => (sym_upper, antisym),
        Branch::HoppingDominated => (antisym, sym_upper),
        Branch::Crossing => {
            let m = 0.5 * (antisym + sym_upper);
            (m, m)
        }
    };
    BoseHubbardLevels {
        levels: RawLevels { e1, e2, e3 },
        branch,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoseHubbardOmega {
    #[serde(rename = "Omega")]
    pub omega: f64,
    pub branch: Branch,
}

/// Omega written directly in terms of J, K and U.
pub fn bose_hubbard_omega(p: BoseHubbardParams) -> BoseHubbardOmega {
    let (j, k, u) = (p.j, p.k, p.u);
    let r = radical(j, k, u);
    let s = u + 3.0 * k;
    let branch = p.branch();
    let omega = match branch {
        Branch::PairHoppingDominated => (s - r) / (2.0 * r),
        Branch::HoppingDominated => (r - s) / (s + r),
        Branch::Crossing => 0.0,
    };
    BoseHubbardOmega { omega, branch }
}

/// Single particle in three wells: `h1` couples adjacent wells (1-2, 2-3),
/// `h2` the outer pair (1-3). Zero on-site energies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TripleWellParams {
    pub h1: f64,
    pub h2: f64,
}

impl TripleWellParams {
    pub fn new(h1: f64, h2: f64) -> Result<Self, SpectrumError> {
        if !(h1.is_finite() && h2.is_finite()) {
            return Err(SpectrumError::InvalidParams("tunneling energies must be finite"));
        }
        Ok(TripleWellParams { h1, h2 })
    }

    /// Bose-Hubbard (J, K) at U = 0 with `h1 = -sqrt(2) J`, `h2 = -2K`.
    pub fn dimer_equivalent(&self) -> (f64, f64) {
        (-self.h1 / std::f64::consts::SQRT_2, -0.5 * self.h2)
    }
}

/// Triple-well levels through the U = 0 dimer closed forms.
///
/// Only `|h1|` matters (a sign flip of the middle well is a gauge change),
/// but the sign of `h2` does: for `h2 > 0` the equivalent pair hopping is
/// negative and the antisymmetric level can fall below the others, so the
/// three values are sorted rather than assigned by branch.
pub fn triple_well_levels(p: TripleWellParams) -> RawLevels {
    let (j, k) = p.dimer_equivalent();
    let [a, b, c] = dimer_eigenvalues(j.abs(), k, 0.0);
    RawLevels::new(a, b, c)
}
