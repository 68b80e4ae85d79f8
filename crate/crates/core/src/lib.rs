//! Quantum speed limits and orthogonality times for three-level systems
//! evolving under a time-independent Hamiltonian.
//!
//! * [`spectrum`]: level structure `(omega21, Omega)`, Bose-Hubbard dimer and
//!   triple-well spectra.
//! * [`bounds`]: MT, ML and ML* bounds and which one sets the speed limit.
//! * [`ortho`]: whether and when a state first becomes orthogonal.
//! * [`speed`]: `s = tau_qsl / tau1`, edge speeds, region and area maps.
//! * [`oracle`]: direct overlap evolution, independent of the closed forms.
//! * [`cli`]: the `qutrit-qsl` command-line tool.

pub mod bounds;
pub mod cli;
pub mod oracle;
pub mod ortho;
pub mod spectrum;
pub mod speed;

pub use bounds::{classify, Bound, Dominant, QslReport, StateDistribution};
pub use ortho::{Edge, OrthogonalityResult, Reachability, Vertex};
pub use spectrum::{RawLevels, Spectrum};
pub use speed::{AreaReport, MapGrid, SpeedSample};
