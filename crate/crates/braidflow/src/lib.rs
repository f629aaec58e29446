//! Braid types of link-preserving Hamiltonian diffeomorphisms of the disk.
//!
//! The crate models a disk sitting inside a sphere of total symplectic area 1.
//! A link is a collection of `k` disjoint circles in the disk whose enclosed
//! areas satisfy an equal-area admissibility condition controlled by a rational
//! parameter `eta`. A Hamiltonian isotopy that maps the link onto itself drags
//! one marked point per circle through the disk; closing the resulting paths up
//! along the circles yields a braid on `k` strands, the braid type of the map
//! relative to the link.
//!
//! The main results implemented and exercised here:
//!
//! * [`geometry`] computes the exact area gap of a link and the Hofer-distance
//!   threshold below which the braid type cannot change.
//! * [`hamiltonian`] is a small expression language for time-dependent
//!   Hamiltonians with forward-mode differentiation and certified two-sided
//!   Hofer-norm estimates.
//! * [`flow`] integrates Hamiltonian flows with dense output and checks link
//!   preservation.
//! * [`braid`] extracts braid words from strand trajectories and decides braid
//!   equality through Garside left normal forms.
//! * [`floer`] implements action-filtered chain complexes over GF(2), window
//!   homology, filtered morphisms, and the injectivity skeleton of the
//!   stability argument.
//! * [`stability`] runs the end-to-end perturbation experiment: perturb a
//!   link-preserving map by Hamiltonians of certified small Hofer norm and
//!   verify the braid type does not move.
//!
//! All area bookkeeping is exact rational arithmetic; only dynamics and norm
//! estimation are floating point.

pub mod braid;
pub mod floer;
pub mod flow;
pub mod geometry;
pub mod hamiltonian;
pub mod rational;
pub mod stability;

pub use rational::Rat;

/// Crate-wide error type; each module contributes one variant.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Geometry(#[from] geometry::GeometryError),
    #[error(transparent)]
    Parse(#[from] hamiltonian::ParseError),
    #[error(transparent)]
    Eval(#[from] hamiltonian::EvalError),
    #[error(transparent)]
    Hamiltonian(#[from] hamiltonian::HamiltonianError),
    #[error(transparent)]
    Flow(#[from] flow::FlowError),
    #[error(transparent)]
    Braid(#[from] braid::BraidError),
    #[error(transparent)]
    Floer(#[from] floer::FloerError),
    #[error(transparent)]
    Stability(#[from] stability::StabilityError),
    #[error("{0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
