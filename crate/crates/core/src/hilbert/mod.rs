//! Subspace lattices of `C^d` as representations of a proposition logic.

mod iso;
mod spin;
mod subspace;

use thiserror::Error;

pub use iso::{check_isomorphic, verify_isomorphism, Isomorphism};
pub use spin::{build_spin_lattice, spin_eigenspace, Sign};
pub use subspace::{CVector, Subspace};

use crate::lattice::{FiniteOrtholattice, LatticeError};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HilbertError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("axis has norm {0}, expected a unit vector")]
    NonUnitAxis(f64),
    #[error("axes {0} and {1} are parallel or antiparallel")]
    ParallelAxes(usize, usize),
    #[error("subspace set is not closed: {0} of `{1}` and `{2}` is not an element")]
    NotClosed(&'static str, String, String),
    #[error("{0} labels for {1} subspaces")]
    LabelCount(usize, usize),
    #[error("induced order is not an ortholattice: {0}")]
    Lattice(#[from] LatticeError),
}

/// A finite set of subspaces closed under meet, join and orthocomplement,
/// with the ortholattice it induces under inclusion.
#[derive(Debug, Clone)]
pub struct SubspaceLattice<F> {
    ambient_dim: usize,
    elements: Vec<Subspace<F>>,
    lattice: FiniteOrtholattice,
}

impl<F: Scalar> SubspaceLattice<F> {
    /// Verifies closure numerically and builds the induced ortholattice.
    pub fn from_subspaces(
        ambient_dim: usize,
        elements: Vec<Subspace<F>>,
        labels: Vec<String>,
    ) -> Result<Self, HilbertError> {
        if labels.len() != elements.len() {
            return Err(HilbertError::LabelCount(labels.len(), elements.len()));
        }
        for s in &elements {
            if s.ambient_dim() != ambient_dim {
                return Err(HilbertError::DimensionMismatch { expected: ambient_dim, got: s.ambient_dim() });
            }
        }
        let find = |s: &Subspace<F>| elements.iter().position(|e| e.approx_eq(s));
        let mut comp = Vec::with_capacity(elements.len());
        for (i, a) in elements.iter().enumerate() {
            let o = find(&a.ortho())
                .ok_or_else(|| HilbertError::NotClosed("complement", labels[i].clone(), labels[i].clone()))?;
            comp.push(o);
        }
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate().skip(i) {
                if find(&a.meet(b)?).is_none() {
                    return Err(HilbertError::NotClosed("meet", labels[i].clone(), labels[j].clone()));
                }
                if find(&a.join(b)?).is_none() {
                    return Err(HilbertError::NotClosed("join", labels[i].clone(), labels[j].clone()));
                }
            }
        }
        let lattice =
            FiniteOrtholattice::from_order(labels, |a, b| elements[a].is_subspace_of(&elements[b]), comp)?;
        Ok(SubspaceLattice { ambient_dim, elements, lattice })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn elements(&self) -> &[Subspace<F>] {
        &self.elements
    }

    pub fn lattice(&self) -> &FiniteOrtholattice {
        &self.lattice
    }

    /// Dump of every element's basis, in element order.
    pub fn dump(&self) -> String {
        let mut s = format!("ambient_dim = {}\n", self.ambient_dim);
        for (i, e) in self.elements.iter().enumerate() {
            s.push('\n');
            s.push_str(&e.dump(self.lattice.labels()[i].as_str()));
        }
        s
    }
}
