//! Finite bounded ortholattices.
//!
//! A lattice is stored as its order relation plus an orthocomplement map. The
//! constructor checks every lattice and ortholattice axiom up front and builds
//! the meet/join tables once; afterwards every operation is a table lookup and
//! cannot fail. Property checkers (distributivity, orthomodularity, atomicity,
//! covering) live in [`checks`] and only report, they never reject.

pub mod checks;
pub mod families;
pub mod io;

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use checks::{
    atoms, check_atomicity, check_covering, check_distributivity, check_orthomodularity,
    CoveringViolation, DistributivityViolation, OrthomodularityViolation,
};

/// Largest lattice the constructor accepts. Checkers are O(n^3) and the
/// meet/join tables are O(n^2) in memory.
pub const MAX_ELEMENTS: usize = 1 << 16;

/// Index of an element inside one particular lattice.
///
/// Elements of different lattices must not be mixed; nothing prevents it at the
/// type level, but the result is meaningless.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Element(u32);

impl Element {
    pub fn new(index: usize) -> Self {
        Element(index as u32)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("lattice has no elements")]
    Empty,
    #[error("lattice has {0} elements, more than the supported {MAX_ELEMENTS}")]
    TooLarge(usize),
    #[error("order relation has {got} entries, expected {expected}")]
    Shape { expected: usize, got: usize },
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("order is not reflexive at `{0}`")]
    NotReflexive(String),
    #[error("order is not antisymmetric: `{0}` and `{1}` are mutually below each other")]
    NotAntisymmetric(String, String),
    #[error("order is not transitive: `{0}` <= `{1}` <= `{2}` but not `{0}` <= `{2}`")]
    NotTransitive(String, String, String),
    #[error("no least element")]
    NoBottom,
    #[error("no greatest element")]
    NoTop,
    #[error("declared {which} `{declared}` is not the {which} of the order")]
    WrongBound { which: &'static str, declared: String },
    #[error("`{0}` and `{1}` have no unique greatest lower bound")]
    NoMeet(String, String),
    #[error("`{0}` and `{1}` have no unique least upper bound")]
    NoJoin(String, String),
    #[error("complement map has {got} entries, expected {expected}")]
    ComplementShape { expected: usize, got: usize },
    #[error("complement of `{0}` is out of range")]
    ComplementRange(String),
    #[error("complement is not an involution at `{0}`")]
    NotInvolution(String),
    #[error("complement does not reverse order: `{0}` <= `{1}`")]
    NotOrderReversing(String, String),
    #[error("`{0}` meet its complement is not bottom")]
    ComplementMeet(String),
    #[error("`{0}` join its complement is not top")]
    ComplementJoin(String),
    #[error("cover pair refers to unknown element index {0}")]
    UnknownIndex(usize),
}

/// A validated finite bounded ortholattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteOrtholattice {
    labels: Vec<String>,
    leq: Vec<bool>,
    comp: Vec<u32>,
    bottom: Element,
    top: Element,
    meet: Vec<u32>,
    join: Vec<u32>,
}

impl FiniteOrtholattice {
    /// Builds a lattice from an explicit order relation given as a predicate
    /// on element indices.
    pub fn from_order<L, P>(labels: L, leq: P, complement: Vec<usize>) -> Result<Self, LatticeError>
    where
        L: IntoIterator,
        L::Item: Into<String>,
        P: Fn(usize, usize) -> bool,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        check_size(n)?;
        let mut rel = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                rel[a * n + b] = leq(a, b);
            }
        }
        Self::from_relation(labels, rel, complement)
    }

    /// Builds a lattice from its Hasse diagram. `covers` lists pairs
    /// `(lower, upper)`; the order is their reflexive-transitive closure.
    pub fn from_covers<L>(
        labels: L,
        covers: &[(usize, usize)],
        complement: Vec<usize>,
    ) -> Result<Self, LatticeError>
    where
        L: IntoIterator,
        L::Item: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        check_size(n)?;
        let mut rel = vec![false; n * n];
        for i in 0..n {
            rel[i * n + i] = true;
        }
        for &(lo, hi) in covers {
            if lo >= n {
                return Err(LatticeError::UnknownIndex(lo));
            }
            if hi >= n {
                return Err(LatticeError::UnknownIndex(hi));
            }
            rel[lo * n + hi] = true;
        }
        // Warshall closure
        for k in 0..n {
            for i in 0..n {
                if rel[i * n + k] {
                    for j in 0..n {
                        if rel[k * n + j] {
                            rel[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Self::from_relation(labels, rel, complement)
    }

    /// Builds a lattice from a row-major `n*n` order relation.
    pub fn from_relation(
        labels: Vec<String>,
        leq: Vec<bool>,
        complement: Vec<usize>,
    ) -> Result<Self, LatticeError> {
        let n = labels.len();
        check_size(n)?;
        if leq.len() != n * n {
            return Err(LatticeError::Shape { expected: n * n, got: leq.len() });
        }
        let mut seen = HashMap::with_capacity(n);
        for l in &labels {
            if seen.insert(l.as_str(), ()).is_some() {
                return Err(LatticeError::DuplicateLabel(l.clone()));
            }
        }
        let le = |a: usize, b: usize| leq[a * n + b];
        let name = |a: usize| labels[a].clone();

        for a in 0..n {
            if !le(a, a) {
                return Err(LatticeError::NotReflexive(name(a)));
            }
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if le(a, b) && le(b, a) {
                    return Err(LatticeError::NotAntisymmetric(name(a), name(b)));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a == b || !le(a, b) {
                    continue;
                }
                for c in 0..n {
                    if le(b, c) && !le(a, c) {
                        return Err(LatticeError::NotTransitive(name(a), name(b), name(c)));
                    }
                }
            }
        }

        let bottom = (0..n).find(|&b| (0..n).all(|a| le(b, a))).ok_or(LatticeError::NoBottom)?;
        let top = (0..n).find(|&t| (0..n).all(|a| le(a, t))).ok_or(LatticeError::NoTop)?;

        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let m = extremal_bound(n, |c| le(c, a) && le(c, b), |x, y| le(x, y))
                    .ok_or_else(|| LatticeError::NoMeet(name(a), name(b)))?;
                let j = extremal_bound(n, |c| le(a, c) && le(b, c), |x, y| le(y, x))
                    .ok_or_else(|| LatticeError::NoJoin(name(a), name(b)))?;
                meet[a * n + b] = m as u32;
                meet[b * n + a] = m as u32;
                join[a * n + b] = j as u32;
                join[b * n + a] = j as u32;
            }
        }

        if complement.len() != n {
            return Err(LatticeError::ComplementShape { expected: n, got: complement.len() });
        }
        for (a, &c) in complement.iter().enumerate() {
            if c >= n {
                return Err(LatticeError::ComplementRange(name(a)));
            }
        }
        for a in 0..n {
            let c = complement[a];
            if complement[c] != a {
                return Err(LatticeError::NotInvolution(name(a)));
            }
            if meet[a * n + c] as usize != bottom {
                return Err(LatticeError::ComplementMeet(name(a)));
            }
            if join[a * n + c] as usize != top {
                return Err(LatticeError::ComplementJoin(name(a)));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if le(a, b) && !le(complement[b], complement[a]) {
                    return Err(LatticeError::NotOrderReversing(name(a), name(b)));
                }
            }
        }

        Ok(FiniteOrtholattice {
            labels,
            comp: complement.into_iter().map(|c| c as u32).collect(),
            leq,
            bottom: Element::new(bottom),
            top: Element::new(top),
            meet,
            join,
        })
    }

    /// Checks that the explicitly declared bounds match the order.
    pub fn expect_bounds(&self, bottom: Element, top: Element) -> Result<(), LatticeError> {
        if bottom != self.bottom {
            return Err(LatticeError::WrongBound {
                which: "bottom",
                declared: self.label(bottom).to_owned(),
            });
        }
        if top != self.top {
            return Err(LatticeError::WrongBound { which: "top", declared: self.label(top).to_owned() });
        }
        Ok(())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Element> + ExactSizeIterator {
        (0..self.len()).map(Element::new)
    }

    #[inline]
    pub fn bottom(&self) -> Element {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> Element {
        self.top
    }

    pub fn label(&self, a: Element) -> &str {
        &self.labels[a.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Looks an element up by label.
    pub fn element(&self, label: &str) -> Option<Element> {
        self.labels.iter().position(|l| l == label).map(Element::new)
    }

    #[inline]
    pub fn leq(&self, a: Element, b: Element) -> bool {
        self.leq[a.index() * self.len() + b.index()]
    }

    #[inline]
    pub fn lt(&self, a: Element, b: Element) -> bool {
        a != b && self.leq(a, b)
    }

    /// Greatest lower bound (AND).
    #[inline]
    pub fn meet(&self, a: Element, b: Element) -> Element {
        Element(self.meet[a.index() * self.len() + b.index()])
    }

    /// Least upper bound (OR).
    #[inline]
    pub fn join(&self, a: Element, b: Element) -> Element {
        Element(self.join[a.index() * self.len() + b.index()])
    }

    /// Orthocomplement (NOT).
    #[inline]
    pub fn complement(&self, a: Element) -> Element {
        Element(self.comp[a.index()])
    }

    /// `b` covers `a`: `a < b` with nothing strictly between.
    pub fn covers(&self, a: Element, b: Element) -> bool {
        self.lt(a, b) && !self.elements().any(|c| self.lt(a, c) && self.lt(c, b))
    }

    /// All covering pairs `(lower, upper)` in lexicographic order.
    pub fn cover_pairs(&self) -> Vec<(Element, Element)> {
        let mut out = Vec::new();
        for a in self.elements() {
            for b in self.elements() {
                if self.covers(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Length of the longest chain from bottom to `a`.
    pub fn height(&self, a: Element) -> usize {
        // elements below a, longest path via covers; small lattices, plain recursion with memo
        let mut memo = vec![usize::MAX; self.len()];
        self.height_memo(a, &mut memo)
    }

    fn height_memo(&self, a: Element, memo: &mut [usize]) -> usize {
        if memo[a.index()] != usize::MAX {
            return memo[a.index()];
        }
        let h = self
            .elements()
            .filter(|&c| self.covers(c, a))
            .map(|c| self.height_memo(c, memo) + 1)
            .max()
            .unwrap_or(0);
        memo[a.index()] = h;
        h
    }

    /// Copy of this lattice with new labels.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<Self, LatticeError> {
        Self::from_relation(labels, self.leq.clone(), self.comp.iter().map(|&c| c as usize).collect())
    }
}

fn check_size(n: usize) -> Result<(), LatticeError> {
    if n == 0 {
        return Err(LatticeError::Empty);
    }
    if n > MAX_ELEMENTS {
        return Err(LatticeError::TooLarge(n));
    }
    Ok(())
}

/// Finds the unique element of `{c : member(c)}` that dominates all others
/// under `below`, if one exists.
fn extremal_bound(
    n: usize,
    member: impl Fn(usize) -> bool,
    below: impl Fn(usize, usize) -> bool,
) -> Option<usize> {
    let set: Vec<usize> = (0..n).filter(|&c| member(c)).collect();
    set.iter().copied().find(|&g| set.iter().all(|&c| below(c, g)))
}
