//! Exhaustive scans for the lattice laws that separate classical from quantum
//! logics. Every report is complete and sorted lexicographically by element
//! index, so two runs over the same lattice produce identical output.

use serde::Serialize;

use super::{Element, FiniteOrtholattice};

/// A triple with `a ∧ (b ∨ c) ≠ (a ∧ b) ∨ (a ∧ c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct DistributivityViolation {
    pub a: Element,
    pub b: Element,
    pub c: Element,
    /// `a ∧ (b ∨ c)`
    pub lhs: Element,
    /// `(a ∧ b) ∨ (a ∧ c)`
    pub rhs: Element,
}

/// A pair `a ≤ b` with `b ≠ a ∨ (a⊥ ∧ b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct OrthomodularityViolation {
    pub a: Element,
    pub b: Element,
    /// `a ∨ (a⊥ ∧ b)`
    pub got: Element,
}

/// An atom `p` and element `a` with `p ∧ a = 0` where `a ∨ p` does not cover `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CoveringViolation {
    pub atom: Element,
    pub a: Element,
    pub join: Element,
}

pub fn check_distributivity(l: &FiniteOrtholattice) -> Vec<DistributivityViolation> {
    let mut out = Vec::new();
    for a in l.elements() {
        for b in l.elements() {
            let ab = l.meet(a, b);
            for c in l.elements() {
                let lhs = l.meet(a, l.join(b, c));
                let rhs = l.join(ab, l.meet(a, c));
                if lhs != rhs {
                    out.push(DistributivityViolation { a, b, c, lhs, rhs });
                }
            }
        }
    }
    out
}

pub fn check_orthomodularity(l: &FiniteOrtholattice) -> Vec<OrthomodularityViolation> {
    let mut out = Vec::new();
    for a in l.elements() {
        let ac = l.complement(a);
        for b in l.elements() {
            if !l.leq(a, b) {
                continue;
            }
            let got = l.join(a, l.meet(ac, b));
            if got != b {
                out.push(OrthomodularityViolation { a, b, got });
            }
        }
    }
    out
}

/// Elements covering bottom, in index order.
pub fn atoms(l: &FiniteOrtholattice) -> Vec<Element> {
    l.elements().filter(|&a| l.covers(l.bottom(), a)).collect()
}

/// Every nonzero element dominates some atom.
pub fn check_atomicity(l: &FiniteOrtholattice) -> bool {
    let atoms = atoms(l);
    l.elements()
        .filter(|&a| a != l.bottom())
        .all(|a| atoms.iter().any(|&p| l.leq(p, a)))
}

pub fn check_covering(l: &FiniteOrtholattice) -> Vec<CoveringViolation> {
    let mut out = Vec::new();
    for p in atoms(l) {
        for a in l.elements() {
            if l.meet(p, a) != l.bottom() {
                continue;
            }
            let j = l.join(a, p);
            if !l.covers(a, j) {
                out.push(CoveringViolation { atom: p, a, join: j });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::families::{boolean, hexagon, mo};
    use super::*;

    #[test]
    fn boolean_is_distributive() {
        for k in 0..=4 {
            let l = boolean(k);
            assert!(check_distributivity(&l).is_empty(), "2^{k}");
            assert!(check_orthomodularity(&l).is_empty());
            assert!(check_covering(&l).is_empty());
            assert!(check_atomicity(&l));
        }
    }

    #[test]
    fn boolean_atoms_are_singletons() {
        let l = boolean(3);
        let names: Vec<&str> = atoms(&l).iter().map(|&a| l.label(a)).collect();
        assert_eq!(names, ["{1}", "{2}", "{3}"]);
    }

    #[test]
    fn mo2_reports() {
        let l = mo(2);
        let xp = l.element("x1+").unwrap();
        let yp = l.element("x2+").unwrap();
        let ym = l.element("x2-").unwrap();
        let dist = check_distributivity(&l);
        let hit = dist.iter().find(|v| (v.a, v.b, v.c) == (xp, yp, ym)).expect("Eq-4 triple flagged");
        assert_eq!(hit.lhs, xp);
        assert_eq!(hit.rhs, l.bottom());
        assert!(check_orthomodularity(&l).is_empty());
        assert!(check_covering(&l).is_empty());
        assert!(check_atomicity(&l));
        let atom_names: Vec<&str> = atoms(&l).iter().map(|&a| l.label(a)).collect();
        assert_eq!(atom_names, ["x1+", "x1-", "x2+", "x2-"]);
    }

    #[test]
    fn reports_are_sorted() {
        let d = check_distributivity(&mo(3));
        assert!(d.windows(2).all(|w| (w[0].a, w[0].b, w[0].c) < (w[1].a, w[1].b, w[1].c)));
    }

    #[test]
    fn hexagon_is_not_orthomodular() {
        let l = hexagon();
        let a = l.element("a").unwrap();
        let b = l.element("b").unwrap();
        let om = check_orthomodularity(&l);
        assert!(om.contains(&OrthomodularityViolation { a, b, got: a }), "{om:?}");
        let bc = l.element("b'").unwrap();
        let cov = check_covering(&l);
        assert!(cov.contains(&CoveringViolation { atom: a, a: bc, join: l.top() }), "{cov:?}");
    }

    #[test]
    fn finite_lattices_are_atomic() {
        // every descending chain terminates, so atomicity can only fail on infinite lattices
        for l in [boolean(0), boolean(3), mo(4), hexagon()] {
            assert!(check_atomicity(&l));
        }
    }
}
