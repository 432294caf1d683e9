use crate::lattice::{atoms, Element, FiniteOrtholattice};

/// Outcome of an isomorphism search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Isomorphism {
    /// `map[i]` is the image of element `i` of the first lattice.
    Found(Vec<Element>),
    /// The search space was exhausted (or an invariant already differs).
    Absent(String),
}

impl Isomorphism {
    pub fn is_found(&self) -> bool {
        matches!(self, Isomorphism::Found(_))
    }
}

/// Invariants preserved by any order isomorphism.
fn signature(l: &FiniteOrtholattice, a: Element) -> (usize, usize, usize, bool, bool) {
    let below = l.elements().filter(|&b| l.leq(b, a)).count();
    let above = l.elements().filter(|&b| l.leq(a, b)).count();
    (l.height(a), below, above, l.complement(a) == a, l.covers(l.bottom(), a))
}

/// Checks that `map` is a bijection preserving order in both directions and
/// commuting with complement.
pub fn verify_isomorphism(l1: &FiniteOrtholattice, l2: &FiniteOrtholattice, map: &[Element]) -> bool {
    if l1.len() != l2.len() || map.len() != l1.len() {
        return false;
    }
    let mut hit = vec![false; l2.len()];
    for m in map {
        if m.index() >= l2.len() || std::mem::replace(&mut hit[m.index()], true) {
            return false;
        }
    }
    l1.elements().all(|a| {
        map[l1.complement(a).index()] == l2.complement(map[a.index()])
            && l1.elements().all(|b| l1.leq(a, b) == l2.leq(map[a.index()], map[b.index()]))
    })
}

/// Searches for an order- and complement-preserving bijection `l1 -> l2`.
///
/// Elements are assigned atoms first, then by height, so for atomistic
/// lattices the atom assignment prunes everything above it. Candidates must
/// share the [`signature`]; each assignment is checked against all earlier
/// ones. The first bijection in this deterministic order is returned, and an
/// exhausted search is a certificate that none exists.
pub fn check_isomorphic(l1: &FiniteOrtholattice, l2: &FiniteOrtholattice) -> Isomorphism {
    if l1.len() != l2.len() {
        return Isomorphism::Absent(format!("element counts differ: {} vs {}", l1.len(), l2.len()));
    }
    let sig1: Vec<_> = l1.elements().map(|a| signature(l1, a)).collect();
    let sig2: Vec<_> = l2.elements().map(|a| signature(l2, a)).collect();
    let (mut s1, mut s2) = (sig1.clone(), sig2.clone());
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return Isomorphism::Absent("element invariants (height, up/down sets, atoms) differ".into());
    }

    let atom_set = atoms(l1);
    let mut order: Vec<Element> = l1.elements().collect();
    order.sort_by_key(|&a| (!atom_set.contains(&a), sig1[a.index()].0, a));

    let mut map: Vec<Option<Element>> = vec![None; l1.len()];
    let mut used = vec![false; l2.len()];
    if search(l1, l2, &sig1, &sig2, &order, 0, &mut map, &mut used) {
        Isomorphism::Found(map.into_iter().map(|m| m.expect("complete assignment")).collect())
    } else {
        Isomorphism::Absent("exhaustive search found no order- and complement-preserving bijection".into())
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    l1: &FiniteOrtholattice,
    l2: &FiniteOrtholattice,
    sig1: &[(usize, usize, usize, bool, bool)],
    sig2: &[(usize, usize, usize, bool, bool)],
    order: &[Element],
    depth: usize,
    map: &mut [Option<Element>],
    used: &mut [bool],
) -> bool {
    let Some(&x) = order.get(depth) else {
        return true;
    };
    for y in l2.elements() {
        if used[y.index()] || sig1[x.index()] != sig2[y.index()] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&x2| {
            let y2 = map[x2.index()].expect("assigned");
            l1.leq(x, x2) == l2.leq(y, y2) && l1.leq(x2, x) == l2.leq(y2, y)
        });
        if !consistent {
            continue;
        }
        let cx = l1.complement(x);
        let comp_ok = if cx == x {
            l2.complement(y) == y
        } else {
            match map[cx.index()] {
                Some(cy) => cy == l2.complement(y),
                None => !used[l2.complement(y).index()],
            }
        };
        if !comp_ok {
            continue;
        }
        map[x.index()] = Some(y);
        used[y.index()] = true;
        if search(l1, l2, sig1, sig2, order, depth + 1, map, used) {
            return true;
        }
        map[x.index()] = None;
        used[y.index()] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::families::{boolean, hexagon, mo};

    #[test]
    fn identity_on_self() {
        for l in [mo(2), boolean(3), hexagon()] {
            match check_isomorphic(&l, &l) {
                Isomorphism::Found(m) => {
                    assert!(verify_isomorphism(&l, &l, &m));
                    assert_eq!(m, l.elements().collect::<Vec<_>>());
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn different_sizes() {
        assert!(matches!(check_isomorphic(&mo(2), &boolean(2)), Isomorphism::Absent(r) if r.contains("counts")));
    }

    #[test]
    fn same_size_not_isomorphic() {
        // both 8 elements
        assert!(!check_isomorphic(&mo(3), &boolean(3)).is_found());
        // both 6 elements
        assert!(!check_isomorphic(&mo(2), &hexagon()).is_found());
    }

    #[test]
    fn relabelled_copy_is_found() {
        let l = mo(3);
        // reverse the atom order: a permuted presentation of the same lattice
        let n = l.len();
        let perm: Vec<usize> = (0..n).map(|i| if i == 0 || i == n - 1 { i } else { n - 1 - i }).collect();
        let labels: Vec<String> = perm.iter().map(|&i| format!("p{i}")).collect();
        let inv: Vec<usize> = (0..n).map(|i| perm.iter().position(|&p| p == i).unwrap()).collect();
        let comp: Vec<usize> = (0..n).map(|i| inv[l.complement(Element::new(perm[i])).index()]).collect();
        let permuted = FiniteOrtholattice::from_order(
            labels,
            |a, b| l.leq(Element::new(perm[a]), Element::new(perm[b])),
            comp,
        )
        .unwrap();
        match check_isomorphic(&l, &permuted) {
            Isomorphism::Found(m) => assert!(verify_isomorphism(&l, &permuted, &m)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn verify_rejects_bad_maps() {
        let l = mo(2);
        let mut m: Vec<Element> = l.elements().collect();
        m.swap(1, 3); // x1+ <-> x2+ breaks complement pairing
        assert!(!verify_isomorphism(&l, &l, &m));
        m.swap(2, 4); // now pairs move together
        assert!(verify_isomorphism(&l, &l, &m));
        assert!(!verify_isomorphism(&l, &l, &[Element::new(0); 6]));
    }
}
