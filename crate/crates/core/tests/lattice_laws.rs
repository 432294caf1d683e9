use geon_core::lattice::families::{boolean, hexagon, mo};
use geon_core::lattice::{
    atoms, check_covering, check_distributivity, check_orthomodularity, FiniteOrtholattice,
};

/// Independent MOn model: index 0 is bottom, `2n+1` is top, everything else an atom.
struct MoOracle {
    n: usize,
}

impl MoOracle {
    fn top(&self) -> usize {
        2 * self.n + 1
    }
    fn meet(&self, a: usize, b: usize) -> usize {
        if a == b || b == self.top() {
            a
        } else if a == self.top() {
            b
        } else {
            0
        }
    }
    fn join(&self, a: usize, b: usize) -> usize {
        if a == b || b == 0 {
            a
        } else if a == 0 {
            b
        } else {
            self.top()
        }
    }
    fn distributivity_violations(&self) -> usize {
        let size = 2 * self.n + 2;
        let mut count = 0;
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    if self.meet(a, self.join(b, c)) != self.join(self.meet(a, b), self.meet(a, c)) {
                        count += 1;
                    }
                }
            }
        }
        count
    }
}

#[test]
fn mo_tables_match_oracle() {
    for n in 0..=8 {
        let l = mo(n);
        let o = MoOracle { n };
        for a in l.elements() {
            for b in l.elements() {
                assert_eq!(l.meet(a, b).index(), o.meet(a.index(), b.index()));
                assert_eq!(l.join(a, b).index(), o.join(a.index(), b.index()));
            }
        }
    }
}

#[test]
fn mo2_violation_count_is_frozen() {
    // 24 = 4*3*2: atom a, distinct atoms b, c with a not in {b, c}
    assert_eq!(MoOracle { n: 2 }.distributivity_violations(), 24);
    assert_eq!(check_distributivity(&mo(2)).len(), 24);
    assert_eq!(MoOracle { n: 3 }.distributivity_violations(), 120);
    assert_eq!(check_distributivity(&mo(3)).len(), 120);
}

#[test]
fn mo_family_is_orthomodular_but_not_distributive() {
    for n in 0..=8 {
        let l = mo(n);
        assert!(check_orthomodularity(&l).is_empty(), "MO{n}");
        assert!(check_covering(&l).is_empty(), "MO{n}");
        assert_eq!(atoms(&l).len(), if n == 0 { 1 } else { 2 * n });
        assert_eq!(check_distributivity(&l).is_empty(), n < 2, "MO{n}");
    }
}

fn fixtures() -> Vec<FiniteOrtholattice> {
    let mut v: Vec<_> = (0..=5).map(boolean).collect();
    v.extend((0..=15).map(mo));
    v.push(hexagon());
    v
}

#[test]
fn lattice_identities_exhaustive() {
    for l in fixtures() {
        assert!(l.len() <= 32);
        for a in l.elements() {
            assert_eq!(l.meet(a, a), a);
            assert_eq!(l.join(a, a), a);
            for b in l.elements() {
                assert_eq!(l.meet(a, b), l.meet(b, a));
                assert_eq!(l.join(a, b), l.join(b, a));
                assert_eq!(l.meet(a, l.join(a, b)), a, "absorption");
                assert_eq!(l.join(a, l.meet(a, b)), a, "absorption");
                assert_eq!(l.leq(a, b), l.meet(a, b) == a);
                for c in l.elements() {
                    assert_eq!(l.meet(a, l.meet(b, c)), l.meet(l.meet(a, b), c));
                    assert_eq!(l.join(a, l.join(b, c)), l.join(l.join(a, b), c));
                }
            }
        }
    }
}

#[test]
fn de_morgan_exhaustive() {
    for l in fixtures() {
        for a in l.elements() {
            for b in l.elements() {
                assert_eq!(
                    l.complement(l.meet(a, b)),
                    l.join(l.complement(a), l.complement(b))
                );
                assert_eq!(
                    l.complement(l.join(a, b)),
                    l.meet(l.complement(a), l.complement(b))
                );
            }
        }
    }
}

#[test]
fn order_laws_and_bounds() {
    for l in fixtures() {
        for a in l.elements() {
            assert!(l.leq(l.bottom(), a) && l.leq(a, l.top()));
            assert_eq!(l.meet(a, l.complement(a)), l.bottom());
            assert_eq!(l.join(a, l.complement(a)), l.top());
            for b in l.elements() {
                if l.leq(a, b) {
                    assert!(l.leq(l.complement(b), l.complement(a)));
                }
            }
        }
    }
}
