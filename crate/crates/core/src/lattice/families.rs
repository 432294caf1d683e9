//! Standard small ortholattices used as fixtures and references.

use super::FiniteOrtholattice;

/// Power set of `{1..k}` ordered by inclusion, complement = set complement.
/// Element `i` is the subset whose bitmask is `i`.
pub fn boolean(k: usize) -> FiniteOrtholattice {
    assert!(k <= 16, "boolean lattice too large");
    let n = 1usize << k;
    let labels = (0..n).map(|m| {
        let items: Vec<String> = (0..k).filter(|b| m & (1 << b) != 0).map(|b| (b + 1).to_string()).collect();
        format!("{{{}}}", items.join(","))
    });
    let full = n - 1;
    FiniteOrtholattice::from_order(labels, |a, b| a & !b == 0, (0..n).map(|m| full & !m).collect())
        .expect("boolean lattice is an ortholattice")
}

/// `MOn`: bottom, `n` complementary pairs of pairwise incomparable atoms
/// `x{i}+`, `x{i}-`, and top. `MO0` is the two-element lattice.
pub fn mo(n: usize) -> FiniteOrtholattice {
    let size = 2 * n + 2;
    let top = size - 1;
    let mut labels = vec!["0".to_string()];
    for i in 1..=n {
        labels.push(format!("x{i}+"));
        labels.push(format!("x{i}-"));
    }
    labels.push("1".to_string());
    let mut comp = vec![0; size];
    comp[0] = top;
    comp[top] = 0;
    for i in 0..n {
        comp[1 + 2 * i] = 2 + 2 * i;
        comp[2 + 2 * i] = 1 + 2 * i;
    }
    FiniteOrtholattice::from_order(labels, |a, b| a == b || a == 0 || b == top, comp)
        .expect("MOn is an ortholattice")
}

/// The benzene-ring ortholattice `0 < a < b < 1`, `0 < b' < a' < 1`. It is
/// orthocomplemented but not orthomodular.
pub fn hexagon() -> FiniteOrtholattice {
    let labels = ["0", "a", "b", "b'", "a'", "1"];
    let covers = [(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)];
    FiniteOrtholattice::from_covers(labels, &covers, vec![5, 4, 3, 2, 1, 0])
        .expect("hexagon is an ortholattice")
}
