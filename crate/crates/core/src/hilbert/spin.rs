use num_complex::Complex;

use super::{HilbertError, Subspace, SubspaceLattice};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn value<F: Scalar>(self) -> F {
        match self {
            Sign::Plus => F::one(),
            Sign::Minus => -F::one(),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

fn check_unit<F: Scalar>(axis: [F; 3]) -> Result<(), HilbertError> {
    let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    if (n - F::one()).abs() > F::lit(F::RANK_EPS) {
        return Err(HilbertError::NonUnitAxis(n.as_f64()));
    }
    Ok(())
}

/// Eigenspace of `n·σ` for eigenvalue ±1 in `C^2`.
///
/// `n·σ = [[nz, nx - i ny], [nx + i ny, -nz]]`; each row of `n·σ - λI` gives
/// a kernel vector and the better conditioned of the two is used.
pub fn spin_eigenspace<F: Scalar>(axis: [F; 3], sign: Sign) -> Result<Subspace<F>, HilbertError> {
    check_unit(axis)?;
    let [nx, ny, nz] = axis;
    let lambda: F = sign.value();
    let from_row1 = vec![Complex::new(nx, -ny), Complex::new(lambda - nz, F::zero())];
    let from_row2 = vec![Complex::new(nz + lambda, F::zero()), Complex::new(nx, ny)];
    let n1 = from_row1.iter().fold(F::zero(), |a, c| a + c.norm_sqr());
    let n2 = from_row2.iter().fold(F::zero(), |a, c| a + c.norm_sqr());
    let v = if n1 >= n2 { from_row1 } else { from_row2 };
    Subspace::span(2, &[v])
}

/// `{0, I} ∪ {±-eigenspaces of every axis}`, labelled `0`, `a{i}+`,
/// `a{i}-`, ..., `I` unless `names` supplies context names.
pub fn build_spin_lattice<F: Scalar>(
    axes: &[[F; 3]],
    names: Option<&[String]>,
) -> Result<SubspaceLattice<F>, HilbertError> {
    for a in axes {
        check_unit(*a)?;
    }
    let par_tol = F::lit(F::RANK_EPS).sqrt();
    for i in 0..axes.len() {
        for j in (i + 1)..axes.len() {
            let d = axes[i][0] * axes[j][0] + axes[i][1] * axes[j][1] + axes[i][2] * axes[j][2];
            if F::one() - d.abs() <= par_tol {
                return Err(HilbertError::ParallelAxes(i, j));
            }
        }
    }
    if let Some(n) = names {
        if n.len() != axes.len() {
            return Err(HilbertError::LabelCount(n.len(), axes.len()));
        }
    }
    let mut elements = vec![Subspace::zero(2)];
    let mut labels = vec!["0".to_owned()];
    for (i, a) in axes.iter().enumerate() {
        for s in [Sign::Plus, Sign::Minus] {
            elements.push(spin_eigenspace(*a, s)?);
            let name = names.map(|n| n[i].clone()).unwrap_or_else(|| format!("a{}", i + 1));
            let sep = if names.is_some() { ":" } else { "" };
            labels.push(format!("{name}{sep}{}", s.symbol()));
        }
    }
    elements.push(Subspace::full(2));
    labels.push("I".to_owned());
    SubspaceLattice::from_subspaces(2, elements, labels)
}
