use std::fmt::Write as _;

use num_complex::Complex;

use super::HilbertError;
use crate::scalar::{fmt12, Scalar};

pub type CVector<F> = Vec<Complex<F>>;

/// A subspace of `C^d` held as an orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<F> {
    ambient_dim: usize,
    basis: Vec<CVector<F>>,
}

fn dot<F: Scalar>(u: &[Complex<F>], v: &[Complex<F>]) -> Complex<F> {
    u.iter().zip(v).fold(Complex::new(F::zero(), F::zero()), |acc, (a, b)| acc + a.conj() * b)
}

fn norm<F: Scalar>(v: &[Complex<F>]) -> F {
    v.iter().fold(F::zero(), |acc, a| acc + a.norm_sqr()).sqrt()
}

/// Rotates `v` so its first non-negligible component is real and positive.
fn fix_phase<F: Scalar>(v: &mut [Complex<F>]) {
    let eps = F::lit(F::RANK_EPS);
    if let Some(lead) = v.iter().find(|c| c.norm() > eps).copied() {
        let phase = lead.conj() / Complex::new(lead.norm(), F::zero());
        for c in v.iter_mut() {
            *c = *c * phase;
        }
    }
}

impl<F: Scalar> Subspace<F> {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                (0..ambient_dim)
                    .map(|j| if i == j { Complex::new(F::one(), F::zero()) } else { Complex::new(F::zero(), F::zero()) })
                    .collect()
            })
            .collect();
        Subspace { ambient_dim, basis }
    }

    /// Span of arbitrary vectors. Orthonormalizes with pivoted Gram-Schmidt
    /// (two projection passes); a candidate whose residual norm falls below
    /// `RANK_EPS` times the largest input norm is dropped as dependent.
    pub fn span(ambient_dim: usize, vectors: &[CVector<F>]) -> Result<Self, HilbertError> {
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(HilbertError::DimensionMismatch { expected: ambient_dim, got: v.len() });
            }
        }
        let scale = vectors.iter().map(|v| norm(v)).fold(F::zero(), F::max);
        let tol = F::lit(F::RANK_EPS) * scale.max(F::one());
        let mut rest: Vec<CVector<F>> = vectors.to_vec();
        let mut basis: Vec<CVector<F>> = Vec::new();
        while basis.len() < ambient_dim && !rest.is_empty() {
            for v in rest.iter_mut() {
                for _ in 0..2 {
                    for q in &basis {
                        let c = dot(q, v);
                        for (x, y) in v.iter_mut().zip(q) {
                            *x = *x - c * y;
                        }
                    }
                }
            }
            let (best, best_norm) = rest
                .iter()
                .enumerate()
                .map(|(i, v)| (i, norm(v)))
                .fold((0, F::neg_infinity()), |acc, x| if x.1 > acc.1 { x } else { acc });
            if best_norm <= tol {
                break;
            }
            let mut q = rest.swap_remove(best);
            for x in q.iter_mut() {
                *x = *x / Complex::new(best_norm, F::zero());
            }
            basis.push(q);
        }
        for q in basis.iter_mut() {
            fix_phase(q);
        }
        Ok(Subspace { ambient_dim, basis })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CVector<F>] {
        &self.basis
    }

    /// Orthogonal projector `sum_k |q_k><q_k|`, row-major.
    pub fn projector(&self) -> Vec<Vec<Complex<F>>> {
        let d = self.ambient_dim;
        let mut p = vec![vec![Complex::new(F::zero(), F::zero()); d]; d];
        for q in &self.basis {
            for i in 0..d {
                for j in 0..d {
                    p[i][j] = p[i][j] + q[i] * q[j].conj();
                }
            }
        }
        p
    }

    fn check_dim(&self, other: &Self) -> Result<(), HilbertError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(HilbertError::DimensionMismatch { expected: self.ambient_dim, got: other.ambient_dim });
        }
        Ok(())
    }

    /// Columns of `I - P`, whose span is the orthogonal complement.
    fn complement_columns(&self) -> Vec<CVector<F>> {
        let d = self.ambient_dim;
        let p = self.projector();
        (0..d)
            .map(|j| {
                (0..d)
                    .map(|i| {
                        let id = if i == j { F::one() } else { F::zero() };
                        Complex::new(id, F::zero()) - p[i][j]
                    })
                    .collect()
            })
            .collect()
    }

    pub fn ortho(&self) -> Self {
        Subspace::span(self.ambient_dim, &self.complement_columns()).expect("dimensions agree")
    }

    /// Closed span of both subspaces.
    pub fn join(&self, other: &Self) -> Result<Self, HilbertError> {
        self.check_dim(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient_dim, &vs)
    }

    /// Intersection, computed as the common null space of `I - P_a` and
    /// `I - P_b`: the kernel of their (Hermitian, positive) sum is the
    /// orthogonal complement of its range.
    pub fn meet(&self, other: &Self) -> Result<Self, HilbertError> {
        self.check_dim(other)?;
        let ca = self.complement_columns();
        let cb = other.complement_columns();
        let sum: Vec<CVector<F>> =
            ca.iter().zip(&cb).map(|(u, v)| u.iter().zip(v).map(|(a, b)| *a + *b).collect()).collect();
        Ok(Subspace::span(self.ambient_dim, &sum)?.ortho())
    }

    /// `self ⊆ other` up to `RANK_EPS`.
    pub fn is_subspace_of(&self, other: &Self) -> bool {
        if self.ambient_dim != other.ambient_dim {
            return false;
        }
        let tol = F::lit(F::RANK_EPS).sqrt();
        self.basis.iter().all(|v| {
            let mut r = v.clone();
            for q in &other.basis {
                let c = dot(q, &r);
                for (x, y) in r.iter_mut().zip(q) {
                    *x = *x - c * y;
                }
            }
            norm(&r) <= tol
        })
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.rank() == other.rank() && self.is_subspace_of(other) && other.is_subspace_of(self)
    }

    /// Text dump: basis vectors as `[re, im]` pairs, 12 significant digits.
    pub fn dump(&self, label: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "[[subspace]]");
        let _ = writeln!(s, "label = \"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""));
        let _ = writeln!(s, "rank = {}", self.rank());
        s.push_str("basis = [");
        let vecs: Vec<String> = self
            .basis
            .iter()
            .map(|v| {
                let comps: Vec<String> =
                    v.iter().map(|c| format!("[{}, {}]", fmt12(c.re.as_f64()), fmt12(c.im.as_f64()))).collect();
                format!("[{}]", comps.join(", "))
            })
            .collect();
        s.push_str(&vecs.join(", "));
        s.push_str("]\n");
        s
    }
}
