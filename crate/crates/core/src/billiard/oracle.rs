//! Brute-force root finder used to cross-check the solver: a finer scan,
//! seeds at local minima only, and Levenberg-Marquardt with central
//! differences.

use rayon::prelude::*;

use super::solver::{accept, dedup, grid_centers, norm, scan_box, scaled_residual, solve4, sort_solutions};
use super::{AnsatzParams, BilliardConfig, BilliardError, ConsistentSolution, SolutionKind, SolverOptions};
use crate::scalar::Scalar;

/// Index offsets of the 80 neighbors of a cell in four dimensions.
fn neighbor_offsets() -> Vec<[i64; 4]> {
    let mut v = Vec::with_capacity(80);
    for a in -1..=1 {
        for b in -1..=1 {
            for c in -1..=1 {
                for d in -1..=1 {
                    if [a, b, c, d] != [0; 4] {
                        v.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    v
}

fn levenberg_marquardt<F: Scalar>(c: &BilliardConfig<F>, x0: [F; 4], opts: &SolverOptions<F>) -> Option<[F; 4]> {
    let f = |x: &[F; 4]| scaled_residual(c, x, opts.max_events);
    let h = F::lit(1e-6).max(F::epsilon().cbrt() * F::lit(4.0));
    let mut x = x0;
    let mut r = f(&x)?;
    let mut mu = F::lit(1e-3);
    for _ in 0..(4 * opts.max_iterations) {
        let n0 = norm(&r);
        if n0 <= opts.tolerance {
            return Some(x);
        }
        let mut jac = [[F::zero(); 4]; 4];
        for k in 0..4 {
            let (mut xp, mut xm) = (x, x);
            xp[k] = xp[k] + h;
            xm[k] = xm[k] - h;
            let (rp, rm) = (f(&xp)?, f(&xm)?);
            for i in 0..4 {
                jac[i][k] = (rp[i] - rm[i]) / (F::lit(2.0) * h);
            }
        }
        // (J^T J + mu diag(J^T J)) dx = -J^T r
        let mut jtj = [[F::zero(); 4]; 4];
        let mut jtr = [F::zero(); 4];
        for a in 0..4 {
            for b in 0..4 {
                jtj[a][b] = (0..4).fold(F::zero(), |s, i| s + jac[i][a] * jac[i][b]);
            }
            jtr[a] = -(0..4).fold(F::zero(), |s, i| s + jac[i][a] * r[i]);
        }
        let mut improved = false;
        for _ in 0..12 {
            let mut m = jtj;
            for a in 0..4 {
                m[a][a] = m[a][a] * (F::one() + mu);
            }
            if let Some(dx) = solve4(m, jtr) {
                let mut xn = x;
                for k in 0..4 {
                    xn[k] = xn[k] + dx[k];
                }
                if let Some(rn) = f(&xn) {
                    if norm(&rn) < n0 {
                        x = xn;
                        r = rn;
                        mu = (mu * F::lit(0.3)).max(F::lit(1e-12));
                        improved = true;
                        break;
                    }
                }
            }
            mu = mu * F::lit(10.0);
        }
        if !improved {
            return None;
        }
    }
    (norm(&r) <= opts.tolerance).then_some(x)
}

/// Self-interacting roots found from a scan at twice the solver's grid
/// resolution, sorted by exit time.
pub fn grid_oracle<F: Scalar>(
    c: &BilliardConfig<F>,
    opts: &SolverOptions<F>,
) -> Result<Vec<ConsistentSolution<F>>, BilliardError> {
    c.validate()?;
    opts.validate()?;
    let n = 2 * opts.grid;
    let cells = grid_centers(&scan_box(c, opts), n);
    let values: Vec<Option<F>> =
        cells.par_iter().map(|x| scaled_residual(c, x, opts.max_events).map(|r| norm(&r))).collect();

    let offsets = neighbor_offsets();
    let idx = |i: [i64; 4]| -> Option<usize> {
        let mut k = 0usize;
        for (d, &v) in i.iter().enumerate() {
            // the rim angle is periodic
            let v = if d == 1 { v.rem_euclid(n as i64) } else { v };
            if v < 0 || v >= n as i64 {
                return None;
            }
            k = k * n + v as usize;
        }
        Some(k)
    };
    let coords = |k: usize| -> [i64; 4] {
        let n = n as i64;
        let k = k as i64;
        [k / (n * n * n), (k / (n * n)) % n, (k / n) % n, k % n]
    };
    let minima: Vec<usize> = (0..cells.len())
        .filter(|&k| {
            let Some(v) = values[k] else { return false };
            v < opts.basin_threshold
                && offsets.iter().all(|o| {
                    let i = coords(k);
                    let j = [i[0] + o[0], i[1] + o[1], i[2] + o[2], i[3] + o[3]];
                    idx(j).and_then(|m| values[m]).is_none_or(|w| v <= w)
                })
        })
        .collect();

    let found: Vec<Option<ConsistentSolution<F>>> = minima
        .par_iter()
        .map(|&k| {
            let x = levenberg_marquardt(c, cells[k], opts)?;
            let p = AnsatzParams::from_scaled(x, c.start_time(), &c.scales());
            accept(c, p, opts).filter(|s| s.kind == SolutionKind::SelfInteracting)
        })
        .collect();
    let mut roots = dedup(c, found.into_iter().flatten().collect(), opts.dedup_radius);
    sort_solutions(&mut roots);
    Ok(roots)
}
