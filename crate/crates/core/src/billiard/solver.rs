use rayon::prelude::*;

use super::residual::{consistency_residual, in_scope, Residual};
use super::sim::simulate;
use super::{scaled_distance, AnsatzParams, BilliardConfig, BilliardError, EventKind, SimOutcome};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions<F> {
    /// Cells per parameter axis of the coarse scan.
    pub grid: usize,
    /// Cells with a residual norm below this seed a refinement.
    pub basin_threshold: F,
    /// Residual norm accepted as a root.
    pub tolerance: F,
    /// Roots closer than this in scaled parameters are one root.
    pub dedup_radius: F,
    pub max_events: usize,
    pub max_iterations: usize,
    /// Exit speeds scanned, as multiples of the initial speed.
    pub speed_range: (F, F),
}

impl<F: Scalar> Default for SolverOptions<F> {
    fn default() -> Self {
        SolverOptions {
            grid: 12,
            basin_threshold: F::lit(1.5),
            tolerance: F::lit(1e-10),
            dedup_radius: F::lit(1e-4),
            max_events: 64,
            max_iterations: 60,
            speed_range: (F::lit(0.2), F::lit(2.0)),
        }
    }
}

impl<F: Scalar> SolverOptions<F> {
    pub fn validate(&self) -> Result<(), BilliardError> {
        let bad = |m: &str| Err(BilliardError::Config(format!("solver options: {m}")));
        if self.grid == 0 {
            return bad("grid must be at least 1");
        }
        if !(self.tolerance > F::zero()) || !(self.dedup_radius > F::zero()) {
            return bad("tolerance and dedup_radius must be positive");
        }
        if !(self.basin_threshold > self.tolerance) {
            return bad("basin_threshold must exceed tolerance");
        }
        if !(self.dedup_radius > self.tolerance) {
            return bad("dedup_radius must exceed tolerance");
        }
        if !(self.speed_range.0 > F::zero() && self.speed_range.1 > self.speed_range.0) {
            return bad("speed_range must be an increasing positive interval");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionKind {
    /// The undisturbed evolution, or its traversal chain.
    Trivial,
    /// The released ball collides on its way.
    SelfInteracting,
}

impl SolutionKind {
    pub fn name(&self) -> &'static str {
        match self {
            SolutionKind::Trivial => "trivial",
            SolutionKind::SelfInteracting => "self_interacting",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConsistentSolution<F> {
    pub kind: SolutionKind,
    /// `None` when no ball ever leaves mouth A.
    pub params: Option<AnsatzParams<F>>,
    pub residual_norm: F,
    pub outcome: SimOutcome<F>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport<F> {
    pub solutions: Vec<ConsistentSolution<F>>,
    pub cells: usize,
    pub seeds: usize,
    /// Refinements that did not converge, with their seed.
    pub failures: Vec<String>,
}

/// Parameter box scanned for exit data, in scaled coordinates.
pub(crate) fn scan_box<F: Scalar>(c: &BilliardConfig<F>, opts: &SolverOptions<F>) -> [(F, F); 4] {
    let sc = c.scales();
    [
        (F::zero(), (c.horizon - c.wormhole.time_shift) / sc.time),
        (-F::PI(), F::PI()),
        (-F::FRAC_PI_2(), F::FRAC_PI_2()),
        opts.speed_range,
    ]
}

/// Centers of an `n^4` grid over `bounds`, last axis fastest.
pub(crate) fn grid_centers<F: Scalar>(bounds: &[(F, F); 4], n: usize) -> Vec<[F; 4]> {
    let axis = |k: usize, i: usize| {
        let (lo, hi) = bounds[k];
        lo + (hi - lo) * F::lit((i as f64 + 0.5) / n as f64)
    };
    let mut out = Vec::with_capacity(n.pow(4));
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    out.push([axis(0, a), axis(1, b), axis(2, c), axis(3, d)]);
                }
            }
        }
    }
    out
}

/// Residual as a function of scaled parameters; `None` where undefined.
pub(crate) fn scaled_residual<F: Scalar>(c: &BilliardConfig<F>, x: &[F; 4], max_events: usize) -> Option<[F; 4]> {
    let p = AnsatzParams::from_scaled(*x, c.start_time(), &c.scales());
    if p.validate().is_err() || p.exit_time < c.start_time() || p.exit_time > c.end_time() {
        return None;
    }
    consistency_residual(c, &p, max_events).ok()?.vector()
}

pub(crate) fn norm<F: Scalar>(r: &[F; 4]) -> F {
    r.iter().fold(F::zero(), |s, x| s + *x * *x).sqrt()
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
pub(crate) fn solve4<F: Scalar>(mut a: [[F; 4]; 4], mut b: [F; 4]) -> Option<[F; 4]> {
    let scale = a.iter().flatten().fold(F::zero(), |m, x| m.max(x.abs()));
    if !(scale > F::zero()) {
        return None;
    }
    for col in 0..4 {
        let piv = (col..4).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())?;
        if !(a[piv][col].abs() > scale * F::epsilon() * F::lit(16.0)) {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in (col + 1)..4 {
            let f = a[r][col] / a[col][col];
            for k in col..4 {
                a[r][k] = a[r][k] - f * a[col][k];
            }
            b[r] = b[r] - f * b[col];
        }
    }
    let mut x = [F::zero(); 4];
    for r in (0..4).rev() {
        let mut s = b[r];
        for k in (r + 1)..4 {
            s = s - a[r][k] * x[k];
        }
        x[r] = s / a[r][r];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

/// Damped Newton iteration with a forward-difference Jacobian.
fn newton<F: Scalar>(
    c: &BilliardConfig<F>,
    x0: [F; 4],
    opts: &SolverOptions<F>,
) -> Result<[F; 4], String> {
    let f = |x: &[F; 4]| scaled_residual(c, x, opts.max_events);
    let h = F::lit(1e-7).max(F::epsilon().sqrt() * F::lit(4.0));
    let mut x = x0;
    let mut r = f(&x).ok_or("seed is infeasible")?;
    // polish below the acceptance tolerance while steps still help
    let target = opts.tolerance * F::lit(1e-3);
    for _ in 0..opts.max_iterations {
        let n0 = norm(&r);
        if n0 <= target {
            return Ok(x);
        }
        let mut jac = [[F::zero(); 4]; 4];
        for k in 0..4 {
            let mut xk = x;
            xk[k] = xk[k] + h;
            let rk = f(&xk).ok_or("jacobian probe left the feasible region")?;
            for i in 0..4 {
                jac[i][k] = (rk[i] - r[i]) / h;
            }
        }
        let step = solve4(jac, r.map(|v| -v)).ok_or("singular jacobian")?;
        let mut lambda = F::one();
        let mut accepted = false;
        for _ in 0..30 {
            let mut xn = x;
            for k in 0..4 {
                xn[k] = xn[k] + lambda * step[k];
            }
            if let Some(rn) = f(&xn) {
                if norm(&rn) < n0 {
                    x = xn;
                    r = rn;
                    accepted = true;
                    break;
                }
            }
            lambda = lambda * F::lit(0.5);
        }
        if !accepted {
            if n0 <= opts.tolerance {
                return Ok(x);
            }
            return Err(format!("line search stalled at residual {}", n0.as_f64()));
        }
    }
    if norm(&r) <= opts.tolerance {
        Ok(x)
    } else {
        Err(format!("no convergence in {} iterations, residual {}", opts.max_iterations, norm(&r).as_f64()))
    }
}

/// Re-evaluates `p` from scratch and keeps it if it closes within tolerance
/// and stays within the single-collision, single-traversal scope.
pub(crate) fn accept<F: Scalar>(
    c: &BilliardConfig<F>,
    p: AnsatzParams<F>,
    opts: &SolverOptions<F>,
) -> Option<ConsistentSolution<F>> {
    let res = consistency_residual(c, &p, opts.max_events).ok()?;
    let n = res.norm()?;
    let Residual::Value(_, outcome) = res else { return None };
    if n > opts.tolerance || !in_scope(&outcome) {
        return None;
    }
    let kind = if outcome.count(EventKind::Collision) > 0 { SolutionKind::SelfInteracting } else { SolutionKind::Trivial };
    Some(ConsistentSolution { kind, params: Some(p), residual_norm: n, outcome })
}

/// The plain evolution, if it is globally consistent.
fn trivial<F: Scalar>(c: &BilliardConfig<F>, opts: &SolverOptions<F>) -> Result<Option<ConsistentSolution<F>>, BilliardError> {
    let o = simulate(c, None, opts.max_events)?;
    match o.emergent {
        None if o.unclaimed.is_empty() => {
            Ok(Some(ConsistentSolution { kind: SolutionKind::Trivial, params: None, residual_norm: F::zero(), outcome: o }))
        }
        None => Ok(None),
        Some(p) => Ok(accept(c, p, opts)),
    }
}

/// Keeps the first of every cluster of roots within `radius`, in input order.
pub(crate) fn dedup<F: Scalar>(
    c: &BilliardConfig<F>,
    roots: Vec<ConsistentSolution<F>>,
    radius: F,
) -> Vec<ConsistentSolution<F>> {
    let sc = c.scales();
    let key = |s: &ConsistentSolution<F>| s.params.map(|p| p.scaled(c.start_time(), &sc));
    let mut kept: Vec<ConsistentSolution<F>> = Vec::new();
    for r in roots {
        let dup = kept.iter().any(|k| match (key(k), key(&r)) {
            (Some(a), Some(b)) => scaled_distance(&a, &b) <= radius,
            (None, None) => true,
            _ => false,
        });
        if !dup {
            kept.push(r);
        }
    }
    kept
}

/// Trivial solutions first, then by exit time.
pub(crate) fn sort_solutions<F: Scalar>(v: &mut [ConsistentSolution<F>]) {
    v.sort_by(|a, b| {
        let ka = (a.kind != SolutionKind::Trivial, a.params.map(|p| p.exit_time));
        let kb = (b.kind != SolutionKind::Trivial, b.params.map(|p| p.exit_time));
        ka.partial_cmp(&kb).expect("finite exit times")
    });
}

/// Enumerates self-consistent evolutions of `c` with at most one
/// self-collision and one traversal.
pub fn solve_self_consistent<F: Scalar>(
    c: &BilliardConfig<F>,
    opts: &SolverOptions<F>,
) -> Result<SolveReport<F>, BilliardError> {
    c.validate()?;
    opts.validate()?;
    let mut roots: Vec<ConsistentSolution<F>> = trivial(c, opts)?.into_iter().collect();

    let cells = grid_centers(&scan_box(c, opts), opts.grid);
    let seeds: Vec<[F; 4]> = cells
        .par_iter()
        .filter(|x| scaled_residual(c, x, opts.max_events).is_some_and(|r| norm(&r) < opts.basin_threshold))
        .copied()
        .collect();

    let refined: Vec<Result<ConsistentSolution<F>, String>> = seeds
        .par_iter()
        .map(|x0| {
            let x = newton(c, *x0, opts)?;
            let p = AnsatzParams::from_scaled(x, c.start_time(), &c.scales());
            accept(c, p, opts).ok_or_else(|| "converged outside scope".to_owned())
        })
        .collect();

    let mut failures = Vec::new();
    for (x0, r) in seeds.iter().zip(refined) {
        match r {
            Ok(s) => roots.push(s),
            Err(e) => failures.push(format!("seed {:?}: {e}", x0.map(|v| v.as_f64()))),
        }
    }
    let mut solutions = dedup(c, roots, opts.dedup_radius);
    sort_solutions(&mut solutions);
    Ok(SolveReport { solutions, cells: cells.len(), seeds: seeds.len(), failures })
}
