//! Lambda lengths from simplicial coordinates.
//!
//! The unknowns are the h-lengths of all sectors, one per triangle corner.
//! Simplicial coordinates are linear in them: an edge collects, from each
//! flanking side, the two sectors at its ends minus the sector opposite it.
//! The h-lengths come from a decoration exactly when both sides of every
//! interior edge agree on `λ_e^{-2}`, i.e. when the coupling energy
//! `K = Σ_e (log αβ − log γδ)²` vanishes. [`minimize_energy`] drives `K` to
//! zero on the constraint set by projected gradient descent in `log h`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::linalg::{self, Matrix};
use crate::math;
use crate::scalar::Scalar;
use crate::triangulation::{EdgeId, IdealTriangulation, Side, TriangulationError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error(transparent)]
    Triangulation(#[from] TriangulationError),
    #[error("no positive sector vector satisfies the constraints: {0}")]
    Infeasible(String),
    #[error("no convergence after {iters} iterations (energy {energy:e}, constraint residual {constraint:e})")]
    NoConvergence { iters: usize, energy: f64, constraint: f64, best: SectorVector, trace: Vec<f64> },
    #[error("sides of edge {edge} disagree on its lambda length (log residual {residual:e})")]
    CouplingViolated { edge: EdgeId, residual: f64 },
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Initial trial step factor relative to the line-search optimum.
    pub step: f64,
    pub tol_constraint: f64,
    pub tol_energy: f64,
    pub max_iters: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { step: 1.0, tol_constraint: 1e-10, tol_energy: 1e-14, max_iters: 50_000 }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), SolverError> {
        let ok = self.step > 0.0 && self.tol_constraint > 0.0 && self.tol_energy > 0.0 && self.max_iters > 0;
        if ok {
            Ok(())
        } else {
            Err(SolverError::InvalidConfig(format!("{self:?}")))
        }
    }
}

/// h-lengths indexed by `3 · triangle + corner`.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorVector {
    pub h: Vec<f64>,
}

impl SectorVector {
    pub fn get(&self, t: usize, corner: usize) -> f64 {
        self.h[3 * t + corner]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimizeReport {
    pub h: SectorVector,
    pub iters: usize,
    pub energy: f64,
    pub constraint_residual: f64,
    /// Energy after each accepted iteration, starting with the initial value.
    pub trace: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub lambda: Vec<f64>,
    pub iters: usize,
    pub final_energy: f64,
}

fn idx(s: Side, offset: usize) -> usize {
    3 * s.triangle + (s.index + offset) % 3
}

/// h-lengths of a decoration.
pub fn h_from_lambda<T: Scalar>(t: &IdealTriangulation, lambda: &[T]) -> Result<Vec<T>, SolverError> {
    t.check_decoration(lambda)?;
    Ok((0..t.num_triangles()).flat_map(|tri| (0..3).map(move |c| (tri, c))).map(|(tri, c)| t.sector_h_length(lambda, tri, c)).collect())
}

/// The linear map from h-lengths to simplicial coordinates.
pub fn constraint_matrix(t: &IdealTriangulation) -> Matrix {
    let mut a = Matrix::zeros(t.num_edges(), 3 * t.num_triangles());
    for e in 0..t.num_edges() {
        let sides = t.edge_sides(e);
        let w = if sides.len() == 1 { 2.0 } else { 1.0 };
        for &s in sides {
            a.add_to(e, idx(s, 0), w);
            a.add_to(e, idx(s, 1), w);
            a.add_to(e, idx(s, 2), -w);
        }
    }
    a
}

/// Log-coupling residual matrix: row `e` maps `log h` to `log αβ − log γδ`.
fn coupling_matrix(t: &IdealTriangulation) -> (Matrix, Vec<EdgeId>) {
    let interior: Vec<EdgeId> = t.interior_edges().collect();
    let mut r = Matrix::zeros(interior.len(), 3 * t.num_triangles());
    for (row, &e) in interior.iter().enumerate() {
        let (s, q) = (t.edge_sides(e)[0], t.edge_sides(e)[1]);
        r.add_to(row, idx(s, 0), 1.0);
        r.add_to(row, idx(s, 1), 1.0);
        r.add_to(row, idx(q, 0), -1.0);
        r.add_to(row, idx(q, 1), -1.0);
    }
    (r, interior)
}

fn check_h(t: &IdealTriangulation, h: &SectorVector) -> Result<(), SolverError> {
    if h.h.len() != 3 * t.num_triangles() {
        return Err(TriangulationError::LengthMismatch { expected: 3 * t.num_triangles(), got: h.h.len() }.into());
    }
    if h.h.iter().any(|v| !(*v > 0.0)) {
        return Err(SolverError::Infeasible("sector vector is not positive".into()));
    }
    Ok(())
}

fn log_vec(h: &[f64]) -> Vec<f64> {
    h.iter().map(|v| math::ln(*v)).collect()
}

/// Coupling energy `K(h)`.
pub fn energy(t: &IdealTriangulation, h: &SectorVector) -> Result<f64, SolverError> {
    check_h(t, h)?;
    let (r, _) = coupling_matrix(t);
    let res = r.mul_vec(&log_vec(&h.h));
    Ok(linalg::dot(&res, &res))
}

/// Gradient of `K` with respect to `h`.
pub fn energy_gradient(t: &IdealTriangulation, h: &SectorVector) -> Result<Vec<f64>, SolverError> {
    check_h(t, h)?;
    let (r, _) = coupling_matrix(t);
    let res = r.mul_vec(&log_vec(&h.h));
    Ok(r.tmul_vec(&res).iter().zip(&h.h).map(|(g, hv)| 2.0 * g / hv).collect())
}

/// `max_e |(A h)_e − X_e|`.
pub fn constraint_residual(t: &IdealTriangulation, h: &SectorVector, x: &[f64]) -> f64 {
    let ah = constraint_matrix(t).mul_vec(&h.h);
    ah.iter().zip(x).map(|(a, b)| math::abs(a - b)).fold(0.0, f64::max)
}

fn check_coordinates(t: &IdealTriangulation, x: &[f64]) -> Result<(), SolverError> {
    if x.len() != t.num_edges() {
        return Err(TriangulationError::LengthMismatch { expected: t.num_edges(), got: x.len() }.into());
    }
    if let Some(e) = t.interior_edges().find(|&e| !(x[e] >= 0.0)) {
        return Err(TriangulationError::PreconditionViolated(format!("X[{e}] = {} is negative", x[e])).into());
    }
    if !t.no_vanishing_cycle(x)? {
        return Err(TriangulationError::PreconditionViolated("a cycle of triangles has vanishing coordinate sum".into()).into());
    }
    Ok(())
}

/// Constraints in reduced form `Q h = c` with `Q` having orthonormal rows.
struct Constraints {
    a: Matrix,
    q: Matrix,
    c: Vec<f64>,
    x: Vec<f64>,
}

impl Constraints {
    fn new(t: &IdealTriangulation, x: &[f64]) -> Result<Self, SolverError> {
        let a = constraint_matrix(t);
        let q = a.row_space_basis(1e-10);
        // A = M Q with M = A Qᵀ of full column rank
        let mut m = Matrix::zeros(a.rows(), q.rows());
        for i in 0..a.rows() {
            for j in 0..q.rows() {
                m.set(i, j, linalg::dot(a.row(i), q.row(j)));
            }
        }
        let c = linalg::least_squares(&m, x).ok_or_else(|| SolverError::Infeasible("singular constraint system".into()))?;
        let back = m.mul_vec(&c);
        let scale = x.iter().fold(1.0f64, |s, v| s.max(math::abs(*v)));
        if let Some(e) = (0..x.len()).find(|&e| math::abs(back[e] - x[e]) > 1e-9 * scale) {
            return Err(SolverError::Infeasible(format!("coordinates are not in the range of the constraint map (edge {e})")));
        }
        Ok(Self { a, q, c, x: x.to_vec() })
    }

    fn restore(&self, h: &mut [f64]) {
        let qh = self.q.mul_vec(h);
        let d: Vec<f64> = self.c.iter().zip(&qh).map(|(c, v)| c - v).collect();
        let corr = self.q.tmul_vec(&d);
        linalg::axpy(1.0, &corr, h);
    }

    fn residual(&self, h: &[f64]) -> f64 {
        let ah = self.a.mul_vec(h);
        ah.iter().zip(&self.x).map(|(a, b)| math::abs(a - b)).fold(0.0, f64::max)
    }
}

/// A positive h satisfying the linear constraints. Starts from a positive
/// multiple of the all-ones vector and runs infeasible-start Newton on
/// `Σ (h/m − log h)` restricted to the constraint set, which keeps iterates
/// positive and finishes near the analytic center of the feasible region.
pub fn feasible_h_init(t: &IdealTriangulation, x: &[f64], cfg: &SolverConfig) -> Result<SectorVector, SolverError> {
    cfg.validate()?;
    check_coordinates(t, x)?;
    let cons = Constraints::new(t, x)?;
    feasible_from(&cons, x, cfg)
}

fn feasible_from(cons: &Constraints, x: &[f64], cfg: &SolverConfig) -> Result<SectorVector, SolverError> {
    let n = cons.q.cols();
    let m = x.iter().fold(0.0f64, |s, v| s.max(math::abs(*v))).max(1e-3);
    let mut h = vec![m / 2.0; n];
    let r = cons.q.rows();
    let mut feasible = false;
    for _ in 0..500 {
        let g: Vec<f64> = h.iter().map(|v| 1.0 / m - 1.0 / v).collect();
        let hinv: Vec<f64> = h.iter().map(|v| v * v).collect();
        let qh = cons.q.mul_vec(&h);
        let res: Vec<f64> = cons.c.iter().zip(&qh).map(|(c, v)| c - v).collect();
        // (Q H⁻¹ Qᵀ) y = −Q H⁻¹ g − res
        let qs = cons.q.scale_columns(&hinv);
        let mut s = Matrix::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                s.set(i, j, linalg::dot(qs.row(i), cons.q.row(j)));
            }
        }
        let hg: Vec<f64> = g.iter().zip(&hinv).map(|(a, b)| a * b).collect();
        let rhs: Vec<f64> = cons.q.mul_vec(&hg).iter().zip(&res).map(|(a, b)| -a - b).collect();
        let y = linalg::solve(&s, &rhs).ok_or_else(|| SolverError::Infeasible("singular Newton system".into()))?;
        let qty = cons.q.tmul_vec(&y);
        let dh: Vec<f64> = (0..n).map(|i| -hinv[i] * (g[i] + qty[i])).collect();
        let mut step: f64 = 1.0;
        for i in 0..n {
            if dh[i] < 0.0 {
                step = step.min(0.99 * h[i] / -dh[i]);
            }
        }
        linalg::axpy(step, &dh, &mut h);
        let decrement: f64 = (0..n).map(|i| dh[i] * dh[i] / hinv[i]).sum();
        if step >= 1.0 {
            cons.restore(&mut h);
            feasible = true;
        }
        if feasible && decrement < 1e-12 {
            break;
        }
    }
    if !feasible || h.iter().any(|v| !(*v > 0.0)) {
        let (i, v) = h.iter().enumerate().fold((0, f64::INFINITY), |b, (i, v)| if *v < b.1 { (i, *v) } else { b });
        return Err(SolverError::Infeasible(format!("sector {i} is driven to {v:e}")));
    }
    if cons.residual(&h) > cfg.tol_constraint * x.iter().fold(1.0f64, |s, v| s.max(math::abs(*v))) {
        return Err(SolverError::Infeasible(format!("constraint residual {:e}", cons.residual(&h))));
    }
    Ok(SectorVector { h })
}

/// Minimizes the coupling energy on `{h > 0 : A h = X}`.
///
/// Each iteration projects the gradient in `u = log h` onto the tangent
/// space of the constraint set, takes the exact line-search step of the
/// (quadratic in `u`) energy scaled by `cfg.step`, restores the linear
/// constraints in h-space and halves the step until energy decreases.
pub fn minimize_energy(t: &IdealTriangulation, x: &[f64], cfg: &SolverConfig) -> Result<MinimizeReport, SolverError> {
    cfg.validate()?;
    check_coordinates(t, x)?;
    let cons = Constraints::new(t, x)?;
    let mut h = feasible_from(&cons, x, cfg)?.h;
    let (rm, _) = coupling_matrix(t);
    let xscale = x.iter().fold(1.0f64, |s, v| s.max(math::abs(*v)));
    let eval = |h: &[f64]| {
        let res = rm.mul_vec(&log_vec(h));
        let k = linalg::dot(&res, &res);
        (res, k)
    };
    let (mut res, mut k) = eval(&h);
    let mut trace = vec![k];
    let mut iters = 0;
    while iters < cfg.max_iters {
        if k <= cfg.tol_energy && cons.residual(&h) <= cfg.tol_constraint * xscale {
            let constraint_residual = cons.residual(&h);
            return Ok(MinimizeReport { h: SectorVector { h }, iters, energy: k, constraint_residual, trace });
        }
        iters += 1;
        let mut d = rm.tmul_vec(&res);
        let tangent = cons.q.scale_columns(&h).row_space_basis(1e-12);
        tangent.project_out_rows(&mut d);
        let rd = rm.mul_vec(&d);
        let rd2 = linalg::dot(&rd, &rd);
        if rd2 <= 0.0 || linalg::norm(&d) == 0.0 {
            break;
        }
        let mut step = cfg.step * linalg::dot(&res, &rd) / rd2;
        let mut accepted = false;
        for _ in 0..60 {
            let mut trial: Vec<f64> = h.iter().zip(&d).map(|(hv, dv)| hv * math::exp(-step * dv)).collect();
            cons.restore(&mut trial);
            if trial.iter().all(|v| *v > 0.0) {
                let (r2, k2) = eval(&trial);
                if k2 < k {
                    h = trial;
                    res = r2;
                    k = k2;
                    accepted = true;
                    break;
                }
            }
            step /= 2.0;
        }
        if !accepted {
            break;
        }
        trace.push(k);
    }
    let constraint = cons.residual(&h);
    if k <= cfg.tol_energy && constraint <= cfg.tol_constraint * xscale {
        return Ok(MinimizeReport { h: SectorVector { h }, iters, energy: k, constraint_residual: constraint, trace });
    }
    Err(SolverError::NoConvergence { iters, energy: k, constraint, best: SectorVector { h }, trace })
}

/// Lambda lengths `λ_e = (αβ)^{-1/2}` from the sectors at the ends of the
/// first side of each edge, after checking that the other side agrees.
pub fn lambdas_from_h(t: &IdealTriangulation, h: &SectorVector, cfg: &SolverConfig) -> Result<Vec<f64>, SolverError> {
    check_h(t, h)?;
    let bound = 10.0 * math::sqrt(cfg.tol_energy);
    (0..t.num_edges())
        .map(|e| {
            let sides = t.edge_sides(e);
            let prod = |s: Side| h.h[idx(s, 0)] * h.h[idx(s, 1)];
            if let [s, q] = sides[..] {
                let residual = math::ln(prod(s)) - math::ln(prod(q));
                if math::abs(residual) > bound {
                    return Err(SolverError::CouplingViolated { edge: e, residual });
                }
            }
            Ok(1.0 / math::sqrt(prod(sides[0])))
        })
        .collect()
}

/// Lambda lengths whose simplicial coordinates are `x`.
pub fn solve_arithmetic_problem(t: &IdealTriangulation, x: &[f64], cfg: &SolverConfig) -> Result<Solution, SolverError> {
    let rep = minimize_energy(t, x, cfg)?;
    let lambda = lambdas_from_h(t, &rep.h, cfg)?;
    Ok(Solution { lambda, iters: rep.iters, final_energy: rep.energy })
}
