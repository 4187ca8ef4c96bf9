//! Cycles of triangles, the telescoping identity and the conditions on
//! simplicial coordinates that quantify over cycles.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{EdgeId, IdealTriangulation, Side, TriangulationError};
use crate::scalar::Scalar;

/// Largest number of interior edges for which cycles are enumerated.
pub const MAX_CYCLE_EDGES: usize = 30;

/// A closed chain of triangles `t_0, …, t_{n−1}`. Step `j` records the side
/// of `t_j` through which the chain leaves for `t_{j+1}`; the shared edge is
/// `e_j`. The remaining edge of `t_j` (neither `e_{j−1}` nor `e_j`) is `b_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriangleCycle {
    pub exits: Vec<Side>,
}

impl TriangleCycle {
    pub fn new(exits: Vec<Side>) -> Self {
        Self { exits }
    }

    pub fn len(&self) -> usize {
        self.exits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exits.is_empty()
    }

    pub fn triangles(&self) -> Vec<usize> {
        self.exits.iter().map(|s| s.triangle).collect()
    }

    /// The consecutive (shared) edges `e_j`.
    pub fn shared_edges(&self, t: &IdealTriangulation) -> Vec<EdgeId> {
        self.exits.iter().map(|&s| t.edge_at(s)).collect()
    }

    /// For each step, the side of `t_j` that is neither entry nor exit.
    /// Fails if the cycle is not a valid chain in `t`.
    pub fn boundary_sides(&self, t: &IdealTriangulation) -> Result<Vec<Side>, TriangulationError> {
        let n = self.exits.len();
        if n == 0 {
            return Err(TriangulationError::InvalidCycle("empty cycle".into()));
        }
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            let exit = self.exits[j];
            if exit.triangle >= t.num_triangles() || exit.index > 2 {
                return Err(TriangulationError::InvalidCycle(format!("step {j} names no side")));
            }
            let prev = self.exits[(j + n - 1) % n];
            let entry = t
                .partner(prev)
                .ok_or_else(|| TriangulationError::InvalidCycle(format!("step {} leaves through the boundary", (j + n - 1) % n)))?;
            if entry.triangle != exit.triangle {
                return Err(TriangulationError::InvalidCycle(format!("step {j} is not adjacent to the previous triangle")));
            }
            if entry.index == exit.index {
                return Err(TriangulationError::InvalidCycle(format!("step {j} leaves through its entry side")));
            }
            out.push(Side::new(exit.triangle, 3 - entry.index - exit.index));
        }
        Ok(out)
    }
}

impl IdealTriangulation {
    /// Returns `(Σ_j E(e_j), 2 Σ_j h_j)` where `h_j` is the h-length of the
    /// sector of `t_j` opposite `b_j`. The two agree for every decoration.
    pub fn telescoping_check<T: Scalar>(&self, lambda: &[T], cyc: &TriangleCycle) -> Result<(T, T), TriangulationError> {
        let coords = self.simplicial_coords(lambda)?;
        let bs = cyc.boundary_sides(self)?;
        let mut lhs = T::zero();
        let mut rhs = T::zero();
        for (exit, b) in cyc.exits.iter().zip(&bs) {
            lhs = lhs + coords[self.edge_at(*exit)].clone();
            // the sector opposite side m sits at corner m + 2
            rhs = rhs + self.sector_h_length(lambda, b.triangle, (b.index + 2) % 3);
        }
        Ok((lhs, T::from_i64(2) * rhs))
    }

    /// All simple cycles of triangles, each listed once (one direction).
    /// A chain through a single triangle appears only when it crosses an
    /// edge glued to the same triangle.
    pub fn triangle_cycles(&self) -> Result<Vec<TriangleCycle>, TriangulationError> {
        let interior = self.interior_edges().count();
        if interior > MAX_CYCLE_EDGES {
            return Err(TriangulationError::TooLarge(interior));
        }
        let mut out = Vec::new();
        for e in self.interior_edges() {
            if let [s, r] = self.edge_sides[e][..] {
                if s.triangle == r.triangle {
                    out.push(TriangleCycle::new(vec![s]));
                }
            }
        }
        let mut visited = vec![false; self.num_triangles()];
        let mut path = Vec::new();
        for start in 0..self.num_triangles() {
            visited[start] = true;
            self.extend_cycles(start, start, None, &mut visited, &mut path, &mut out);
            visited[start] = false;
        }
        Ok(out)
    }

    fn extend_cycles(
        &self,
        start: usize,
        cur: usize,
        entry: Option<usize>,
        visited: &mut [bool],
        path: &mut Vec<Side>,
        out: &mut Vec<TriangleCycle>,
    ) {
        for x in 0..3 {
            if Some(x) == entry {
                continue;
            }
            let exit = Side::new(cur, x);
            let next = match self.partner(exit) {
                Some(r) if r.triangle != cur => r,
                _ => continue,
            };
            if next.triangle == start {
                if let Some(first) = path.first().copied() {
                    let first_edge = self.edge_at(first);
                    let last_edge = self.edge_at(exit);
                    if next.index != first.index && first_edge < last_edge {
                        path.push(exit);
                        out.push(TriangleCycle::new(path.clone()));
                        path.pop();
                    }
                }
            } else if next.triangle > start && !visited[next.triangle] {
                visited[next.triangle] = true;
                path.push(exit);
                self.extend_cycles(start, next.triangle, Some(next.index), visited, path, out);
                path.pop();
                visited[next.triangle] = false;
            }
        }
    }

    /// True iff every cycle of triangles has a positive sum of `x` over its
    /// consecutive edges. Floating-point sums use the [`Scalar`] sign slack.
    pub fn no_vanishing_cycle<T: Scalar>(&self, x: &[T]) -> Result<bool, TriangulationError> {
        self.check_len(x)?;
        for cyc in self.triangle_cycles()? {
            let sum = cyc.exits.iter().fold(T::zero(), |acc, &s| acc + x[self.edge_at(s)].clone());
            if !sum.is_positive() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Checks `λ_e E_e ≤ 4` on every edge and strict triangle inequalities in
    /// every triangle. Only meaningful for nonnegative coordinates without
    /// vanishing cycles; other inputs are rejected.
    pub fn lemma5_check<T: Scalar>(&self, lambda: &[T]) -> Result<bool, TriangulationError> {
        let coords = self.simplicial_coords(lambda)?;
        if let Some(e) = coords.iter().position(|c| c.is_negative()) {
            return Err(TriangulationError::PreconditionViolated(format!("edge {e} has negative simplicial coordinate")));
        }
        if !self.no_vanishing_cycle(&coords)? {
            return Err(TriangulationError::PreconditionViolated("a cycle of triangles has vanishing coordinate sum".into()));
        }
        let four = T::from_i64(4);
        let bounded = lambda.iter().zip(&coords).all(|(l, c)| !(four.clone() - l.clone() * c.clone()).is_negative());
        Ok(bounded && self.triangle_inequalities_hold(lambda))
    }
}
