//! Fatgraphs (ribbon graphs) as permutations on half-edges.
//!
//! `σ` (rotation) sends a half-edge to the next one counter-clockwise at
//! its vertex; `ι` (pairing) swaps the two half-edges of an edge. Boundary
//! cycles of the fattened surface are the orbits of `φ = σ ∘ ι`: leave along
//! a half-edge, arrive at the far end, turn to the next half-edge there.
//! Edge `k` is the pair `edges[k]`, so edges carry stable labels.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::solver::{self, SolverConfig, SolverError};
use crate::triangulation::{EdgeId, IdealTriangulation};

/// Largest edge count accepted by the recurrent-part search.
pub const MAX_RECURRENT_EDGES: usize = 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FatgraphError {
    #[error("invalid fatgraph: {0}")]
    Invalid(String),
    #[error("vertex {vertex} has valence {valence} < 3")]
    LowValence { vertex: usize, valence: usize },
    #[error("edge {0} is a loop")]
    LoopEdge(usize),
    #[error("too many edges for exhaustive path search ({0})")]
    TooLarge(usize),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fatgraph {
    rotations: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    sigma: Vec<usize>,
    iota: Vec<usize>,
    vertex_of: Vec<usize>,
    edge_of: Vec<usize>,
}

impl Fatgraph {
    /// Half-edges are `0..H`; each appears in exactly one rotation and one
    /// edge. With `relaxed` false every vertex must have valence ≥ 3.
    pub fn new(rotations: Vec<Vec<usize>>, edges: Vec<(usize, usize)>, relaxed: bool) -> Result<Self, FatgraphError> {
        let h = 2 * edges.len();
        let mut sigma = vec![usize::MAX; h];
        let mut vertex_of = vec![usize::MAX; h];
        for (v, rot) in rotations.iter().enumerate() {
            if rot.is_empty() {
                return Err(FatgraphError::Invalid(format!("vertex {v} has no half-edges")));
            }
            if !relaxed && rot.len() < 3 {
                return Err(FatgraphError::LowValence { vertex: v, valence: rot.len() });
            }
            for (k, &x) in rot.iter().enumerate() {
                if x >= h || vertex_of[x] != usize::MAX {
                    return Err(FatgraphError::Invalid(format!("half-edge {x} is out of range or repeated")));
                }
                vertex_of[x] = v;
                sigma[x] = rot[(k + 1) % rot.len()];
            }
        }
        let mut iota = vec![usize::MAX; h];
        let mut edge_of = vec![usize::MAX; h];
        for (e, &(a, b)) in edges.iter().enumerate() {
            if a == b || a >= h || b >= h || iota[a] != usize::MAX || iota[b] != usize::MAX {
                return Err(FatgraphError::Invalid(format!("edge {e} = ({a},{b}) is not a valid pairing")));
            }
            iota[a] = b;
            iota[b] = a;
            edge_of[a] = e;
            edge_of[b] = e;
        }
        if vertex_of.contains(&usize::MAX) {
            return Err(FatgraphError::Invalid("some half-edge is at no vertex".into()));
        }
        let g = Self { rotations, edges, sigma, iota, vertex_of, edge_of };
        if !g.is_connected() {
            return Err(FatgraphError::Invalid("graph is disconnected".into()));
        }
        Ok(g)
    }

    pub fn num_vertices(&self) -> usize {
        self.rotations.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_half_edges(&self) -> usize {
        self.sigma.len()
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn sigma(&self, h: usize) -> usize {
        self.sigma[h]
    }

    pub fn iota(&self, h: usize) -> usize {
        self.iota[h]
    }

    pub fn vertex_of(&self, h: usize) -> usize {
        self.vertex_of[h]
    }

    pub fn edge_of(&self, h: usize) -> usize {
        self.edge_of[h]
    }

    /// Endpoints of edge `e` as vertex ids.
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        let (a, b) = self.edges[e];
        (self.vertex_of[a], self.vertex_of[b])
    }

    fn is_connected(&self) -> bool {
        if self.rotations.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.num_vertices()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &h in &self.rotations[v] {
                let w = self.vertex_of[self.iota[h]];
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Orbits of `φ = σ ∘ ι`, each listed from its smallest half-edge.
    pub fn boundary_cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.num_half_edges()];
        let mut out = Vec::new();
        for start in 0..self.num_half_edges() {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                cyc.push(h);
                h = self.sigma[self.iota[h]];
            }
            out.push(cyc);
        }
        out
    }

    /// `V − E`.
    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64
    }

    /// Genus of the fattened surface: `V − E + #cycles = 2 − 2g`.
    pub fn genus(&self) -> usize {
        let two_g = 2 - self.euler_characteristic() - self.boundary_cycles().len() as i64;
        debug_assert!(two_g >= 0 && two_g % 2 == 0);
        (two_g / 2) as usize
    }

    /// `ℓ_i = Σ w(e)` over the half-edges of each boundary cycle.
    pub fn boundary_lengths(&self, w: &[f64]) -> Result<Vec<f64>, FatgraphError> {
        if w.len() != self.num_edges() || w.iter().any(|x| !(*x >= 0.0)) {
            return Err(FatgraphError::Invalid("weights must be nonnegative, one per edge".into()));
        }
        Ok(self.boundary_cycles().iter().map(|c| c.iter().map(|&h| w[self.edge_of[h]]).sum()).collect())
    }

    /// Contracts edge `e` and re-expands the merged vertex the other way:
    /// with `e` leaving `u` as `(h1, a1..ap)` and `v` as `(h2, c1..cq)`,
    /// the new vertices are `(h1, cq, a1..a(p−1))` and `(h2, ap, c1..c(q−1))`.
    /// On trivalent graphs dual to triangulations this is the dual of a flip.
    pub fn whitehead_move(&self, e: usize) -> Result<Self, FatgraphError> {
        if e >= self.num_edges() {
            return Err(FatgraphError::Invalid(format!("no edge {e}")));
        }
        let (h1, h2) = self.edges[e];
        let (u, v) = (self.vertex_of[h1], self.vertex_of[h2]);
        if u == v {
            return Err(FatgraphError::LoopEdge(e));
        }
        let from = |h: usize| {
            let rot = &self.rotations[self.vertex_of[h]];
            let k = rot.iter().position(|x| *x == h).expect("half-edge at its vertex");
            (1..rot.len()).map(|i| rot[(k + i) % rot.len()]).collect::<Vec<_>>()
        };
        let (a, c) = (from(h1), from(h2));
        let (p, q) = (a.len(), c.len());
        if p == 0 || q == 0 {
            return Err(FatgraphError::Invalid(format!("edge {e} ends at a univalent vertex")));
        }
        let mut nu = vec![h1, c[q - 1]];
        nu.extend_from_slice(&a[..p - 1]);
        let mut nv = vec![h2, a[p - 1]];
        nv.extend_from_slice(&c[..q - 1]);
        let mut rotations = self.rotations.clone();
        rotations[u] = nu;
        rotations[v] = nv;
        let relaxed = self.rotations.iter().any(|r| r.len() < 3);
        Self::new(rotations, self.edges.clone(), relaxed)
    }

    /// Isomorphism carrying edge `k` to edge `k` for every `k`, respecting
    /// rotations. Orientation of individual edges may be reversed.
    pub fn is_isomorphic_labeled(&self, other: &Self) -> bool {
        if self.num_edges() != other.num_edges()
            || self.num_vertices() != other.num_vertices()
            || self.num_edges() == 0
        {
            return false;
        }
        let (s0, _) = self.edges[0];
        [other.edges[0].0, other.edges[0].1].into_iter().any(|t0| {
            let mut map = vec![usize::MAX; self.num_half_edges()];
            let mut stack = vec![(s0, t0)];
            while let Some((a, b)) = stack.pop() {
                if map[a] != usize::MAX {
                    if map[a] != b {
                        return false;
                    }
                    continue;
                }
                if self.edge_of[a] != other.edge_of[b] {
                    return false;
                }
                map[a] = b;
                stack.push((self.sigma[a], other.sigma[b]));
                stack.push((self.iota[a], other.iota[b]));
            }
            let mut img: Vec<usize> = map.clone();
            img.sort_unstable();
            img.dedup();
            img.len() == map.len() && !map.contains(&usize::MAX)
        })
    }

    /// Recurrent part of the whole graph and its complement, as edge sets.
    pub fn recurrent_decomposition(&self) -> Result<(BTreeSet<usize>, BTreeSet<usize>), FatgraphError> {
        let all: BTreeSet<usize> = (0..self.num_edges()).collect();
        let rg = self.recurrent_part(&all)?;
        let ng = all.difference(&rg).copied().collect();
        Ok((rg, ng))
    }

    /// Recurrent part of the subgraph spanned by the edges in `subset`.
    pub fn recurrent_part(&self, subset: &BTreeSet<usize>) -> Result<BTreeSet<usize>, FatgraphError> {
        let edges: Vec<(usize, usize, usize)> = subset.iter().map(|&e| {
            let (a, b) = self.endpoints(e);
            (e, a, b)
        }).collect();
        recurrent_edges(&edges)
    }
}

/// Edges of a multigraph lying on some edge-simple closed path: consecutive
/// edges differ (cyclically) and no oriented edge repeats. A loop on its own
/// is such a path. Edges are `(label, tail, head)`.
pub fn recurrent_edges(edges: &[(usize, usize, usize)]) -> Result<BTreeSet<usize>, FatgraphError> {
    if edges.len() > MAX_RECURRENT_EDGES {
        return Err(FatgraphError::TooLarge(edges.len()));
    }
    // oriented edge 2k goes tail -> head, 2k+1 head -> tail
    let m = edges.len();
    let from = |o: usize| if o.is_multiple_of(2) { edges[o / 2].1 } else { edges[o / 2].2 };
    let to = |o: usize| if o.is_multiple_of(2) { edges[o / 2].2 } else { edges[o / 2].1 };
    let mut out_of: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for o in 0..2 * m {
        out_of.entry(from(o)).or_default().push(o);
    }
    let mut rec = vec![false; m];
    for k in 0..m {
        if edges[k].1 == edges[k].2 {
            rec[k] = true;
        }
    }
    fn dfs(
        start: usize,
        cur: usize,
        used: &mut [bool],
        path: &mut Vec<usize>,
        out_of: &BTreeMap<usize, Vec<usize>>,
        to: &dyn Fn(usize) -> usize,
        rec: &mut [bool],
    ) -> bool {
        let last = *path.last().expect("nonempty path");
        let head = to(last);
        if head == to(start ^ 1) && path.len() >= 2 && last / 2 != start / 2 {
            for o in path.iter() {
                rec[o / 2] = true;
            }
            return true;
        }
        let _ = cur;
        for &o in out_of.get(&head).into_iter().flatten() {
            if used[o] || o / 2 == last / 2 {
                continue;
            }
            used[o] = true;
            path.push(o);
            let found = dfs(start, o, used, path, out_of, to, rec);
            path.pop();
            used[o] = false;
            if found {
                return true;
            }
        }
        false
    }
    for k in 0..m {
        if rec[k] {
            continue;
        }
        for o in [2 * k, 2 * k + 1] {
            let mut used = vec![false; 2 * m];
            used[o] = true;
            let mut path = vec![o];
            if dfs(o, o, &mut used, &mut path, &out_of, &to, &mut rec) {
                break;
            }
        }
    }
    Ok((0..m).filter(|&k| rec[k]).map(|k| edges[k].0).collect())
}

/// The fatgraph dual to a triangulation: vertex `t` per triangle with
/// half-edge `3t + k` crossing side `k`, in counter-clockwise order, and
/// fatgraph edge `e` crossing triangulation edge `e`. Boundary sides get a
/// univalent stub vertex (bordered variant; valence is then relaxed).
pub fn dual_fatgraph(t: &IdealTriangulation) -> Fatgraph {
    let nt = t.num_triangles();
    let mut rotations: Vec<Vec<usize>> = (0..nt).map(|i| vec![3 * i, 3 * i + 1, 3 * i + 2]).collect();
    let mut next = 3 * nt;
    let mut edges = Vec::with_capacity(t.num_edges());
    for e in 0..t.num_edges() {
        let sides = t.edge_sides(e);
        let a = 3 * sides[0].triangle + sides[0].index;
        let b = match sides.get(1) {
            Some(s) => 3 * s.triangle + s.index,
            None => {
                rotations.push(vec![next]);
                next += 1;
                next - 1
            }
        };
        edges.push((a, b));
    }
    let relaxed = next > 3 * nt;
    Fatgraph::new(rotations, edges, relaxed).expect("dual of a valid triangulation")
}

/// What happened along a degeneration path.
#[derive(Debug, Clone, PartialEq)]
pub struct DegenerationReport {
    /// `(t, λ(t))` for each solved sample, in path order.
    pub samples: Vec<(f64, Vec<f64>)>,
    /// Edges whose coordinates go to zero.
    pub i_set: BTreeSet<EdgeId>,
    /// Edges whose lambda lengths exceed the threshold and keep growing.
    pub j_set: BTreeSet<EdgeId>,
    /// Recurrent part of the dual subgraph on `i_set`.
    pub recurrent_of_gi: BTreeSet<EdgeId>,
    pub j_subset_i: bool,
    pub recurrent_matches_j: bool,
    /// Index and reason of the first sample that violates the hypotheses;
    /// the path is cut there.
    pub flagged: Option<(usize, String)>,
}

/// Divergence threshold for lambda lengths.
pub const DIVERGENCE_THRESHOLD: f64 = 1e3;

/// Solves along `path` (pairs `(t, X(t))` ordered towards the limit) and
/// compares the diverging edges `J` with `I` and with `R(G_I)` on the dual.
/// An edge is in `J` when its last lambda length exceeds
/// [`DIVERGENCE_THRESHOLD`] and increased over the last three samples.
pub fn theorem17_harness(
    t: &IdealTriangulation,
    path: &[(f64, Vec<f64>)],
    i_set: &BTreeSet<EdgeId>,
    cfg: &SolverConfig,
) -> Result<DegenerationReport, FatgraphError> {
    let mut samples = Vec::new();
    let mut flagged = None;
    for (k, (time, x)) in path.iter().enumerate() {
        let violated = if x.iter().any(|v| *v < 0.0) {
            Some("negative coordinate")
        } else if !t.no_vanishing_cycle(x).map_err(SolverError::from)? {
            Some("vanishing cycle")
        } else {
            None
        };
        if let Some(reason) = violated {
            flagged = Some((k, String::from(reason)));
            break;
        }
        let sol = solver::solve_arithmetic_problem(t, x, cfg)?;
        samples.push((*time, sol.lambda));
    }
    let mut j_set = BTreeSet::new();
    if samples.len() >= 3 {
        let n = samples.len();
        for e in 0..t.num_edges() {
            let (a, b, c) = (samples[n - 3].1[e], samples[n - 2].1[e], samples[n - 1].1[e]);
            if c > DIVERGENCE_THRESHOLD && a < b && b < c {
                j_set.insert(e);
            }
        }
    }
    let g = dual_fatgraph(t);
    let recurrent_of_gi = g.recurrent_part(i_set)?;
    Ok(DegenerationReport {
        samples,
        j_subset_i: j_set.is_subset(i_set),
        recurrent_matches_j: recurrent_of_gi == j_set,
        i_set: i_set.clone(),
        j_set,
        recurrent_of_gi,
        flagged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    /// Two vertices, three parallel edges; `planar` picks opposite rotations.
    fn theta(planar: bool) -> Fatgraph {
        let v1 = if planar { vec![1, 5, 3] } else { vec![1, 3, 5] };
        Fatgraph::new(vec![vec![0, 2, 4], v1], vec![(0, 1), (2, 3), (4, 5)], false).unwrap()
    }

    #[test]
    fn theta_boundary_cycles() {
        let g = theta(true);
        assert_eq!(g.boundary_cycles().len(), 3);
        assert_eq!((g.euler_characteristic(), g.genus()), (-1, 0));
        assert_eq!(g.boundary_lengths(&[1.0; 3]).unwrap(), vec![2.0; 3]);
        let h = theta(false);
        assert_eq!(h.boundary_cycles().len(), 1);
        assert_eq!(h.genus(), 1);
        assert!(g.boundary_lengths(&[0.0; 3]).unwrap().iter().all(|l| *l == 0.0));
    }

    #[test]
    fn one_loop_is_rejected() {
        let g = Fatgraph::new(vec![vec![0, 1]], vec![(0, 1)], false);
        assert!(matches!(g, Err(FatgraphError::LowValence { .. })));
    }

    #[test]
    fn duals_match_triangulations() {
        let torus = dual_fatgraph(&IdealTriangulation::punctured_torus());
        assert_eq!((torus.num_vertices(), torus.boundary_cycles().len(), torus.genus()), (2, 1, 1));
        assert_eq!(torus.boundary_lengths(&[1.0; 3]).unwrap(), vec![6.0]);
        let sphere = dual_fatgraph(&IdealTriangulation::four_punctured_sphere());
        assert_eq!((sphere.boundary_cycles().len(), sphere.genus()), (4, 0));
        let hex = dual_fatgraph(&IdealTriangulation::polygon_fan(6));
        assert_eq!((hex.num_vertices(), hex.genus()), (10, 0));
    }

    #[test]
    fn whitehead_is_dual_to_flip() {
        for t in [IdealTriangulation::punctured_torus(), IdealTriangulation::four_punctured_sphere(), IdealTriangulation::polygon_fan(6)] {
            let lam = vec![ratio(1, 1); t.num_edges()];
            let g = dual_fatgraph(&t);
            for e in t.interior_edges() {
                let (t2, _) = t.flip_edge(&lam, e).unwrap();
                let moved = g.whitehead_move(e).unwrap();
                assert!(moved.is_isomorphic_labeled(&dual_fatgraph(&t2)), "edge {e}");
                assert!(moved.whitehead_move(e).unwrap().is_isomorphic_labeled(&g));
            }
        }
    }

    #[test]
    fn loop_edges_cannot_move() {
        let g = Fatgraph::new(vec![vec![0, 1, 2], vec![3]], vec![(0, 1), (2, 3)], true).unwrap();
        assert_eq!(g.whitehead_move(0), Err(FatgraphError::LoopEdge(0)));
    }

    #[test]
    fn recurrence_examples() {
        let (rg, ng) = theta(true).recurrent_decomposition().unwrap();
        assert_eq!(rg.len(), 3);
        assert!(ng.is_empty());
        // triangle 0-1-2 with a pendant edge 2-3
        let pend = recurrent_edges(&[(0, 0, 1), (1, 1, 2), (2, 2, 0), (3, 2, 3)]).unwrap();
        assert_eq!(pend, BTreeSet::from([0, 1, 2]));
        // two triangles joined by a bridge 2-3
        let bridge = recurrent_edges(&[(0, 0, 1), (1, 1, 2), (2, 2, 0), (3, 2, 3), (4, 3, 4), (5, 4, 5), (6, 5, 3)]).unwrap();
        assert_eq!(bridge.len(), 7);
        // a path has no recurrent edges
        assert!(recurrent_edges(&[(0, 0, 1), (1, 1, 2)]).unwrap().is_empty());
        let big: Vec<_> = (0..17).map(|k| (k, k, k + 1)).collect();
        assert!(matches!(recurrent_edges(&big), Err(FatgraphError::TooLarge(17))));
    }

    #[test]
    fn constant_path_is_consistent() {
        let t = IdealTriangulation::punctured_torus();
        let x = vec![core::f64::consts::SQRT_2; 3];
        let path: Vec<_> = (0..4).map(|k| (k as f64, x.clone())).collect();
        let rep = theorem17_harness(&t, &path, &BTreeSet::new(), &SolverConfig::default()).unwrap();
        assert!(rep.j_set.is_empty() && rep.j_subset_i && rep.recurrent_matches_j);
        assert!(rep.flagged.is_none());
    }

    #[test]
    fn vanishing_limit_is_flagged() {
        let t = IdealTriangulation::punctured_torus();
        let path = vec![(1.0, vec![1.0, 1.0, 1.0]), (0.0, vec![0.0, 0.0, 1.0])];
        let rep = theorem17_harness(&t, &path, &BTreeSet::from([0, 1]), &SolverConfig::default()).unwrap();
        assert_eq!(rep.flagged.as_ref().map(|f| f.0), Some(1));
        assert_eq!(rep.samples.len(), 1);
    }
}
