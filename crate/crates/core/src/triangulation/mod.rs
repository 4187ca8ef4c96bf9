//! Combinatorial ideal triangulations with lambda-length decorations.
//!
//! A triangulation is stored as a list of triangles, each an oriented
//! (counter-clockwise) triple of edge ids together with the vertex at each
//! corner. Side `k` of a triangle runs from corner `k` to corner `k + 1`;
//! the sector at corner `k` is opposite side `k + 1`. An edge appearing on
//! two sides is glued orientation-reversingly; an edge appearing once is a
//! boundary edge (bordered variant, e.g. a polygon).

mod cycles;
mod hull;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::geom::{self, LambdaTriple, QuadData};
use crate::math;
use crate::scalar::Scalar;

pub use cycles::{TriangleCycle, MAX_CYCLE_EDGES};
pub use hull::{convex_hull_cell, decorate_polygon, DelaunayResult};

pub type EdgeId = usize;
pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TriangulationError {
    #[error("bad gluing: {0}")]
    BadGluing(String),
    #[error("gluing is not orientation-coherent")]
    NonOrientable,
    #[error("triangulation is disconnected")]
    Disconnected,
    #[error("edge {0} cannot be flipped (boundary or self-folded)")]
    NotFlippable(EdgeId),
    #[error("invalid cycle of triangles: {0}")]
    InvalidCycle(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("unknown puncture {0}")]
    UnknownPuncture(VertexId),
    #[error("flip search did not settle within {limit} flips (most negative coordinate {worst})")]
    IterationLimit { limit: usize, worst: f64 },
    #[error("too many edges for exhaustive cycle enumeration ({0})")]
    TooLarge(usize),
    #[error("lambda lengths must be strictly positive (edge {0})")]
    NonPositive(EdgeId),
    #[error("expected {expected} edge values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("degenerate convex hull: {0}")]
    DegenerateHull(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// One side of one triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Side {
    pub triangle: usize,
    pub index: usize,
}

impl Side {
    pub const fn new(triangle: usize, index: usize) -> Self {
        Self { triangle, index }
    }
}

/// Topological data derived from a triangulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceTopology {
    pub genus: usize,
    /// Vertices not on the boundary.
    pub punctures: usize,
    pub boundary_components: usize,
    /// Vertices on the boundary (distinguished points).
    pub boundary_vertices: usize,
    pub euler_characteristic: i64,
}

/// Slot-based input description: each triangle lists three slot ids in
/// counter-clockwise order; `gluing` pairs slots. Unpaired slots are
/// boundary edges when `bordered` is set and an error otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GluingSpec {
    pub triangles: Vec<[u64; 3]>,
    /// `(slot, slot, twisted)`; a twisted pair is glued preserving direction.
    pub gluing: Vec<(u64, u64, bool)>,
    pub bordered: bool,
}

/// Per-edge values (lambda lengths or simplicial coordinates), indexed by edge id.
pub type EdgeValues<T> = Vec<T>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealTriangulation {
    tri_edges: Vec<[EdgeId; 3]>,
    tri_vertices: Vec<[VertexId; 3]>,
    edge_sides: Vec<Vec<Side>>,
    n_vertices: usize,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let n = self.0[c];
            self.0[c] = r;
            c = n;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl IdealTriangulation {
    /// Builds from edge-labeled triangles; vertices are derived from the gluing.
    pub fn from_triangles(tri_edges: Vec<[EdgeId; 3]>) -> Result<Self, TriangulationError> {
        let edge_sides = collect_sides(&tri_edges)?;
        let mut uf = UnionFind::new(3 * tri_edges.len());
        for sides in &edge_sides {
            if let [s, r] = sides[..] {
                // side k of s runs corner k -> k+1; glued reversed onto r
                uf.union(3 * s.triangle + s.index, 3 * r.triangle + (r.index + 1) % 3);
                uf.union(3 * s.triangle + (s.index + 1) % 3, 3 * r.triangle + r.index);
            }
        }
        let mut label = BTreeMap::new();
        let mut tri_vertices = Vec::with_capacity(tri_edges.len());
        for t in 0..tri_edges.len() {
            let mut vs = [0; 3];
            for (k, v) in vs.iter_mut().enumerate() {
                let root = uf.find(3 * t + k);
                let next = label.len();
                *v = *label.entry(root).or_insert(next);
            }
            tri_vertices.push(vs);
        }
        Self::from_parts(tri_edges, tri_vertices)
    }

    /// Builds from edge-labeled triangles with explicit corner vertices;
    /// the vertex labels must be consistent with the gluing.
    pub fn from_parts(
        tri_edges: Vec<[EdgeId; 3]>,
        tri_vertices: Vec<[VertexId; 3]>,
    ) -> Result<Self, TriangulationError> {
        if tri_edges.len() != tri_vertices.len() || tri_edges.is_empty() {
            return Err(TriangulationError::InvalidInput("triangle and vertex lists differ or are empty".into()));
        }
        let edge_sides = collect_sides(&tri_edges)?;
        let n_vertices = tri_vertices.iter().flatten().max().map_or(0, |m| m + 1);
        let mut seen = vec![false; n_vertices];
        tri_vertices.iter().flatten().for_each(|&v| seen[v] = true);
        if seen.iter().any(|s| !s) {
            return Err(TriangulationError::InvalidInput("vertex ids must be contiguous".into()));
        }
        let t = Self { tri_edges, tri_vertices, edge_sides, n_vertices };
        for (e, sides) in t.edge_sides.iter().enumerate() {
            if let [s, r] = sides[..] {
                let (a, b) = t.side_endpoints(s);
                let (c, d) = t.side_endpoints(r);
                if (a, b) != (d, c) {
                    return Err(TriangulationError::BadGluing(format!(
                        "edge {e}: corner vertices ({a},{b}) and ({c},{d}) do not match"
                    )));
                }
            }
        }
        t.check_connected()?;
        Ok(t)
    }

    /// Builds from a slot-level description. Edge ids are assigned to the
    /// gluing pairs in order, then to unpaired slots in order of appearance.
    pub fn from_gluing(spec: &GluingSpec) -> Result<Self, TriangulationError> {
        let mut slot_side = BTreeMap::new();
        for (t, slots) in spec.triangles.iter().enumerate() {
            for (k, s) in slots.iter().enumerate() {
                if slot_side.insert(*s, Side::new(t, k)).is_some() {
                    return Err(TriangulationError::BadGluing(format!("slot {s} listed twice")));
                }
            }
        }
        let mut edge_of = BTreeMap::new();
        for (i, &(a, b, twisted)) in spec.gluing.iter().enumerate() {
            for s in [a, b] {
                if !slot_side.contains_key(&s) {
                    return Err(TriangulationError::BadGluing(format!("unknown slot {s}")));
                }
                if edge_of.insert(s, i).is_some() || a == b {
                    return Err(TriangulationError::BadGluing(format!("slot {s} paired twice")));
                }
            }
            if twisted {
                return Err(TriangulationError::NonOrientable);
            }
        }
        let mut next = spec.gluing.len();
        let mut tri_edges = Vec::with_capacity(spec.triangles.len());
        for slots in &spec.triangles {
            let mut es = [0; 3];
            for (k, s) in slots.iter().enumerate() {
                es[k] = match edge_of.get(s) {
                    Some(e) => *e,
                    None if spec.bordered => {
                        next += 1;
                        next - 1
                    }
                    None => return Err(TriangulationError::BadGluing(format!("slot {s} is unpaired"))),
                };
            }
            tri_edges.push(es);
        }
        Self::from_triangles(tri_edges)
    }

    /// Builds from vertex triples (counter-clockwise); edges are identified
    /// by their endpoint pairs and numbered in order of first appearance.
    pub fn from_vertex_triangles(tris: &[[VertexId; 3]]) -> Result<Self, TriangulationError> {
        let mut ids = BTreeMap::new();
        let mut tri_edges = Vec::with_capacity(tris.len());
        for tri in tris {
            let mut es = [0; 3];
            for k in 0..3 {
                let (a, b) = (tri[k], tri[(k + 1) % 3]);
                let key = (a.min(b), a.max(b));
                let next = ids.len();
                es[k] = *ids.entry(key).or_insert(next);
            }
            tri_edges.push(es);
        }
        Self::from_parts(tri_edges, tris.to_vec())
    }

    /// Once-punctured torus: two triangles glued along edges 0, 1, 2.
    pub fn punctured_torus() -> Self {
        Self::from_triangles(vec![[0, 1, 2], [0, 1, 2]]).expect("standard torus gluing")
    }

    /// Four-times-punctured sphere as the boundary of a tetrahedron.
    pub fn four_punctured_sphere() -> Self {
        Self::from_vertex_triangles(&[[0, 2, 1], [0, 1, 3], [0, 3, 2], [1, 2, 3]]).expect("tetrahedron")
    }

    /// Triangulated `n`-gon with vertices `0..n` counter-clockwise. Boundary
    /// edge `(i, i+1)` has id `i`; diagonals get ids `n..` in the given order.
    pub fn polygon(n: usize, diagonals: &[(VertexId, VertexId)]) -> Result<Self, TriangulationError> {
        if n < 3 || diagonals.len() != n - 3 {
            return Err(TriangulationError::InvalidInput(format!("an {n}-gon needs {} diagonals", n.saturating_sub(3))));
        }
        let mut id = BTreeMap::new();
        for i in 0..n {
            let j = (i + 1) % n;
            id.insert((i.min(j), i.max(j)), i);
        }
        for (k, &(a, b)) in diagonals.iter().enumerate() {
            let key = (a.min(b), a.max(b));
            if a >= n || b >= n || key.1 - key.0 < 2 || (key.0 == 0 && key.1 == n - 1) {
                return Err(TriangulationError::InvalidInput(format!("({a},{b}) is not a diagonal")));
            }
            if id.insert(key, n + k).is_some() {
                return Err(TriangulationError::InvalidInput(format!("diagonal ({a},{b}) repeated")));
            }
        }
        let mut tri_edges = Vec::new();
        let mut tri_vertices = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if let (Some(&e0), Some(&e1), Some(&e2)) = (id.get(&(i, j)), id.get(&(j, k)), id.get(&(i, k))) {
                        tri_edges.push([e0, e1, e2]);
                        tri_vertices.push([i, j, k]);
                    }
                }
            }
        }
        if tri_edges.len() != n - 2 {
            return Err(TriangulationError::InvalidInput("diagonals cross".into()));
        }
        Self::from_parts(tri_edges, tri_vertices)
    }

    /// Fan triangulation of an `n`-gon from vertex 0.
    pub fn polygon_fan(n: usize) -> Self {
        let diags: Vec<_> = (2..n.saturating_sub(1)).map(|j| (0, j)).collect();
        Self::polygon(n, &diags).expect("fan is a triangulation")
    }

    pub fn num_triangles(&self) -> usize {
        self.tri_edges.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edge_sides.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn triangle_edges(&self, t: usize) -> [EdgeId; 3] {
        self.tri_edges[t]
    }

    pub fn triangle_vertices(&self, t: usize) -> [VertexId; 3] {
        self.tri_vertices[t]
    }

    pub fn triangles(&self) -> &[[EdgeId; 3]] {
        &self.tri_edges
    }

    pub fn edge_sides(&self, e: EdgeId) -> &[Side] {
        &self.edge_sides[e]
    }

    pub fn edge_at(&self, s: Side) -> EdgeId {
        self.tri_edges[s.triangle][s.index]
    }

    pub fn is_boundary(&self, e: EdgeId) -> bool {
        self.edge_sides[e].len() == 1
    }

    pub fn interior_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.num_edges()).filter(|&e| !self.is_boundary(e))
    }

    /// The side glued to `s`, if `s` is not on the boundary.
    pub fn partner(&self, s: Side) -> Option<Side> {
        let sides = &self.edge_sides[self.edge_at(s)];
        sides.iter().copied().find(|&r| r != s).filter(|_| sides.len() == 2)
    }

    /// Vertices at the start and end of a side.
    pub fn side_endpoints(&self, s: Side) -> (VertexId, VertexId) {
        let vs = self.tri_vertices[s.triangle];
        (vs[s.index], vs[(s.index + 1) % 3])
    }

    pub fn edge_endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.side_endpoints(self.edge_sides[e][0])
    }

    pub fn boundary_vertices(&self) -> Vec<bool> {
        let mut on = vec![false; self.n_vertices];
        for e in 0..self.num_edges() {
            if self.is_boundary(e) {
                let (a, b) = self.edge_endpoints(e);
                on[a] = true;
                on[b] = true;
            }
        }
        on
    }

    pub fn topology(&self) -> SurfaceTopology {
        let v = self.n_vertices as i64;
        let e = self.num_edges() as i64;
        let f = self.num_triangles() as i64;
        let chi = v - e + f;
        let on = self.boundary_vertices();
        let mut uf = UnionFind::new(self.n_vertices);
        for e in 0..self.num_edges() {
            if self.is_boundary(e) {
                let (a, b) = self.edge_endpoints(e);
                uf.union(a, b);
            }
        }
        let mut roots: Vec<usize> = (0..self.n_vertices).filter(|&x| on[x]).map(|x| uf.find(x)).collect();
        roots.sort_unstable();
        roots.dedup();
        let r = roots.len() as i64;
        let two_g = 2 - r - chi;
        debug_assert!(two_g >= 0 && two_g % 2 == 0, "non-integral genus");
        SurfaceTopology {
            genus: (two_g / 2) as usize,
            punctures: on.iter().filter(|b| !**b).count(),
            boundary_components: r as usize,
            boundary_vertices: on.iter().filter(|b| **b).count(),
            euler_characteristic: chi,
        }
    }

    fn check_connected(&self) -> Result<(), TriangulationError> {
        let mut uf = UnionFind::new(self.num_triangles());
        for sides in &self.edge_sides {
            if let [s, r] = sides[..] {
                uf.union(s.triangle, r.triangle);
            }
        }
        if (0..self.num_triangles()).all(|t| uf.find(t) == 0) {
            Ok(())
        } else {
            Err(TriangulationError::Disconnected)
        }
    }

    fn check_len<T>(&self, values: &[T]) -> Result<(), TriangulationError> {
        if values.len() == self.num_edges() {
            Ok(())
        } else {
            Err(TriangulationError::LengthMismatch { expected: self.num_edges(), got: values.len() })
        }
    }

    /// Checks that a decoration has one strictly positive value per edge.
    pub fn check_decoration<T: Scalar>(&self, lambda: &[T]) -> Result<(), TriangulationError> {
        self.check_len(lambda)?;
        match lambda.iter().position(|l| !l.is_positive()) {
            Some(e) => Err(TriangulationError::NonPositive(e)),
            None => Ok(()),
        }
    }

    /// Lambda lengths of triangle `t` as `(side k, side k+1, side k+2)`.
    fn side_lambdas<T: Scalar>(&self, lambda: &[T], s: Side) -> (T, T, T) {
        let es = self.tri_edges[s.triangle];
        (
            lambda[es[s.index]].clone(),
            lambda[es[(s.index + 1) % 3]].clone(),
            lambda[es[(s.index + 2) % 3]].clone(),
        )
    }

    /// Contribution of one flanking side to the simplicial coordinate of its edge.
    pub fn side_contribution<T: Scalar>(&self, lambda: &[T], s: Side) -> T {
        let (e, a, b) = self.side_lambdas(lambda, s);
        geom::one_sided_coordinate(&a, &b, &e)
    }

    /// Simplicial coordinates of every edge. Boundary edges use the doubled
    /// one-sided formula; an edge flanked twice by one triangle gets both
    /// corner contributions.
    pub fn simplicial_coords<T: Scalar>(&self, lambda: &[T]) -> Result<EdgeValues<T>, TriangulationError> {
        self.check_decoration(lambda)?;
        Ok(self
            .edge_sides
            .iter()
            .map(|sides| match sides[..] {
                [s] => T::from_i64(2) * self.side_contribution(lambda, s),
                [s, r] => self.side_contribution(lambda, s) + self.side_contribution(lambda, r),
                _ => unreachable!("edges have one or two sides"),
            })
            .collect())
    }

    /// h-length of the sector at corner `c` of triangle `t`.
    pub fn sector_h_length<T: Scalar>(&self, lambda: &[T], t: usize, corner: usize) -> T {
        let es = self.tri_edges[t];
        let opp = lambda[es[(corner + 1) % 3]].clone();
        opp / (lambda[es[corner]].clone() * lambda[es[(corner + 2) % 3]].clone())
    }

    /// The quadrilateral around an interior edge, in [`QuadData`] labeling,
    /// along with its two sides `(s, r)`. Rejects boundary and self-folded edges.
    pub fn quad_around<T: Scalar>(&self, lambda: &[T], e: EdgeId) -> Result<(QuadData<T>, Side, Side), TriangulationError> {
        let (s, r) = match self.edge_sides[e][..] {
            [s, r] if s.triangle != r.triangle => (s, r),
            _ => return Err(TriangulationError::NotFlippable(e)),
        };
        // Quad corners ccw: v_s, apex_r, v_{s+1}, apex_s
        let es = self.tri_edges[s.triangle];
        let er = self.tri_edges[r.triangle];
        let q = QuadData {
            a: lambda[er[(r.index + 1) % 3]].clone(),
            b: lambda[er[(r.index + 2) % 3]].clone(),
            c: lambda[es[(s.index + 1) % 3]].clone(),
            d: lambda[es[(s.index + 2) % 3]].clone(),
            e: lambda[e].clone(),
        };
        Ok((q, s, r))
    }

    /// Replaces the diagonal `e` of its quadrilateral by the other diagonal,
    /// which keeps the id `e` and receives the Ptolemy lambda length.
    pub fn flip_edge<T: Scalar>(&self, lambda: &[T], e: EdgeId) -> Result<(Self, EdgeValues<T>), TriangulationError> {
        self.check_decoration(lambda)?;
        let (q, s, r) = self.quad_around(lambda, e)?;
        let (ts, k) = (s.triangle, s.index);
        let (tr, kr) = (r.triangle, r.index);
        let es = self.tri_edges[ts];
        let er = self.tri_edges[tr];
        let vs = self.tri_vertices[ts];
        let vr = self.tri_vertices[tr];
        let apex_s = vs[(k + 2) % 3];
        let apex_r = vr[(kr + 2) % 3];
        let mut tri_edges = self.tri_edges.clone();
        let mut tri_vertices = self.tri_vertices.clone();
        tri_edges[ts] = [es[(k + 2) % 3], er[(kr + 1) % 3], e];
        tri_vertices[ts] = [apex_s, vs[k], apex_r];
        tri_edges[tr] = [er[(kr + 2) % 3], es[(k + 1) % 3], e];
        tri_vertices[tr] = [apex_r, vs[(k + 1) % 3], apex_s];
        let mut lam = lambda.to_vec();
        lam[e] = q.ptolemy_flip();
        let edge_sides = collect_sides(&tri_edges)?;
        Ok((Self { tri_edges, tri_vertices, edge_sides, n_vertices: self.n_vertices }, lam))
    }

    /// Multiplies each lambda length by `factor` once per end of the edge at `p`.
    pub fn scale_at_vertex<T: Scalar>(&self, lambda: &[T], p: VertexId, factor: T) -> Result<EdgeValues<T>, TriangulationError> {
        self.check_decoration(lambda)?;
        if p >= self.n_vertices {
            return Err(TriangulationError::UnknownPuncture(p));
        }
        Ok(lambda
            .iter()
            .enumerate()
            .map(|(e, l)| {
                let (a, b) = self.edge_endpoints(e);
                let mut out = l.clone();
                for end in [a, b] {
                    if end == p {
                        out = out * factor.clone();
                    }
                }
                out
            })
            .collect())
    }

    /// Moves the horocycle at `p`: lambda lengths pick up `sqrt(s)` per end at `p`.
    pub fn rescale_decoration(&self, lambda: &[f64], p: VertexId, s: f64) -> Result<EdgeValues<f64>, TriangulationError> {
        if !(s > 0.0) {
            return Err(TriangulationError::InvalidInput("rescaling factor must be positive".into()));
        }
        self.scale_at_vertex(lambda, p, math::sqrt(s))
    }

    /// Coefficients of the Weil–Petersson two-form in the basis
    /// `dlog λ_e`: entry `(i, j)` is the coefficient of `dlog λ_i ∧ dlog λ_j`.
    /// Each triangle with edges `(e0, e1, e2)` in counter-clockwise order
    /// contributes `−2` to `(e0,e1)`, `(e1,e2)`, `(e2,e0)`.
    pub fn wp_form<T: Scalar>(&self, lambda: &[T]) -> Result<Vec<Vec<i64>>, TriangulationError> {
        self.check_decoration(lambda)?;
        let n = self.num_edges();
        let mut m = vec![vec![0i64; n]; n];
        for es in &self.tri_edges {
            for k in 0..3 {
                let (i, j) = (es[k], es[(k + 1) % 3]);
                if i != j {
                    m[i][j] -= 2;
                    m[j][i] += 2;
                }
            }
        }
        Ok(m)
    }

    /// Whether every triangle satisfies the three strict triangle inequalities.
    pub fn triangle_inequalities_hold<T: Scalar>(&self, lambda: &[T]) -> bool {
        self.tri_edges.iter().all(|es| {
            let t = LambdaTriple { l0: lambda[es[0]].clone(), l1: lambda[es[1]].clone(), l2: lambda[es[2]].clone() };
            geom::equidistant_exists(&t)
        })
    }

    /// Renames edges: edge `e` becomes `perm[e]`. Values move along.
    pub fn relabel_edges<T: Clone>(&self, perm: &[EdgeId], lambda: &[T]) -> Result<(Self, EdgeValues<T>), TriangulationError> {
        let n = self.num_edges();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || core::mem::replace(&mut seen[p], true)) {
            return Err(TriangulationError::InvalidInput("not a permutation of the edges".into()));
        }
        self.check_len(lambda)?;
        let tri_edges: Vec<[EdgeId; 3]> = self.tri_edges.iter().map(|es| es.map(|e| perm[e])).collect();
        let mut lam = lambda.to_vec();
        for (e, l) in lambda.iter().enumerate() {
            lam[perm[e]] = l.clone();
        }
        let edge_sides = collect_sides(&tri_edges)?;
        Ok((Self { tri_edges, tri_vertices: self.tri_vertices.clone(), edge_sides, n_vertices: self.n_vertices }, lam))
    }

    /// Triangles up to cyclic rotation and reordering; two triangulations are
    /// the same labeled triangulation iff their canonical forms agree.
    pub fn canonical_form(&self) -> Vec<[(EdgeId, VertexId); 3]> {
        let mut out: Vec<[(EdgeId, VertexId); 3]> = self
            .tri_edges
            .iter()
            .zip(&self.tri_vertices)
            .map(|(es, vs)| {
                (0..3)
                    .map(|r| [(es[r], vs[r]), (es[(r + 1) % 3], vs[(r + 1) % 3]), (es[(r + 2) % 3], vs[(r + 2) % 3])])
                    .min()
                    .expect("three rotations")
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn same_as(&self, other: &Self) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    /// Unordered vertex pairs of the interior edges.
    pub fn diagonal_pairs(&self, edges: impl IntoIterator<Item = EdgeId>) -> alloc::collections::BTreeSet<(VertexId, VertexId)> {
        edges
            .into_iter()
            .map(|e| {
                let (a, b) = self.edge_endpoints(e);
                (a.min(b), a.max(b))
            })
            .collect()
    }
}

fn collect_sides(tri_edges: &[[EdgeId; 3]]) -> Result<Vec<Vec<Side>>, TriangulationError> {
    let n_edges = tri_edges.iter().flatten().max().map_or(0, |m| m + 1);
    let mut sides = vec![Vec::new(); n_edges];
    for (t, es) in tri_edges.iter().enumerate() {
        for (k, &e) in es.iter().enumerate() {
            sides[e].push(Side::new(t, k));
        }
    }
    for (e, s) in sides.iter().enumerate() {
        match s.len() {
            1 | 2 => {}
            0 => return Err(TriangulationError::BadGluing(format!("edge {e} is unused"))),
            n => return Err(TriangulationError::BadGluing(format!("edge {e} appears on {n} sides"))),
        }
    }
    Ok(sides)
}

#[cfg(test)]
mod tests;
