//! The cell of a decorated polygon: extreme edges of the convex hull of its
//! light-cone points, and the flip search that reaches the same cell.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use super::{EdgeId, EdgeValues, IdealTriangulation, TriangulationError, VertexId};
use crate::geom::{self, LightConePoint, MinkowskiVector};
use crate::math;
use crate::scalar::Scalar;

const HULL_REL_TOL: f64 = 1e-9;

/// Diagonals `(i, j)` (with `i < j`) of the polygon that are edges of the
/// faces of the convex hull of `points` seen from the origin. Diagonals whose
/// simplicial coordinate would vanish lie inside a face and are absent.
pub fn convex_hull_cell(points: &[LightConePoint]) -> Result<BTreeSet<(VertexId, VertexId)>, TriangulationError> {
    let n = points.len();
    if n < 4 {
        return Err(TriangulationError::InvalidInput(format!("need at least 4 points, got {n}")));
    }
    check_cyclic(points)?;
    let p: Vec<&MinkowskiVector> = points.iter().map(|q| q.vector()).collect();
    let scale = p.iter().map(|v| v.z).fold(0.0, f64::max);
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let nrm = p[j].sub(p[i]).cross(&p[k].sub(p[i]));
                let len = math::sqrt(nrm.euclid_dot(&nrm));
                let tol = HULL_REL_TOL * len * scale;
                if len <= HULL_REL_TOL * scale * scale {
                    return Err(TriangulationError::DegenerateHull(format!("points {i}, {j}, {k} are collinear")));
                }
                let s0 = -nrm.euclid_dot(p[i]);
                if math::abs(s0) <= tol {
                    return Err(TriangulationError::DegenerateHull(format!("plane through {i}, {j}, {k} meets the origin")));
                }
                let side = s0.signum();
                let mut face = Vec::new();
                let mut lower = true;
                for (m, q) in p.iter().enumerate() {
                    let sm = nrm.euclid_dot(&q.sub(p[i])) * side;
                    if sm > tol {
                        lower = false;
                        break;
                    }
                    if math::abs(sm) <= tol {
                        face.push(m);
                    }
                }
                if lower {
                    faces.insert(face);
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    for face in faces {
        for w in 0..face.len() {
            let (a, b) = (face[w], face[(w + 1) % face.len()]);
            let (a, b) = (a.min(b), a.max(b));
            if b - a != 1 && !(a == 0 && b == n - 1) {
                out.insert((a, b));
            }
        }
    }
    Ok(out)
}

fn check_cyclic(points: &[LightConePoint]) -> Result<(), TriangulationError> {
    let tau = 2.0 * core::f64::consts::PI;
    let angles: Vec<f64> = points.iter().map(|q| math::atan2(q.vector().y, q.vector().x)).collect();
    let mut total = 0.0;
    for w in 0..angles.len() {
        let mut d = angles[(w + 1) % angles.len()] - angles[w];
        while d <= 0.0 {
            d += tau;
        }
        total += d;
    }
    if math::abs(total - tau) > 1e-9 {
        return Err(TriangulationError::InvalidInput("points are not in cyclic order".into()));
    }
    Ok(())
}

/// Lambda lengths of a polygon triangulation induced by light-cone points
/// attached to its vertices.
pub fn decorate_polygon(t: &IdealTriangulation, points: &[LightConePoint]) -> Result<EdgeValues<f64>, TriangulationError> {
    if points.len() != t.num_vertices() {
        return Err(TriangulationError::LengthMismatch { expected: t.num_vertices(), got: points.len() });
    }
    (0..t.num_edges())
        .map(|e| {
            let (a, b) = t.edge_endpoints(e);
            geom::lambda_from_points(&points[a], &points[b]).map_err(|err| TriangulationError::InvalidInput(format!("{err}")))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DelaunayResult<T> {
    pub triangulation: IdealTriangulation,
    pub lambda: EdgeValues<T>,
    pub flips: Vec<EdgeId>,
    /// Interior edges with positive simplicial coordinate.
    pub arc_family: BTreeSet<EdgeId>,
}

impl IdealTriangulation {
    /// Flips an edge of most negative simplicial coordinate (lowest index on
    /// ties) until all coordinates are nonnegative. Gives up after
    /// `10 · #edges²` flips.
    pub fn delaunay_flip_search<T: Scalar>(&self, lambda: &[T]) -> Result<DelaunayResult<T>, TriangulationError> {
        let limit = 10 * self.num_edges() * self.num_edges();
        let mut t = self.clone();
        let mut lam = lambda.to_vec();
        let mut flips = Vec::new();
        loop {
            let coords = t.simplicial_coords(&lam)?;
            let mut worst: Option<EdgeId> = None;
            for e in t.interior_edges() {
                if coords[e].is_negative() && worst.is_none_or(|w| coords[e] < coords[w]) {
                    worst = Some(e);
                }
            }
            let Some(e) = worst else {
                let arc_family = t.interior_edges().filter(|&e| coords[e].is_positive()).collect();
                return Ok(DelaunayResult { triangulation: t, lambda: lam, flips, arc_family });
            };
            if flips.len() >= limit {
                return Err(TriangulationError::IterationLimit { limit, worst: coords[e].to_f64() });
            }
            let (t2, lam2) = t.flip_edge(&lam, e)?;
            t = t2;
            lam = lam2;
            flips.push(e);
        }
    }
}
