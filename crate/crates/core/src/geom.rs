//! Minkowski-space model of decorated ideal geometry.
//!
//! Horocycles in the hyperboloid model correspond to points of the open
//! positive light cone `L+ = {<u,u> = 0, z > 0}` where
//! `<u,v> = u.x v.x + u.y v.y - u.z v.z`. The lambda length between two
//! horocycles is `sqrt(-<u0,u1>)`; every formula below that is a rational
//! function of lambda lengths is generic over [`Scalar`].

use thiserror::Error;

use crate::math;
use crate::scalar::Scalar;

/// Tolerance for light-cone membership of floating inputs (relative to `z²`).
pub const TOL_LIGHT_CONE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("vector is not on the light cone (<v,v> = {0})")]
    NotOnLightCone(f64),
    #[error("light-cone vector must have z > 0")]
    NotFutureDirected,
    #[error("points lie on the same light ray (<u0,u1> = {0})")]
    DegenerateRay(f64),
    #[error("lambda lengths must be strictly positive")]
    NonPositive,
    #[error("fourth point of the quadrilateral could not be solved for")]
    NonRealizable,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinkowskiVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl MinkowskiVector {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn inner(&self, other: &Self) -> f64 {
        minkowski_inner(self, other)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }

    /// Euclidean cross product.
    pub fn cross(&self, o: &Self) -> Self {
        Self::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn euclid_dot(&self, o: &Self) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    /// `J v` with `J = diag(1, 1, -1)`, so `<u,v> = u · Jv`.
    fn lowered(&self) -> Self {
        Self::new(self.x, self.y, -self.z)
    }
}

/// `det[a; b; c]` with the vectors as rows.
pub fn det3(a: &MinkowskiVector, b: &MinkowskiVector, c: &MinkowskiVector) -> f64 {
    a.euclid_dot(&b.cross(c))
}

pub fn minkowski_inner(u: &MinkowskiVector, v: &MinkowskiVector) -> f64 {
    u.x * v.x + u.y * v.y - u.z * v.z
}

/// A point of the open positive light cone, standing for a horocycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LightConePoint(MinkowskiVector);

impl LightConePoint {
    pub fn new(v: MinkowskiVector) -> Result<Self, GeomError> {
        if !(v.z > 0.0) {
            return Err(GeomError::NotFutureDirected);
        }
        let q = v.inner(&v);
        if math::abs(q) > TOL_LIGHT_CONE * (v.z * v.z).max(1.0) {
            return Err(GeomError::NotOnLightCone(q));
        }
        Ok(Self(v))
    }

    /// The light-cone point over the unit circle at angle `theta`, scaled by `r > 0`.
    pub fn from_angle(theta: f64, r: f64) -> Self {
        Self(MinkowskiVector::new(r * math::cos(theta), r * math::sin(theta), r))
    }

    pub fn vector(&self) -> &MinkowskiVector {
        &self.0
    }

    pub fn scaled(&self, s: f64) -> Result<Self, GeomError> {
        Self::new(self.0.scale(s))
    }
}

pub fn lambda_from_points(u0: &LightConePoint, u1: &LightConePoint) -> Result<f64, GeomError> {
    let p = u0.0.inner(&u1.0);
    let scale = u0.0.z * u1.0.z;
    if p >= -TOL_LIGHT_CONE * scale {
        return Err(GeomError::DegenerateRay(p));
    }
    Ok(math::sqrt(-p))
}

/// `sqrt(2 exp(delta))` for the signed distance `delta` between horocycles.
pub fn lambda_from_distance(delta: f64) -> f64 {
    math::sqrt(2.0 * math::exp(delta))
}

/// Lambda lengths of a decorated triangle; `l_i` is the edge opposite vertex `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaTriple<T> {
    pub l0: T,
    pub l1: T,
    pub l2: T,
}

impl<T: Scalar> LambdaTriple<T> {
    pub fn new(l0: T, l1: T, l2: T) -> Result<Self, GeomError> {
        if l0.is_positive() && l1.is_positive() && l2.is_positive() {
            Ok(Self { l0, l1, l2 })
        } else {
            Err(GeomError::NonPositive)
        }
    }

    pub fn as_array(&self) -> [T; 3] {
        [self.l0.clone(), self.l1.clone(), self.l2.clone()]
    }
}

/// h-lengths of the three sectors; entry `i` is the sector opposite `l_i`,
/// equal to `l_i / (l_j l_k)`.
pub fn h_lengths<T: Scalar>(t: &LambdaTriple<T>) -> [T; 3] {
    let [a, b, c] = t.as_array();
    [
        a.clone() / (b.clone() * c.clone()),
        b.clone() / (a.clone() * c.clone()),
        c.clone() / (a * b),
    ]
}

/// Whether a point equidistant to the three horocycles exists, i.e. whether
/// all three strict triangle inequalities hold.
pub fn equidistant_exists<T: Scalar>(t: &LambdaTriple<T>) -> bool {
    let [a, b, c] = t.as_array();
    (b.clone() + c.clone() - a.clone()).is_positive()
        && (a.clone() + c.clone() - b.clone()).is_positive()
        && (a + b - c).is_positive()
}

/// A decorated quadrilateral with vertices `v0..v3` in cyclic order:
/// `a = v0v1`, `b = v1v2`, `c = v2v3`, `d = v3v0` and diagonal `e = v0v2`.
/// The triangles flanking `e` are `(a, b, e)` and `(c, d, e)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadData<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    pub e: T,
}

/// Sector h-lengths around the diagonal of a [`QuadData`]. `alpha`, `beta`
/// sit at the ends of `e` in triangle `(a,b,e)` (opposite `a` and `b`),
/// `epsilon` is opposite `e`; likewise `gamma`, `delta`, `phi` in `(c,d,e)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadSectors<T> {
    pub alpha: T,
    pub beta: T,
    pub epsilon: T,
    pub gamma: T,
    pub delta: T,
    pub phi: T,
}

impl<T: Scalar> QuadData<T> {
    pub fn new(a: T, b: T, c: T, d: T, e: T) -> Result<Self, GeomError> {
        if [&a, &b, &c, &d, &e].iter().all(|v| v.is_positive()) {
            Ok(Self { a, b, c, d, e })
        } else {
            Err(GeomError::NonPositive)
        }
    }

    /// Lambda length of the other diagonal `f = v1v3`.
    pub fn ptolemy_flip(&self) -> T {
        (self.a.clone() * self.c.clone() + self.b.clone() * self.d.clone()) / self.e.clone()
    }

    /// The same quadrilateral triangulated by `f`, relabeled so that its
    /// vertices start at `v1`. Flipping it again returns `e`.
    pub fn flipped(&self) -> Self {
        Self {
            a: self.b.clone(),
            b: self.c.clone(),
            c: self.d.clone(),
            d: self.a.clone(),
            e: self.ptolemy_flip(),
        }
    }

    pub fn cross_ratio(&self) -> T {
        (self.a.clone() * self.c.clone()) / (self.b.clone() * self.d.clone())
    }

    pub fn sectors(&self) -> QuadSectors<T> {
        let [alpha, beta, epsilon] =
            h_lengths(&LambdaTriple { l0: self.a.clone(), l1: self.b.clone(), l2: self.e.clone() });
        let [gamma, delta, phi] =
            h_lengths(&LambdaTriple { l0: self.c.clone(), l1: self.d.clone(), l2: self.e.clone() });
        QuadSectors { alpha, beta, epsilon, gamma, delta, phi }
    }

    pub fn simplicial_coordinate(&self) -> T {
        one_sided_coordinate(&self.a, &self.b, &self.e) + one_sided_coordinate(&self.c, &self.d, &self.e)
    }
}

/// Contribution `(a² + b² − e²) / (a b e)` of one flanking triangle.
pub fn one_sided_coordinate<T: Scalar>(a: &T, b: &T, e: &T) -> T {
    (a.square() + b.square() - e.square()) / (a.clone() * b.clone() * e.clone())
}

/// Simplicial coordinate of an edge that bounds a triangle on only one side.
pub fn boundary_simplicial_coordinate<T: Scalar>(a: &T, b: &T, e: &T) -> T {
    T::from_i64(2) * one_sided_coordinate(a, b, e)
}

/// `ln(αβ / (γδ))`; zero exactly when the coupling equation holds.
pub fn coupling_residual(alpha: f64, beta: f64, gamma: f64, delta: f64) -> f64 {
    math::ln(alpha) + math::ln(beta) - math::ln(gamma) - math::ln(delta)
}

/// Places a decorated triangle in normal position: `u0` on the ray of
/// `(1,0,1)`, `u1` on the ray of `(-1,0,1)`, both with the same scale, and
/// `u2` with `y > 0`. `λ(u1,u2) = l0`, `λ(u0,u2) = l1`, `λ(u0,u1) = l2`.
pub fn realize_triangle(t: &LambdaTriple<f64>) -> [LightConePoint; 3] {
    let s = t.l2 / core::f64::consts::SQRT_2;
    let u0 = MinkowskiVector::new(s, 0.0, s);
    let u1 = MinkowskiVector::new(-s, 0.0, s);
    // z - x = l1² / s and z + x = l0² / s
    let zm = t.l1 * t.l1 / s;
    let zp = t.l0 * t.l0 / s;
    let u2 = MinkowskiVector::new((zp - zm) / 2.0, math::sqrt(zm * zp), (zp + zm) / 2.0);
    [LightConePoint(u0), LightConePoint(u1), LightConePoint(u2)]
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealizedQuad {
    pub points: [LightConePoint; 4],
    /// `det(v1 − v0, v2 − v0, v3 − v0) / 6`.
    pub signed_volume: f64,
}

/// Realizes all five lambda lengths of a quadrilateral on the light cone.
/// The triangle `(v0, v1, v2)` is placed by [`realize_triangle`]; `v3` is
/// the solution on the far side of the diagonal from `v1`.
pub fn realize_quadrilateral(q: &QuadData<f64>) -> Result<RealizedQuad, GeomError> {
    let [v0, v1, v2] = realize_triangle(&LambdaTriple { l0: q.b, l1: q.e, l2: q.a });
    let (p0, p1, p2) = (v0.0, v1.0, v2.0);
    let (r0, r2) = (p0.lowered(), p2.lowered());
    // v3 = α r0 + β r2 + t k with r0·v3 = −d², r2·v3 = −c²
    let (g00, g02, g22) = (r0.euclid_dot(&r0), r0.euclid_dot(&r2), r2.euclid_dot(&r2));
    let det = g00 * g22 - g02 * g02;
    if math::abs(det) <= 1e-300 {
        return Err(GeomError::NonRealizable);
    }
    let (rhs0, rhs2) = (-q.d * q.d, -q.c * q.c);
    let alpha = (rhs0 * g22 - rhs2 * g02) / det;
    let beta = (g00 * rhs2 - g02 * rhs0) / det;
    let p = r0.scale(alpha).add(&r2.scale(beta));
    let k = r0.cross(&r2);
    let (qa, qb, qc) = (k.inner(&k), 2.0 * p.inner(&k), p.inner(&p));
    let disc = qb * qb - 4.0 * qa * qc;
    if !(disc >= 0.0) || qa == 0.0 {
        return Err(GeomError::NonRealizable);
    }
    let side_v1 = det3(&p0, &p2, &p1);
    let root = math::sqrt(disc);
    let v3 = [(-qb + root) / (2.0 * qa), (-qb - root) / (2.0 * qa)]
        .into_iter()
        .map(|t| p.add(&k.scale(t)))
        .find(|v| v.z > 0.0 && det3(&p0, &p2, v) * side_v1 < 0.0)
        .ok_or(GeomError::NonRealizable)?;
    let v3 = LightConePoint::new(v3).map_err(|_| GeomError::NonRealizable)?;
    let signed_volume = det3(&p1.sub(&p0), &p2.sub(&p0), &v3.0.sub(&p0)) / 6.0;
    Ok(RealizedQuad { points: [v0, v1, v2, v3], signed_volume })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Rational};
    use core::f64::consts::SQRT_2;

    fn v(x: f64, y: f64, z: f64) -> MinkowskiVector {
        MinkowskiVector::new(x, y, z)
    }

    fn lc(x: f64, y: f64, z: f64) -> LightConePoint {
        LightConePoint::new(v(x, y, z)).unwrap()
    }

    #[test]
    fn inner_product_examples() {
        assert_eq!(minkowski_inner(&v(1., 0., 1.), &v(1., 0., 1.)), 0.0);
        assert_eq!(minkowski_inner(&v(0., 0., 1.), &v(0., 0., 1.)), -1.0);
        assert_eq!(minkowski_inner(&v(1., 0., 1.), &v(-1., 0., 1.)), -2.0);
    }

    #[test]
    fn lambda_from_points_examples() {
        let l = lambda_from_points(&lc(1., 0., 1.), &lc(-1., 0., 1.)).unwrap();
        assert!((l - SQRT_2).abs() < 1e-15);
        // (0,2,2): z - x = 2 and x + z = 2 against (1,0,1) gives <u0,u1> = -2
        let l = lambda_from_points(&lc(1., 0., 1.), &lc(0., 2., 2.)).unwrap();
        assert!((l - SQRT_2).abs() < 1e-15);
        let base = lambda_from_points(&lc(1., 0., 1.), &lc(0., 2., 2.)).unwrap();
        let scaled = lambda_from_points(&lc(1., 0., 1.), &lc(0., 2., 2.).scaled(9.0).unwrap()).unwrap();
        assert!((scaled - 3.0 * base).abs() < 1e-12);
    }

    #[test]
    fn same_ray_is_degenerate() {
        let err = lambda_from_points(&lc(1., 0., 1.), &lc(2., 0., 2.)).unwrap_err();
        assert!(matches!(err, GeomError::DegenerateRay(_)));
    }

    #[test]
    fn light_cone_validation() {
        assert!(matches!(LightConePoint::new(v(1., 0., -1.)), Err(GeomError::NotFutureDirected)));
        assert!(matches!(LightConePoint::new(v(0., 0., 1.)), Err(GeomError::NotOnLightCone(_))));
    }

    #[test]
    fn lambda_from_distance_examples() {
        assert!((lambda_from_distance(0.0) - SQRT_2).abs() < 1e-15);
        assert!((lambda_from_distance(2.0 * core::f64::consts::LN_2) - 2.0 * SQRT_2).abs() < 1e-14);
        let grid: std::vec::Vec<f64> = (0..200).map(|i| -40.0 + 0.25 * i as f64).collect();
        for w in grid.windows(2) {
            assert!(lambda_from_distance(w[0]) < lambda_from_distance(w[1]));
        }
        assert!(lambda_from_distance(-700.0) < 1e-150);
    }

    #[test]
    fn h_length_examples() {
        let ones = LambdaTriple::new(ratio(1, 1), ratio(1, 1), ratio(1, 1)).unwrap();
        assert_eq!(h_lengths(&ones), [ratio(1, 1), ratio(1, 1), ratio(1, 1)]);
        let t = LambdaTriple::new(ratio(3, 1), ratio(4, 1), ratio(5, 1)).unwrap();
        assert_eq!(h_lengths(&t), [ratio(3, 20), ratio(4, 15), ratio(5, 12)]);
        let r2 = LambdaTriple::new(SQRT_2, SQRT_2, SQRT_2).unwrap();
        for h in h_lengths(&r2) {
            assert!((h - 1.0 / SQRT_2).abs() < 1e-15);
        }
    }

    #[test]
    fn equidistant_examples() {
        let t = |a, b, c| LambdaTriple::new(ratio(a, 1), ratio(b, 1), ratio(c, 1)).unwrap();
        assert!(equidistant_exists(&t(1, 1, 1)));
        assert!(!equidistant_exists(&t(1, 1, 3)));
        assert!(!equidistant_exists(&t(1, 1, 2)));
    }

    fn quad(a: i64, b: i64, c: i64, d: i64, e: i64) -> QuadData<Rational> {
        QuadData::new(ratio(a, 1), ratio(b, 1), ratio(c, 1), ratio(d, 1), ratio(e, 1)).unwrap()
    }

    #[test]
    fn ptolemy_examples() {
        assert_eq!(quad(1, 1, 1, 1, 1).ptolemy_flip(), ratio(2, 1));
        assert_eq!(quad(1, 2, 3, 4, 5).ptolemy_flip(), ratio(11, 5));
        let q = QuadData::new(ratio(3, 7), ratio(5, 2), ratio(9, 4), ratio(1, 3), ratio(6, 5)).unwrap();
        assert_eq!(q.flipped().ptolemy_flip(), q.e);
        assert_eq!(q.flipped().flipped(), QuadData { a: q.c.clone(), b: q.d.clone(), c: q.a.clone(), d: q.b.clone(), e: q.e.clone() });
    }

    #[test]
    fn cross_ratio_examples() {
        assert_eq!(quad(1, 1, 1, 1, 1).cross_ratio(), ratio(1, 1));
        assert_eq!(quad(1, 2, 3, 4, 7).cross_ratio(), ratio(3, 8));
        let q = quad(1, 2, 3, 4, 7);
        let s = ratio(5, 3);
        let r = QuadData::new(q.a.clone() * s.clone(), q.b.clone() * s, q.c.clone(), q.d.clone(), q.e.clone()).unwrap();
        assert_eq!(r.cross_ratio(), q.cross_ratio());
    }

    #[test]
    fn simplicial_coordinate_examples() {
        assert_eq!(quad(1, 1, 1, 1, 1).simplicial_coordinate(), ratio(2, 1));
        assert_eq!(quad(1, 1, 1, 1, 2).simplicial_coordinate(), ratio(-2, 1));
        assert_eq!(boundary_simplicial_coordinate(&ratio(1, 1), &ratio(1, 1), &ratio(1, 1)), ratio(2, 1));
        assert_eq!(boundary_simplicial_coordinate(&ratio(1, 1), &ratio(1, 1), &ratio(2, 1)), ratio(-2, 1));
        assert_eq!(boundary_simplicial_coordinate(&ratio(3, 1), &ratio(4, 1), &ratio(5, 1)), ratio(0, 1));
    }

    #[test]
    fn coordinate_equals_sector_combination_exactly() {
        let q = QuadData::new(ratio(3, 7), ratio(5, 2), ratio(9, 4), ratio(1, 3), ratio(6, 5)).unwrap();
        let s = q.sectors();
        assert_eq!(q.simplicial_coordinate(), s.alpha.clone() + s.beta.clone() - s.epsilon + s.gamma.clone() + s.delta.clone() - s.phi);
        // coupling: αβ = 1/e² = γδ
        let inv_e2 = ratio(1, 1) / q.e.square();
        assert_eq!(s.alpha * s.beta, inv_e2);
        assert_eq!(s.gamma * s.delta, inv_e2);
    }

    #[test]
    fn coupling_residual_examples() {
        assert_eq!(coupling_residual(1., 1., 1., 1.), 0.0);
        assert!((coupling_residual(2., 1., 1., 1.) - core::f64::consts::LN_2).abs() < 1e-15);
        let q = QuadData::new(0.7, 1.9, 2.3, 0.4, 1.1).unwrap();
        let s = q.sectors();
        assert!(coupling_residual(s.alpha, s.beta, s.gamma, s.delta).abs() < 1e-12);
    }

    #[test]
    fn equilateral_triangle_normal_position() {
        let pts = realize_triangle(&LambdaTriple::new(SQRT_2, SQRT_2, SQRT_2).unwrap());
        let want = [v(1., 0., 1.), v(-1., 0., 1.), v(0., 2., 2.)];
        for (p, w) in pts.iter().zip(want) {
            assert!(p.vector().sub(&w).euclid_dot(&p.vector().sub(&w)) < 1e-24);
        }
    }

    #[test]
    fn unit_quadrilateral_volumes_have_opposite_signs() {
        let convex = realize_quadrilateral(&QuadData::new(1., 1., 1., 1., 1.).unwrap()).unwrap();
        let reflex = realize_quadrilateral(&QuadData::new(1., 1., 1., 1., 2.).unwrap()).unwrap();
        assert!(convex.signed_volume * reflex.signed_volume < 0.0);
        // E = 2 and E = -2 with abcd = 1
        assert!((convex.signed_volume / 2.0 + reflex.signed_volume / 2.0).abs() < 1e-12);
    }
}
