//! Affine points, lines and planes in F_p^3.
//!
//! Lines and planes are stored in canonical form so that structural equality
//! and hashing identify equal loci. Nothing here represents points at
//! infinity.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::ff::{FieldElement, PrimeField};

pub type Vec3 = [FieldElement; 3];

pub(crate) fn add3(u: Vec3, v: Vec3) -> Vec3 {
    [u[0] + v[0], u[1] + v[1], u[2] + v[2]]
}

pub(crate) fn sub3(u: Vec3, v: Vec3) -> Vec3 {
    [u[0] - v[0], u[1] - v[1], u[2] - v[2]]
}

pub(crate) fn scale3(k: FieldElement, v: Vec3) -> Vec3 {
    [k * v[0], k * v[1], k * v[2]]
}

pub(crate) fn dot3(u: Vec3, v: Vec3) -> FieldElement {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

pub(crate) fn cross3(u: Vec3, v: Vec3) -> Vec3 {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

fn is_zero3(v: Vec3) -> bool {
    v.iter().all(|x| x.is_zero())
}

fn same_field(a: PrimeField, b: PrimeField) -> Result<()> {
    if a != b {
        return Err(Error::FieldMismatch { left: a.modulus(), right: b.modulus() });
    }
    Ok(())
}

fn check3(v: &[FieldElement]) -> Result<PrimeField> {
    let field = v[0].field();
    for e in &v[1..] {
        same_field(field, e.field())?;
    }
    Ok(field)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point3 {
    pub x: FieldElement,
    pub y: FieldElement,
    pub z: FieldElement,
}

impl Point3 {
    pub fn new(x: FieldElement, y: FieldElement, z: FieldElement) -> Result<Self> {
        check3(&[x, y, z])?;
        Ok(Point3 { x, y, z })
    }

    pub fn from_ints(field: PrimeField, x: i64, y: i64, z: i64) -> Self {
        Point3 { x: field.elem(x), y: field.elem(y), z: field.elem(z) }
    }

    pub fn origin(field: PrimeField) -> Self {
        Point3::from_ints(field, 0, 0, 0)
    }

    pub(crate) fn from_vec(v: Vec3) -> Self {
        Point3 { x: v[0], y: v[1], z: v[2] }
    }

    pub fn coords(&self) -> Vec3 {
        [self.x, self.y, self.z]
    }

    pub fn field(&self) -> PrimeField {
        self.x.field()
    }

    pub fn random<R: Rng + ?Sized>(field: PrimeField, rng: &mut R) -> Self {
        Point3 { x: field.random(rng), y: field.random(rng), z: field.random(rng) }
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// The plane `a x + b y + c z + d = 0`, scaled so that the first nonzero
/// coefficient among `(a, b, c)` is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Plane3 {
    a: FieldElement,
    b: FieldElement,
    c: FieldElement,
    d: FieldElement,
}

impl Plane3 {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> Result<Self> {
        check3(&[a, b, c, d])?;
        Plane3::from_normal([a, b, c], d)
    }

    pub fn from_ints(field: PrimeField, a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Plane3::from_normal([field.elem(a), field.elem(b), field.elem(c)], field.elem(d))
    }

    pub(crate) fn from_normal(normal: Vec3, d: FieldElement) -> Result<Self> {
        let lead = normal.iter().find(|x| !x.is_zero()).ok_or(Error::ZeroNormal)?;
        let k = lead.inv()?;
        let [a, b, c] = scale3(k, normal);
        Ok(Plane3 { a, b, c, d: k * d })
    }

    /// The plane through three non-collinear points.
    pub fn through_points(p1: Point3, p2: Point3, p3: Point3) -> Option<Self> {
        let normal = cross3(sub3(p2.coords(), p1.coords()), sub3(p3.coords(), p1.coords()));
        let d = -dot3(normal, p1.coords());
        Plane3::from_normal(normal, d).ok()
    }

    /// The plane spanned by two distinct lines that intersect or are parallel.
    pub fn containing_lines(l1: &Line3, l2: &Line3) -> Option<Self> {
        if l1 == l2 {
            return None;
        }
        let other = if point_on_line(&l2.base, l1).ok()? { l2.point_at(l2.field().one()) } else { l2.base };
        let plane = Plane3::through_points(l1.base, l1.point_at(l1.field().one()), other)?;
        line_in_plane(l2, &plane).ok()?.then_some(plane)
    }

    pub fn coeffs(&self) -> [FieldElement; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn normal(&self) -> Vec3 {
        [self.a, self.b, self.c]
    }

    pub fn a(&self) -> FieldElement {
        self.a
    }

    pub fn b(&self) -> FieldElement {
        self.b
    }

    pub fn c(&self) -> FieldElement {
        self.c
    }

    pub fn d(&self) -> FieldElement {
        self.d
    }

    pub fn field(&self) -> PrimeField {
        self.a.field()
    }

    pub fn eval(&self, p: &Point3) -> FieldElement {
        dot3(self.normal(), p.coords()) + self.d
    }
}

impl fmt::Display for Plane3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x + {}y + {}z + {} = 0", self.a, self.b, self.c, self.d)
    }
}

/// An affine line `{ base + t * dir }`.
///
/// Canonical form: the first nonzero coordinate of `dir` is 1, and `base` has
/// a zero in that same coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line3 {
    base: Point3,
    dir: Vec3,
}

impl Line3 {
    pub fn new(base: Point3, dir: Vec3) -> Result<Self> {
        let field = check3(&[base.x, base.y, base.z, dir[0], dir[1], dir[2]])?;
        let lead = (0..3).find(|&i| !dir[i].is_zero()).ok_or(Error::ZeroDirection)?;
        let dir = scale3(dir[lead].inv()?, dir);
        let shift = base.coords()[lead];
        let base = sub3(base.coords(), scale3(shift, dir));
        debug_assert!(base[lead] == field.zero());
        Ok(Line3 { base: Point3::from_vec(base), dir })
    }

    pub fn from_ints(field: PrimeField, base: [i64; 3], dir: [i64; 3]) -> Result<Self> {
        Line3::new(
            Point3::from_ints(field, base[0], base[1], base[2]),
            dir.map(|d| field.elem(d)),
        )
    }

    pub fn x_axis(field: PrimeField) -> Self {
        Line3::from_ints(field, [0, 0, 0], [1, 0, 0]).expect("nonzero direction")
    }

    pub fn y_axis(field: PrimeField) -> Self {
        Line3::from_ints(field, [0, 0, 0], [0, 1, 0]).expect("nonzero direction")
    }

    pub fn z_axis(field: PrimeField) -> Self {
        Line3::from_ints(field, [0, 0, 0], [0, 0, 1]).expect("nonzero direction")
    }

    pub fn base(&self) -> Point3 {
        self.base
    }

    pub fn dir(&self) -> Vec3 {
        self.dir
    }

    pub fn field(&self) -> PrimeField {
        self.base.field()
    }

    pub fn point_at(&self, t: FieldElement) -> Point3 {
        Point3::from_vec(add3(self.base.coords(), scale3(t, self.dir)))
    }

    /// All `p` points of the line, ordered by parameter.
    pub fn points(&self) -> impl Iterator<Item = Point3> + '_ {
        self.field().elements().map(move |t| self.point_at(t))
    }
}

impl fmt::Display for Line3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + t({}, {}, {})", self.base, self.dir[0], self.dir[1], self.dir[2])
    }
}

pub fn point_on_plane(p: &Point3, q: &Plane3) -> Result<bool> {
    same_field(p.field(), q.field())?;
    Ok(q.eval(p).is_zero())
}

pub fn point_on_line(p: &Point3, l: &Line3) -> Result<bool> {
    same_field(p.field(), l.field())?;
    Ok(is_zero3(cross3(sub3(p.coords(), l.base.coords()), l.dir)))
}

pub fn line_in_plane(l: &Line3, q: &Plane3) -> Result<bool> {
    same_field(l.field(), q.field())?;
    Ok(q.eval(&l.base).is_zero() && dot3(q.normal(), l.dir).is_zero())
}

/// Solves `s u - t v = w` using the coordinate pair `(i, j)`, whose 2x2 minor
/// `u_i v_j - u_j v_i` must be nonzero. Returns `s`.
fn solve_pair(u: Vec3, v: Vec3, w: Vec3, i: usize, j: usize) -> FieldElement {
    let det = v[i] * u[j] - u[i] * v[j];
    // Cramer on [[u_i, -v_i], [u_j, -v_j]] (s, t) = (w_i, w_j).
    (v[i] * w[j] - w[i] * v[j]) / det
}

/// The unique common point of two distinct lines, if any.
pub fn line_line_intersection(l1: &Line3, l2: &Line3) -> Result<Option<Point3>> {
    same_field(l1.field(), l2.field())?;
    if l1 == l2 {
        return Err(Error::EqualLines);
    }
    let n = cross3(l1.dir, l2.dir);
    if is_zero3(n) {
        // Parallel and distinct.
        return Ok(None);
    }
    let w = sub3(l2.base.coords(), l1.base.coords());
    if !dot3(w, n).is_zero() {
        return Ok(None);
    }
    // n_k is the minor on the two coordinates other than k.
    let k = (0..3).find(|&k| !n[k].is_zero()).expect("nonzero cross product");
    let (i, j) = ((k + 1) % 3, (k + 2) % 3);
    let s = solve_pair(l1.dir, l2.dir, w, i, j);
    let point = l1.point_at(s);
    debug_assert!(point_on_line(&point, l2).unwrap_or(false));
    Ok(point_on_line(&point, l2)?.then_some(point))
}

pub fn line_through(p1: &Point3, p2: &Point3) -> Result<Line3> {
    same_field(p1.field(), p2.field())?;
    if p1 == p2 {
        return Err(Error::EqualPoints);
    }
    Line3::new(*p1, sub3(p2.coords(), p1.coords()))
}

pub fn plane_plane_intersection(q1: &Plane3, q2: &Plane3) -> Result<Option<Line3>> {
    same_field(q1.field(), q2.field())?;
    if q1 == q2 {
        return Err(Error::EqualPlanes);
    }
    let dir = cross3(q1.normal(), q2.normal());
    let Some(k) = (0..3).find(|&k| !dir[k].is_zero()) else {
        return Ok(None);
    };
    // Fix coordinate k at zero and solve the remaining 2x2 system.
    let (i, j) = ((k + 1) % 3, (k + 2) % 3);
    let (n1, n2) = (q1.normal(), q2.normal());
    let det = n1[i] * n2[j] - n1[j] * n2[i];
    let (r1, r2) = (-q1.d, -q2.d);
    let mut base = [q1.field().zero(); 3];
    base[i] = (r1 * n2[j] - n1[j] * r2) / det;
    base[j] = (n1[i] * r2 - r1 * n2[i]) / det;
    Line3::new(Point3::from_vec(base), dir).map(Some)
}

type Mat3 = [[FieldElement; 3]; 3];

fn mat_vec(m: &Mat3, v: Vec3) -> Vec3 {
    [dot3(m[0], v), dot3(m[1], v), dot3(m[2], v)]
}

fn transpose(m: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| m[j][i]))
}

pub fn determinant(m: &Mat3) -> FieldElement {
    dot3(m[0], cross3(m[1], m[2]))
}

fn inverse(m: &Mat3) -> Option<Mat3> {
    let det = determinant(m);
    let inv_det = det.inv().ok()?;
    // Columns of the inverse are the cross products of row pairs.
    let cols = [cross3(m[1], m[2]), cross3(m[2], m[0]), cross3(m[0], m[1])];
    Some(std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i] * inv_det)))
}

/// `x -> linear * x + shift` with invertible linear part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffineMap {
    linear: Mat3,
    shift: Vec3,
    inverse: Mat3,
}

impl AffineMap {
    pub fn new(linear: Mat3, shift: Vec3) -> Result<Self> {
        let mut all = linear.concat();
        all.extend_from_slice(&shift);
        check3(&all)?;
        let inverse = inverse(&linear).ok_or(Error::SingularMap)?;
        Ok(AffineMap { linear, shift, inverse })
    }

    pub fn identity(field: PrimeField) -> Self {
        let linear = std::array::from_fn(|i| std::array::from_fn(|j| field.elem((i == j) as i64)));
        AffineMap::new(linear, [field.zero(); 3]).expect("identity is invertible")
    }

    pub fn translation(shift: Vec3) -> Self {
        let field = shift[0].field();
        AffineMap { shift, ..AffineMap::identity(field) }
    }

    pub fn linear(&self) -> &Mat3 {
        &self.linear
    }

    pub fn shift(&self) -> Vec3 {
        self.shift
    }

    pub fn apply<T: AffineImage>(&self, object: &T) -> T {
        object.image_under(self)
    }

    /// The inverse map.
    pub fn inverse(&self) -> AffineMap {
        let shift = mat_vec(&self.inverse, self.shift).map(|x| -x);
        AffineMap { linear: self.inverse, shift, inverse: self.linear }
    }
}

/// Objects that can be pushed forward through an [`AffineMap`].
pub trait AffineImage {
    fn image_under(&self, map: &AffineMap) -> Self;
}

impl AffineImage for Point3 {
    fn image_under(&self, map: &AffineMap) -> Self {
        Point3::from_vec(add3(mat_vec(&map.linear, self.coords()), map.shift))
    }
}

impl AffineImage for Line3 {
    fn image_under(&self, map: &AffineMap) -> Self {
        Line3::new(map.apply(&self.base), mat_vec(&map.linear, self.dir))
            .expect("invertible map sends nonzero directions to nonzero directions")
    }
}

impl AffineImage for Plane3 {
    /// With `y = A x + s`, the image of `n.x + d = 0` is `(A^-T n).y + d - (A^-T n).s = 0`.
    fn image_under(&self, map: &AffineMap) -> Self {
        let normal = mat_vec(&transpose(&map.inverse), self.normal());
        let d = self.d - dot3(normal, map.shift);
        Plane3::from_normal(normal, d).expect("invertible map keeps normals nonzero")
    }
}

const MAX_AFFINE_ATTEMPTS: usize = 1000;

/// A uniformly random invertible affine map: entries are resampled until the
/// determinant is nonzero.
pub fn random_invertible_affine<R: Rng + ?Sized>(field: PrimeField, rng: &mut R) -> Result<AffineMap> {
    for _ in 0..MAX_AFFINE_ATTEMPTS {
        let linear: Mat3 = std::array::from_fn(|_| std::array::from_fn(|_| field.random(rng)));
        let shift: Vec3 = std::array::from_fn(|_| field.random(rng));
        if let Ok(map) = AffineMap::new(linear, shift) {
            return Ok(map);
        }
    }
    Err(Error::SingularMap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_pcg::Pcg64;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn pt(field: PrimeField, x: i64, y: i64, z: i64) -> Point3 {
        Point3::from_ints(field, x, y, z)
    }

    fn plane(field: PrimeField, a: i64, b: i64, c: i64, d: i64) -> Plane3 {
        Plane3::from_ints(field, a, b, c, d).unwrap()
    }

    #[test]
    fn point_plane_examples() {
        let f5 = f(5);
        let z0 = plane(f5, 0, 0, 1, 0);
        assert!(point_on_plane(&pt(f5, 1, 0, 0), &z0).unwrap());
        assert!(!point_on_plane(&pt(f5, 0, 0, 1), &z0).unwrap());
        assert!(point_on_plane(&pt(f5, 2, 3, 4), &plane(f5, 1, 1, 1, -4)).unwrap());
    }

    #[test]
    fn point_line_examples() {
        let f5 = f(5);
        let xa = Line3::x_axis(f5);
        assert!(point_on_line(&pt(f5, 3, 0, 0), &xa).unwrap());
        assert!(!point_on_line(&pt(f5, 0, 1, 0), &xa).unwrap());
        let l = Line3::from_ints(f5, [0, 0, 3], [1, 0, 3]).unwrap();
        assert!(point_on_line(&pt(f5, 2, 0, 4), &l).unwrap());
    }

    #[test]
    fn line_plane_examples() {
        let f5 = f(5);
        assert!(line_in_plane(&Line3::x_axis(f5), &plane(f5, 0, 0, 1, 0)).unwrap());
        assert!(!line_in_plane(&Line3::x_axis(f5), &plane(f5, 1, 0, 0, 0)).unwrap());
        let l = Line3::from_ints(f5, [0, 0, 3], [1, 0, 3]).unwrap();
        assert!(line_in_plane(&l, &plane(f5, 3, 0, -1, 3)).unwrap());
    }

    #[test]
    fn line_line_examples() {
        let f5 = f(5);
        let xa = Line3::x_axis(f5);
        assert_eq!(line_line_intersection(&xa, &Line3::y_axis(f5)).unwrap(), Some(Point3::origin(f5)));
        let parallel = Line3::from_ints(f5, [0, 1, 0], [1, 0, 0]).unwrap();
        assert_eq!(line_line_intersection(&xa, &parallel).unwrap(), None);
        let skew = Line3::from_ints(f5, [0, 0, 1], [0, 1, 0]).unwrap();
        assert_eq!(line_line_intersection(&xa, &skew).unwrap(), None);
        assert_eq!(line_line_intersection(&xa, &xa), Err(Error::EqualLines));
    }

    #[test]
    fn line_through_examples() {
        let f5 = f(5);
        let o = Point3::origin(f5);
        assert_eq!(line_through(&o, &pt(f5, 1, 0, 0)).unwrap(), Line3::x_axis(f5));
        assert_eq!(line_through(&o, &pt(f5, 0, 0, 1)).unwrap(), Line3::z_axis(f5));
        let expected = Line3::from_ints(f5, [0, 0, 3], [1, 0, 3]).unwrap();
        assert_eq!(line_through(&pt(f5, 0, 0, 3), &pt(f5, 1, 0, 1)).unwrap(), expected);
        assert_eq!(expected.dir(), [f5.one(), f5.zero(), f5.elem(3)]);
        assert_eq!(line_through(&o, &o), Err(Error::EqualPoints));
    }

    #[test]
    fn plane_plane_examples() {
        let f5 = f(5);
        let z0 = plane(f5, 0, 0, 1, 0);
        assert_eq!(plane_plane_intersection(&z0, &plane(f5, 0, 1, 0, 0)).unwrap(), Some(Line3::x_axis(f5)));
        assert_eq!(plane_plane_intersection(&z0, &plane(f5, 0, 0, 1, -1)).unwrap(), None);
        let l = plane_plane_intersection(&z0, &plane(f5, 1, 0, 1, -1)).unwrap().unwrap();
        assert_eq!(l, Line3::from_ints(f5, [1, 0, 0], [0, 1, 0]).unwrap());
        assert_eq!(plane_plane_intersection(&z0, &z0), Err(Error::EqualPlanes));
    }

    #[test]
    fn canonical_forms() {
        let f7 = f(7);
        let q = Plane3::from_ints(f7, 0, 3, 6, 2).unwrap();
        assert_eq!(q.coeffs(), [f7.zero(), f7.one(), f7.elem(2), f7.elem(3)]);
        assert_eq!(Plane3::from_ints(f7, 0, 0, 0, 1), Err(Error::ZeroNormal));
        let l = Line3::from_ints(f7, [3, 1, 2], [2, 4, 0]).unwrap();
        assert_eq!(l.dir(), [f7.one(), f7.elem(2), f7.zero()]);
        assert!(l.base().x.is_zero());
        assert_eq!(Line3::from_ints(f7, [1, 1, 1], [0, 0, 0]), Err(Error::ZeroDirection));
    }

    #[test]
    fn affine_examples() {
        let f5 = f(5);
        let id = AffineMap::identity(f5);
        let p = pt(f5, 1, 2, 3);
        assert_eq!(id.apply(&p), p);
        assert_eq!(id.apply(&Line3::x_axis(f5)), Line3::x_axis(f5));
        let up = AffineMap::translation([f5.zero(), f5.zero(), f5.one()]);
        assert_eq!(up.apply(&Point3::origin(f5)), pt(f5, 0, 0, 1));

        let (o, l) = (f5.zero(), f5.one());
        let swap = AffineMap::new([[o, o, l], [o, l, o], [l, o, o]], [o; 3]).unwrap();
        let image = swap.apply(&plane(f5, 0, 0, 1, 0));
        assert_eq!(image, plane(f5, 1, 0, 0, 0));
        assert!(point_on_plane(&swap.apply(&pt(f5, 2, 3, 0)), &image).unwrap());
    }

    #[test]
    fn singular_map_rejected() {
        let f5 = f(5);
        let (o, l) = (f5.zero(), f5.one());
        assert_eq!(AffineMap::new([[l, o, o], [l, o, o], [o, o, l]], [o; 3]), Err(Error::SingularMap));
    }

    #[test]
    fn random_affine_is_deterministic_and_invertible() {
        let f101 = f(101);
        let a = random_invertible_affine(f101, &mut Pcg64::seed_from_u64(9)).unwrap();
        let b = random_invertible_affine(f101, &mut Pcg64::seed_from_u64(9)).unwrap();
        assert_eq!(a, b);
        assert!(!determinant(a.linear()).is_zero());
        let p = pt(f101, 5, 6, 7);
        assert_eq!(a.inverse().apply(&a.apply(&p)), p);
    }

    #[test]
    fn every_line_has_p_points() {
        let f5 = f(5);
        let l = Line3::from_ints(f5, [1, 2, 3], [0, 4, 1]).unwrap();
        let pts: std::collections::HashSet<_> = l.points().collect();
        assert_eq!(pts.len(), 5);
        assert!(pts.iter().all(|p| point_on_line(p, &l).unwrap()));
    }

    #[test]
    fn containing_lines() {
        let f7 = f(7);
        let q = Plane3::containing_lines(&Line3::x_axis(f7), &Line3::y_axis(f7)).unwrap();
        assert_eq!(q, plane(f7, 0, 0, 1, 0));
        let par = Line3::from_ints(f7, [0, 1, 0], [1, 0, 0]).unwrap();
        assert_eq!(Plane3::containing_lines(&Line3::x_axis(f7), &par), Some(q));
        let skew = Line3::from_ints(f7, [0, 0, 1], [0, 1, 0]).unwrap();
        assert_eq!(Plane3::containing_lines(&Line3::x_axis(f7), &skew), None);
    }
}
