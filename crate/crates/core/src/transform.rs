//! From point-plane incidences to line-line intersections.
//!
//! Fix the axis `lambda` (the z-axis) and the plane `pi` (`x = 1`). A line
//! meeting `lambda` at `(0, 0, a)` and `pi` at `(1, b, c)` is encoded by its
//! star coordinates `(a, b, c)`. A point `p` maps to the set of encodings of
//! lines through `p` that meet `lambda` ([`phi`]); a plane `q` maps to the
//! set of encodings of lines inside `q` that meet `lambda` ([`psi`]). Under
//! the preconditions both sets are lines in F_p^3, and `p` lies on `q`
//! exactly when `phi(p)` meets `psi(q)`.

use std::collections::BTreeSet;

use rand::Rng;

use crate::error::{Error, Result};
use crate::ff::{FieldElement, PrimeField};
use crate::geom::{line_line_intersection, line_through, point_on_plane, random_invertible_affine, AffineMap, Line3, Plane3, Point3};

/// Encoding `(a, b, c)` of the line through `(0, 0, a)` and `(1, b, c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StarCoords {
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
}

impl StarCoords {
    pub fn from_ints(field: PrimeField, a: i64, b: i64, c: i64) -> Self {
        StarCoords { a: field.elem(a), b: field.elem(b), c: field.elem(c) }
    }

    /// The star coordinates viewed as a point of F_p^3.
    pub fn as_point(&self) -> Point3 {
        Point3 { x: self.a, y: self.b, z: self.c }
    }
}

pub fn star(line: &Line3) -> Result<StarCoords> {
    let field = line.field();
    let (base, dir) = (line.base().coords(), line.dir());
    if dir[0].is_zero() {
        // Parallel to pi or lying inside it.
        return Err(Error::NoPiIntersection);
    }
    let at_x = |x: FieldElement| line.point_at((x - base[0]) / dir[0]);
    let on_lambda = at_x(field.zero());
    if !on_lambda.y.is_zero() {
        return Err(Error::NoLambdaIntersection);
    }
    let on_pi = at_x(field.one());
    Ok(StarCoords { a: on_lambda.z, b: on_pi.y, c: on_pi.z })
}

pub fn unstar(s: &StarCoords) -> Line3 {
    let field = s.a.field();
    let on_lambda = Point3 { x: field.zero(), y: field.zero(), z: s.a };
    let on_pi = Point3 { x: field.one(), y: s.b, z: s.c };
    line_through(&on_lambda, &on_pi).expect("x-coordinates differ")
}

/// The line `{(t, y0, u t + v)}` of star coordinates of lines through `p`
/// meeting `lambda`, where `y0 = p_y / p_x`, `u = (p_x - 1) / p_x`, `v = p_z / p_x`.
pub fn phi(p: &Point3) -> Result<Line3> {
    let inv_x = p.x.inv().map_err(|_| Error::PointOnYZPlane)?;
    let field = p.field();
    let y0 = p.y * inv_x;
    let u = (p.x - field.one()) * inv_x;
    let v = p.z * inv_x;
    Line3::new(Point3 { x: field.zero(), y: y0, z: v }, [field.one(), field.zero(), u])
}

/// The line `{(x0, t, u t + v)}` of star coordinates of lines in `q` through
/// `q` meets `lambda`, where `x0 = -d/c`, `u = -b/c`, `v = -(a + d)/c`.
///
/// `c != 0` is exactly the condition that `q` meets `lambda` in one point,
/// meets `pi` in a line that is not parallel to the z-axis, and does not
/// contain `lambda`.
pub fn psi(q: &Plane3) -> Result<Line3> {
    let inv_c = q.c().inv().map_err(|_| Error::PlaneDegenerateForPsi)?;
    let field = q.field();
    let x0 = -q.d() * inv_c;
    let u = -q.b() * inv_c;
    let v = -(q.a() + q.d()) * inv_c;
    Line3::new(Point3 { x: x0, y: field.zero(), z: v }, [field.zero(), field.one(), u])
}

/// Brute-force pencil: star coordinates of every line through `p` that meets
/// both `lambda` and `pi`.
///
/// Each vertex `(0, 0, a)` of `lambda` is joined to `p`. When `p` itself lies
/// on `lambda` every line through `p` meets `lambda`, so the result is the
/// whole plane `{(p_z, b, c)}` of star space.
pub fn pencil_oracle_point(p: &Point3) -> BTreeSet<StarCoords> {
    let field = p.field();
    if p.x.is_zero() && p.y.is_zero() {
        return field
            .elements()
            .flat_map(|b| field.elements().map(move |c| StarCoords { a: p.z, b, c }))
            .collect();
    }
    field
        .elements()
        .filter_map(|a| {
            let vertex = Point3 { x: field.zero(), y: field.zero(), z: a };
            star(&line_through(p, &vertex).ok()?).ok()
        })
        .collect()
}

/// A point and plane set in general position for the star map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericInstance {
    pub points: Vec<Point3>,
    pub planes: Vec<Plane3>,
    pub map_used: AffineMap,
}

impl GenericInstance {
    pub fn phi_lines(&self) -> Vec<Line3> {
        self.points.iter().map(|p| phi(p).expect("generic points avoid the yz-plane")).collect()
    }

    pub fn psi_lines(&self) -> Vec<Line3> {
        self.planes.iter().map(|q| psi(q).expect("generic planes have c != 0")).collect()
    }
}

fn disjoint(l1: &Line3, l2: &Line3) -> bool {
    l1 != l2 && matches!(line_line_intersection(l1, l2), Ok(None))
}

fn pairwise_disjoint(lines: &[Line3]) -> bool {
    lines.iter().enumerate().all(|(i, l1)| lines[i + 1..].iter().all(|l2| disjoint(l1, l2)))
}

/// Index pairs that can merge two incidences into one intersection point:
/// points sharing a plane, and planes sharing a point.
fn linked_pairs(points: &[Point3], planes: &[Plane3]) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let on: Vec<Vec<bool>> = points
        .iter()
        .map(|p| planes.iter().map(|q| point_on_plane(p, q).expect("same field")).collect())
        .collect();
    let mut point_pairs = BTreeSet::new();
    let mut plane_pairs = BTreeSet::new();
    for j in 0..planes.len() {
        let hits: Vec<usize> = (0..points.len()).filter(|&i| on[i][j]).collect();
        for (a, &i1) in hits.iter().enumerate() {
            point_pairs.extend(hits[a + 1..].iter().map(|&i2| (i1, i2)));
        }
    }
    for row in &on {
        let hits: Vec<usize> = (0..planes.len()).filter(|&j| row[j]).collect();
        for (a, &j1) in hits.iter().enumerate() {
            plane_pairs.extend(hits[a + 1..].iter().map(|&j2| (j1, j2)));
        }
    }
    (point_pairs.into_iter().collect(), plane_pairs.into_iter().collect())
}

fn images(points: &[Point3], planes: &[Plane3]) -> Option<(Vec<Line3>, Vec<Line3>)> {
    let phis = points.iter().map(phi).collect::<Result<Vec<_>>>().ok()?;
    let psis = planes.iter().map(psi).collect::<Result<Vec<_>>>().ok()?;
    Some((phis, psis))
}

fn linked_disjoint(phis: &[Line3], psis: &[Line3], links: &(Vec<(usize, usize)>, Vec<(usize, usize)>)) -> bool {
    links.0.iter().all(|&(i, j)| disjoint(&phis[i], &phis[j])) && links.1.iter().all(|&(i, j)| disjoint(&psis[i], &psis[j]))
}

/// True when every point avoids the yz-plane, every plane has `c != 0`, and
/// `phi`-images of points sharing a plane (and `psi`-images of planes
/// sharing a point) are disjoint. This is exactly what makes distinct
/// incidences land on distinct intersection points.
pub fn is_generic(points: &[Point3], planes: &[Plane3]) -> bool {
    images(points, planes).is_some_and(|(phis, psis)| linked_disjoint(&phis, &psis, &linked_pairs(points, planes)))
}

/// Like [`is_generic`], but requires all `phi`-images and all `psi`-images
/// to be pairwise disjoint. Only attainable when the field is large
/// compared with the squared instance size.
pub fn is_fully_generic(points: &[Point3], planes: &[Plane3]) -> bool {
    images(points, planes).is_some_and(|(phis, psis)| pairwise_disjoint(&phis) && pairwise_disjoint(&psis))
}

pub const DEFAULT_MAX_RETRIES: usize = 100;

/// Moves `points` and `planes` by random invertible affine maps until the
/// result satisfies [`is_generic`].
///
/// Incidences are preserved since one map is applied to both sets. Fails
/// with [`Error::GenericPositionFailure`] once `max_retries` maps have been
/// rejected, which happens when the field is small relative to the input.
pub fn genericize<R: Rng + ?Sized>(
    points: &[Point3],
    planes: &[Plane3],
    rng: &mut R,
    max_retries: usize,
) -> Result<GenericInstance> {
    let field = match (points.first(), planes.first()) {
        (Some(p), _) => p.field(),
        (None, Some(q)) => q.field(),
        (None, None) => {
            return Err(Error::GenericPositionFailure { attempts: 0 });
        }
    };
    // Incidences survive the map, so the linked pairs are fixed up front.
    let links = linked_pairs(points, planes);
    for _ in 0..max_retries {
        let map = random_invertible_affine(field, rng)?;
        let moved_points: Vec<_> = points.iter().map(|p| map.apply(p)).collect();
        let moved_planes: Vec<_> = planes.iter().map(|q| map.apply(q)).collect();
        let fits = images(&moved_points, &moved_planes).is_some_and(|(phis, psis)| linked_disjoint(&phis, &psis, &links));
        if fits {
            return Ok(GenericInstance { points: moved_points, planes: moved_planes, map_used: map });
        }
    }
    Err(Error::GenericPositionFailure { attempts: max_retries })
}
