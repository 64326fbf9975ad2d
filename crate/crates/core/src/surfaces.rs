//! Quadrics and interpolation surfaces containing prescribed lines.
//!
//! Containment of a line in a surface of degree `d` is decided by evaluating
//! at `d + 1` distinct points of the line: the restriction is a univariate
//! polynomial of degree at most `d`, so `d + 1` roots force it to vanish.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::ff::{nullspace_raw, FieldElement, PrimeField};
use crate::geom::{line_in_plane, Line3, Plane3, Point3};

/// A trivariate polynomial that can be evaluated on points.
pub trait Polynomial3 {
    fn degree(&self) -> usize;
    fn field(&self) -> PrimeField;
    fn eval(&self, p: &Point3) -> FieldElement;
}

fn canonical_coeffs(mut coeffs: Vec<FieldElement>) -> Result<Vec<FieldElement>> {
    let lead = coeffs.iter().find(|c| !c.is_zero()).ok_or(Error::ZeroPolynomial)?;
    let k = lead.inv()?;
    for c in &mut coeffs {
        *c *= k;
    }
    Ok(coeffs)
}

/// Coefficients ordered `(x^2, y^2, z^2, xy, xz, yz, x, y, z, 1)`, scaled so
/// the first nonzero one is 1. Reducible quadrics (plane pairs, double
/// planes) are allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quadric {
    coeffs: [FieldElement; 10],
}

fn quadric_monomials(p: &Point3) -> [FieldElement; 10] {
    let (x, y, z) = (p.x, p.y, p.z);
    [x * x, y * y, z * z, x * y, x * z, y * z, x, y, z, x.field().one()]
}

impl Quadric {
    pub fn new(coeffs: [FieldElement; 10]) -> Result<Self> {
        let field = coeffs[0].field();
        if let Some(bad) = coeffs.iter().find(|c| c.field() != field) {
            return Err(Error::FieldMismatch { left: field.modulus(), right: bad.field().modulus() });
        }
        let scaled = canonical_coeffs(coeffs.to_vec())?;
        Ok(Quadric { coeffs: scaled.try_into().expect("ten coefficients") })
    }

    pub fn from_ints(field: PrimeField, coeffs: [i64; 10]) -> Result<Self> {
        Quadric::new(coeffs.map(|c| field.elem(c)))
    }

    /// The saddle `z - xy`, whose two rulings are `{x = a, z = a y}` and `{y = b, z = b x}`.
    pub fn saddle(field: PrimeField) -> Self {
        Quadric::from_ints(field, [0, 0, 0, -1, 0, 0, 0, 0, 1, 0]).expect("nonzero")
    }

    pub fn coeffs(&self) -> &[FieldElement; 10] {
        &self.coeffs
    }
}

impl Polynomial3 for Quadric {
    fn degree(&self) -> usize {
        2
    }

    fn field(&self) -> PrimeField {
        self.coeffs[0].field()
    }

    fn eval(&self, p: &Point3) -> FieldElement {
        quadric_monomials(p)
            .iter()
            .zip(&self.coeffs)
            .fold(self.field().zero(), |acc, (m, c)| acc + *m * *c)
    }
}

/// Exponents `(i, j, k)` of `x^i y^j z^k` with `i + j + k <= degree`, in
/// graded lexicographic order: highest total degree first, then descending
/// lexicographic within a degree.
pub fn monomial_exponents(degree: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(monomial_count(degree));
    for total in (0..=degree).rev() {
        for i in (0..=total).rev() {
            for j in (0..=total - i).rev() {
                out.push([i, j, total - i - j]);
            }
        }
    }
    out
}

/// `C(degree + 3, 3)`.
pub fn monomial_count(degree: usize) -> usize {
    (degree + 3) * (degree + 2) * (degree + 1) / 6
}

fn powers(v: FieldElement, max: usize) -> Vec<u64> {
    let field = v.field();
    let mut out = Vec::with_capacity(max + 1);
    let mut acc = 1u64;
    for _ in 0..=max {
        out.push(acc);
        acc = field.mul_raw(acc, v.value());
    }
    out
}

fn monomial_row(p: &Point3, exps: &[[usize; 3]], degree: usize) -> Vec<u64> {
    let field = p.field();
    let (px, py, pz) = (powers(p.x, degree), powers(p.y, degree), powers(p.z, degree));
    exps.iter()
        .map(|&[i, j, k]| field.mul_raw(field.mul_raw(px[i], py[j]), pz[k]))
        .collect()
}

/// A surface given by a polynomial of minimal degree over the graded
/// lexicographic monomial basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Surface {
    degree: usize,
    coeffs: Vec<FieldElement>,
}

impl Surface {
    pub fn new(degree: usize, coeffs: Vec<FieldElement>) -> Result<Self> {
        let expected = monomial_count(degree);
        if coeffs.len() != expected {
            return Err(Error::DimensionMismatch { row: 0, len: coeffs.len(), expected });
        }
        Ok(Surface { degree, coeffs: canonical_coeffs(coeffs)? })
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// True when some monomial of top degree has a nonzero coefficient.
    pub fn has_full_degree(&self) -> bool {
        let top = (self.degree + 1) * (self.degree + 2) / 2;
        self.coeffs[..top].iter().any(|c| !c.is_zero())
    }
}

impl Polynomial3 for Surface {
    fn degree(&self) -> usize {
        self.degree
    }

    fn field(&self) -> PrimeField {
        self.coeffs[0].field()
    }

    fn eval(&self, p: &Point3) -> FieldElement {
        let field = self.field();
        let row = monomial_row(p, &monomial_exponents(self.degree), self.degree);
        let value = row
            .iter()
            .zip(&self.coeffs)
            .fold(0, |acc, (&m, c)| field.add_raw(acc, field.mul_raw(m, c.value())));
        field.from_u64(value)
    }
}

/// Distinct points at parameters `0, 1, ..., count - 1`.
fn sample_points(line: &Line3, count: usize) -> Result<Vec<Point3>> {
    let field = line.field();
    if count > field.order() {
        return Err(Error::FieldTooSmallForDegree { modulus: field.modulus(), degree: count - 1 });
    }
    Ok((0..count as u64).map(|t| line.point_at(field.from_u64(t))).collect())
}

pub fn line_in_surface<S: Polynomial3 + ?Sized>(line: &Line3, surface: &S) -> Result<bool> {
    let (a, b) = (line.field(), surface.field());
    if a != b {
        return Err(Error::FieldMismatch { left: a.modulus(), right: b.modulus() });
    }
    Ok(sample_points(line, surface.degree() + 1)?.iter().all(|p| surface.eval(p).is_zero()))
}

/// Every quadric in the canonical nullspace basis of the system "vanish at
/// three points of each line". Always nonempty, since the 9x10 system has a
/// nontrivial kernel.
pub fn quadrics_through_lines(lines: [&Line3; 3]) -> Vec<Quadric> {
    let field = lines[0].field();
    let rows: Vec<u64> = lines
        .iter()
        .flat_map(|l| sample_points(l, 3).expect("p >= 5"))
        .flat_map(|p| quadric_monomials(&p).map(|m| m.value()))
        .collect();
    nullspace_raw(field, rows, 9, 10)
        .into_iter()
        .map(|v| Quadric::new(std::array::from_fn(|i| field.from_u64(v[i]))).expect("basis vectors are nonzero"))
        .collect()
}

/// A quadric containing the three given lines: the first canonical kernel
/// vector of the containment system.
pub fn quadric_through_lines(l1: &Line3, l2: &Line3, l3: &Line3) -> Quadric {
    quadrics_through_lines([l1, l2, l3])
        .into_iter()
        .next()
        .expect("9 equations in 10 unknowns")
}

pub fn lines_on_quadric(quadric: &Quadric, lines: &[Line3]) -> Vec<Line3> {
    lines
        .iter()
        .filter(|l| line_in_surface(*l, quadric).expect("p >= 3"))
        .copied()
        .collect()
}

/// A quadric or plane spanned by some of the input lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpannedSurface {
    Quadric(Quadric),
    Plane(Plane3),
}

/// How many lines of each family a spanned surface contains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Richness {
    pub surface: SpannedSurface,
    pub l_count: usize,
    pub m_count: usize,
}

/// For every quadric uniquely determined by a triple of lines from `L u M`,
/// and every plane spanned by an intersecting or parallel pair, the number
/// of `L`-lines and `M`-lines it contains. Sorted by canonical surface.
///
/// Triples whose containment system has a kernel of dimension at least 2
/// are skipped; the plane pass covers the degenerate configurations that
/// produce them in practice.
pub fn quadric_richness(l: &[Line3], m: &[Line3]) -> Vec<Richness> {
    let all: Vec<Line3> = l.iter().chain(m).copied().collect::<BTreeSet<_>>().into_iter().collect();
    let mut surfaces = BTreeSet::new();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            if let Some(plane) = Plane3::containing_lines(&all[i], &all[j]) {
                surfaces.insert(SpannedSurface::Plane(plane));
            }
            for k in j + 1..all.len() {
                let kernel = quadrics_through_lines([&all[i], &all[j], &all[k]]);
                if let [quadric] = kernel[..] {
                    surfaces.insert(SpannedSurface::Quadric(quadric));
                }
            }
        }
    }
    surfaces
        .into_iter()
        .map(|surface| {
            let on = |lines: &[Line3]| match &surface {
                SpannedSurface::Quadric(q) => lines_on_quadric(q, lines).len(),
                SpannedSurface::Plane(q) => lines.iter().filter(|x| line_in_plane(x, q).expect("same field")).count(),
            };
            Richness { surface, l_count: on(l), m_count: on(m) }
        })
        .collect()
}

/// `ceil(sqrt(6 n)) + 1`: a dimension count guarantees a nonzero polynomial
/// of this degree vanishing on any `n` lines.
pub fn interpolation_degree_bound(line_count: usize) -> usize {
    let target = 6 * line_count;
    let mut d = 0;
    while d * d < target {
        d += 1;
    }
    d + 1
}

/// The lowest-degree surface containing every line of `lines`.
///
/// Degrees `d = 1, 2, ...` are tried in turn, solving for the polynomials
/// of degree at most `d` that vanish at `d + 1` points of each line; the
/// first nontrivial kernel gives the canonical answer.
pub fn min_degree_surface(lines: &[Line3]) -> Result<Surface> {
    let first = lines.first().ok_or(Error::EmptyLineSet)?;
    let field = first.field();
    for degree in 1.. {
        let samples = lines
            .iter()
            .map(|l| sample_points(l, degree + 1))
            .collect::<Result<Vec<_>>>()?;
        let exps = monomial_exponents(degree);
        let rows = samples.len() * (degree + 1);
        let data: Vec<u64> = samples.iter().flatten().flat_map(|p| monomial_row(p, &exps, degree)).collect();
        if let Some(v) = nullspace_raw(field, data, rows, exps.len()).into_iter().next() {
            return Surface::new(degree, v.into_iter().map(|x| field.from_u64(x)).collect());
        }
    }
    unreachable!("a nonzero solution exists at the interpolation degree bound")
}
