//! Seeded instance generators: the extremal rich-line and regulus
//! configurations plus uniform random instances.
//!
//! Every generator is a pure function of its parameters and seed. Seeds
//! drive a `Pcg64` generator (PCG XSL RR 128/64).

use std::collections::{BTreeSet, HashSet};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64;

use crate::counting::Instance;
use crate::error::{Error, Result};
use crate::ff::{FieldElement, PrimeField};
use crate::geom::{line_in_plane, line_through, Line3, Plane3, Point3};

const MAX_REJECTIONS: usize = 1_000_000;

pub fn seeded_rng(seed: u64) -> Pcg64 {
    Pcg64::seed_from_u64(seed)
}

fn exceeds(name: &'static str, value: usize, field: PrimeField) -> Error {
    Error::ParameterExceedsField { name, value: value as u64, modulus: field.modulus() }
}

/// A uniformly random line.
pub fn random_line<R: Rng + ?Sized>(field: PrimeField, rng: &mut R) -> Line3 {
    loop {
        let dir = [field.random(rng), field.random(rng), field.random(rng)];
        if let Ok(line) = Line3::new(Point3::random(field, rng), dir) {
            return line;
        }
    }
}

/// The `p + 1` planes containing `line`, indexed by `0..=p`: index `i < p`
/// is the normal `n1 + i n2`, index `p` is `n2`, where `n1, n2` span the
/// normals orthogonal to the line direction.
pub fn plane_through_line(line: &Line3, index: usize) -> Plane3 {
    let field = line.field();
    let dir = line.dir();
    let lead = (0..3).find(|&i| !dir[i].is_zero()).expect("canonical direction");
    let others: Vec<usize> = (0..3).filter(|&i| i != lead).collect();
    let basis = others.iter().map(|&j| {
        let mut n = [field.zero(); 3];
        n[j] = field.one();
        n[lead] = -dir[j];
        n
    });
    let [n1, n2]: [[FieldElement; 3]; 2] = basis.collect::<Vec<_>>().try_into().expect("two basis normals");
    let normal = if index < field.order() {
        let k = field.from_u64(index as u64);
        std::array::from_fn(|i| n1[i] + k * n2[i])
    } else {
        n2
    };
    let base = line.base().coords();
    let d = -(normal[0] * base[0] + normal[1] * base[1] + normal[2] * base[2]);
    Plane3::from_normal(normal, d).expect("basis normals are independent")
}

/// `points_on_line` distinct points on a random line and `planes` distinct
/// planes containing that line, giving `points_on_line * planes` incidences.
///
/// `points_on_line` is `k - 1` for the collinearity parameter `k`.
pub fn rich_line_instance(k: usize, planes: usize, field: PrimeField, seed: u64) -> Result<Instance> {
    let on_line = k.checked_sub(1).filter(|&m| m >= 1).ok_or_else(|| exceeds("k", k, field))?;
    if on_line > field.order() {
        return Err(exceeds("k", k, field));
    }
    if planes == 0 || planes > field.order() + 1 {
        return Err(exceeds("n", planes, field));
    }
    let mut rng = seeded_rng(seed);
    let line = random_line(field, &mut rng);
    let points = sample(&mut rng, field.order(), on_line)
        .into_iter()
        .map(|t| line.point_at(field.from_u64(t as u64)))
        .collect();
    let planes = sample(&mut rng, field.order() + 1, planes)
        .into_iter()
        .map(|i| plane_through_line(&line, i))
        .collect();
    Instance::new(field, points, planes)
}

/// The line `{x = a, z = a y}` of the first ruling of `z = xy`.
pub fn first_ruling(a: FieldElement) -> Line3 {
    let field = a.field();
    Line3::new(Point3 { x: a, y: field.zero(), z: field.zero() }, [field.zero(), field.one(), a]).expect("nonzero direction")
}

/// The line `{y = b, z = b x}` of the second ruling of `z = xy`.
pub fn second_ruling(b: FieldElement) -> Line3 {
    let field = b.field();
    Line3::new(Point3 { x: field.zero(), y: b, z: field.zero() }, [field.one(), field.zero(), b]).expect("nonzero direction")
}

/// `a_count` lines from one ruling of the saddle `z = xy` and `b_count` from
/// the other, with seeded distinct parameters. Every pair meets, at the
/// distinct points `(a, b, ab)`.
pub fn regulus_instance(a_count: usize, b_count: usize, field: PrimeField, seed: u64) -> Result<(Vec<Line3>, Vec<Line3>)> {
    if a_count > field.order() {
        return Err(exceeds("a_count", a_count, field));
    }
    if b_count > field.order() {
        return Err(exceeds("b_count", b_count, field));
    }
    let mut rng = seeded_rng(seed);
    let mut params = |count| -> Vec<FieldElement> {
        sample(&mut rng, field.order(), count).into_iter().map(|v| field.from_u64(v as u64)).collect()
    };
    let l = params(a_count).into_iter().map(first_ruling).collect();
    let m = params(b_count).into_iter().map(second_ruling).collect();
    Ok((l, m))
}

/// Total number of affine planes over F_p: `p (p^2 + p + 1)`.
pub fn plane_count(field: PrimeField) -> u128 {
    let p = field.modulus() as u128;
    p * (p * p + p + 1)
}

pub fn random_plane<R: Rng + ?Sized>(field: PrimeField, rng: &mut R) -> Plane3 {
    loop {
        let normal = [field.random(rng), field.random(rng), field.random(rng)];
        if let Ok(plane) = Plane3::from_normal(normal, field.random(rng)) {
            return plane;
        }
    }
}

fn distinct<T: Copy + Eq + std::hash::Hash, R: Rng>(
    count: usize,
    rng: &mut R,
    mut draw: impl FnMut(&mut R) -> T,
    mut accept: impl FnMut(&T) -> bool,
    on_exhaust: impl Fn() -> Error,
) -> Result<Vec<T>> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > MAX_REJECTIONS {
            return Err(on_exhaust());
        }
        let x = draw(rng);
        if !seen.contains(&x) && accept(&x) {
            seen.insert(x);
            out.push(x);
        }
    }
    Ok(out)
}

/// `points` distinct uniform points and `planes` distinct uniform planes.
pub fn random_instance(points: usize, planes: usize, field: PrimeField, seed: u64) -> Result<Instance> {
    let p = field.modulus() as u128;
    if points as u128 > p * p * p {
        return Err(exceeds("m", points, field));
    }
    if planes as u128 > plane_count(field) {
        return Err(exceeds("n", planes, field));
    }
    let mut rng = seeded_rng(seed);
    let pts = distinct(points, &mut rng, |r| Point3::random(field, r), |_| true, || exceeds("m", points, field))?;
    let pls = distinct(planes, &mut rng, |r| random_plane(field, r), |_| true, || exceeds("n", planes, field))?;
    Instance::new(field, pts, pls)
}

/// A random instance with no three collinear points and no line through two
/// points that lies in two planes, so every rich-line statistic has
/// `s <= 2`, and `t <= 1` whenever `s = 2`.
pub fn random_no_rich_lines_instance(points: usize, planes: usize, field: PrimeField, seed: u64) -> Result<Instance> {
    let mut rng = seeded_rng(seed);
    let mut spanned: Vec<Line3> = Vec::new();
    let mut chosen: Vec<Point3> = Vec::new();
    let pts = distinct(
        points,
        &mut rng,
        |r| Point3::random(field, r),
        |p| {
            let collinear = spanned.iter().any(|l| crate::geom::point_on_line(p, l).expect("same field"));
            if collinear {
                return false;
            }
            spanned.extend(chosen.iter().map(|q| line_through(q, p).expect("distinct")));
            chosen.push(*p);
            true
        },
        || exceeds("m", points, field),
    )?;
    let mut claimed: BTreeSet<Line3> = BTreeSet::new();
    let pls = distinct(
        planes,
        &mut rng,
        |r| random_plane(field, r),
        |q| {
            let inside: Vec<Line3> = spanned.iter().filter(|l| line_in_plane(l, q).expect("same field")).copied().collect();
            if inside.iter().any(|l| claimed.contains(l)) {
                return false;
            }
            claimed.extend(inside);
            true
        },
        || exceeds("n", planes, field),
    )?;
    Instance::new(field, pts, pls)
}

/// What to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionKind {
    RichLine { k: usize, n: usize },
    Regulus { a_count: usize, b_count: usize },
    Random { m: usize, n: usize },
    RandomNoRichLines { m: usize, n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructionSpec {
    pub kind: ConstructionKind,
    pub seed: u64,
    pub field: PrimeField,
}

/// Output of a construction: a point-plane instance, or two line families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Construction {
    Instance(Instance),
    Lines(Vec<Line3>, Vec<Line3>),
}

impl ConstructionSpec {
    pub fn build(&self) -> Result<Construction> {
        let (field, seed) = (self.field, self.seed);
        Ok(match self.kind {
            ConstructionKind::RichLine { k, n } => Construction::Instance(rich_line_instance(k, n, field, seed)?),
            ConstructionKind::Regulus { a_count, b_count } => {
                let (l, m) = regulus_instance(a_count, b_count, field, seed)?;
                Construction::Lines(l, m)
            }
            ConstructionKind::Random { m, n } => Construction::Instance(random_instance(m, n, field, seed)?),
            ConstructionKind::RandomNoRichLines { m, n } => {
                Construction::Instance(random_no_rich_lines_instance(m, n, field, seed)?)
            }
        })
    }
}
