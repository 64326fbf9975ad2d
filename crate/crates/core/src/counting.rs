//! Exact incidence and intersection counts, rich-line statistics and the
//! bound expression `|P|^(1/2) |Q| + t |P| + s |Q|`.

use std::collections::{BTreeSet, HashMap, HashSet};

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::PrimeField;
use crate::geom::{line_in_plane, line_line_intersection, line_through, plane_plane_intersection, point_on_line, Line3, Plane3, Point3};
use crate::transform::{genericize, DEFAULT_MAX_RETRIES};

/// Deduplicated points and planes over one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    field: PrimeField,
    points: Vec<Point3>,
    planes: Vec<Plane3>,
}

fn dedup<T: Copy + Eq + std::hash::Hash>(items: impl IntoIterator<Item = T>) -> Vec<T> {
    let mut seen = HashSet::new();
    items.into_iter().filter(|x| seen.insert(*x)).collect()
}

impl Instance {
    /// Builds an instance, dropping repeated points and planes while keeping
    /// first occurrences in order.
    pub fn new(field: PrimeField, points: Vec<Point3>, planes: Vec<Plane3>) -> Result<Self> {
        let mismatch = points
            .iter()
            .map(Point3::field)
            .chain(planes.iter().map(Plane3::field))
            .find(|f| *f != field);
        if let Some(other) = mismatch {
            return Err(Error::FieldMismatch { left: field.modulus(), right: other.modulus() });
        }
        Ok(Instance { field, points: dedup(points), planes: dedup(planes) })
    }

    pub fn empty(field: PrimeField) -> Self {
        Instance { field, points: Vec::new(), planes: Vec::new() }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    pub fn planes(&self) -> &[Plane3] {
        &self.planes
    }

    /// Adds a plane; returns false if it was already present.
    pub fn push_plane(&mut self, plane: Plane3) -> bool {
        if self.planes.contains(&plane) {
            return false;
        }
        self.planes.push(plane);
        true
    }
}

/// `I(P, Q)`: the number of incident point-plane pairs.
pub fn count_incidences(inst: &Instance) -> usize {
    inst.points
        .par_iter()
        .map(|p| inst.planes.iter().filter(|q| q.eval(p).is_zero()).count())
        .sum()
}

/// `I(L, M)`: the number of distinct points lying on some line of `lines_l`
/// and some line of `lines_m`. A line present in both families contributes
/// all of its points.
pub fn count_line_intersections(lines_l: &[Line3], lines_m: &[Line3]) -> usize {
    let points: HashSet<Point3> = lines_l
        .par_iter()
        .flat_map_iter(|l| {
            lines_m.iter().flat_map(move |m| -> Vec<Point3> {
                match line_line_intersection(l, m) {
                    Ok(Some(p)) => vec![p],
                    Ok(None) => Vec::new(),
                    Err(_) => l.points().collect(),
                }
            })
        })
        .collect();
    points.len()
}

/// Number of `(l, m)` pairs that meet in exactly one point.
pub fn count_intersecting_pairs(lines_l: &[Line3], lines_m: &[Line3]) -> usize {
    lines_l
        .par_iter()
        .map(|l| lines_m.iter().filter(|m| matches!(line_line_intersection(l, m), Ok(Some(_)))).count())
        .sum()
}

/// Points of `P` on a line and planes of `Q` containing it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct RichLineStat {
    pub line: Line3,
    pub s_count: usize,
    pub t_count: usize,
}

/// Statistics for every line spanned by two points of `P` or cut out by two
/// planes of `Q`, ordered by canonical line.
pub fn rich_line_stats(inst: &Instance) -> Vec<RichLineStat> {
    let mut candidates = BTreeSet::new();
    let (pts, pls) = (&inst.points, &inst.planes);
    for (i, p) in pts.iter().enumerate() {
        for p2 in &pts[i + 1..] {
            candidates.insert(line_through(p, p2).expect("points are distinct"));
        }
    }
    for (i, q) in pls.iter().enumerate() {
        for q2 in &pls[i + 1..] {
            if let Some(l) = plane_plane_intersection(q, q2).expect("planes are distinct") {
                candidates.insert(l);
            }
        }
    }
    let candidates: Vec<Line3> = candidates.into_iter().collect();
    candidates
        .par_iter()
        .map(|line| RichLineStat {
            line: *line,
            s_count: pts.iter().filter(|p| point_on_line(p, line).expect("same field")).count(),
            t_count: pls.iter().filter(|q| line_in_plane(line, q).expect("same field")).count(),
        })
        .filter(|stat| stat.s_count >= 2 || stat.t_count >= 2)
        .collect()
}

/// The largest number of points of `P` on one line.
pub fn max_collinear(inst: &Instance) -> usize {
    let pts = &inst.points;
    if pts.len() <= 1 {
        return pts.len();
    }
    pts.par_iter()
        .enumerate()
        .map(|(i, p)| {
            let mut by_line: HashMap<Line3, usize> = HashMap::new();
            for p2 in &pts[i + 1..] {
                *by_line.entry(line_through(p, p2).expect("points are distinct")).or_default() += 1;
            }
            by_line.values().max().map_or(1, |c| c + 1)
        })
        .max()
        .unwrap_or(1)
}

/// Smallest admissible thresholds and the bound they give.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Thresholds {
    pub s: usize,
    pub t: usize,
    pub rhs: f64,
}

pub fn bound_rhs(points: usize, planes: usize, s: usize, t: usize) -> f64 {
    (points as f64).sqrt() * planes as f64 + (t * points) as f64 + (s * planes) as f64
}

/// Thresholds `s, t >= 2` minimizing `t |P| + s |Q|` such that no line holds
/// at least `s` points while lying in at least `t` planes.
///
/// For each candidate `s` (2, or one past some observed point count) the
/// least valid `t` is one past the largest plane count among lines with at
/// least `s` points. Ties keep the smaller `s`.
pub fn best_thresholds(stats: &[RichLineStat], points: usize, planes: usize) -> Result<Thresholds> {
    if points > planes {
        return Err(Error::SizeOrderViolation { points, planes });
    }
    let mut candidates: BTreeSet<usize> = stats.iter().map(|st| st.s_count + 1).filter(|&s| s > 2).collect();
    candidates.insert(2);
    let mut best: Option<(usize, usize, usize)> = None;
    for s in candidates {
        let t = stats
            .iter()
            .filter(|st| st.s_count >= s)
            .map(|st| st.t_count + 1)
            .max()
            .unwrap_or(2)
            .max(2);
        let cost = t * points + s * planes;
        if best.map_or(true, |(_, _, c)| cost < c) {
            best = Some((s, t, cost));
        }
    }
    let (s, t, _) = best.expect("s = 2 is always a candidate");
    Ok(Thresholds { s, t, rhs: bound_rhs(points, planes, s, t) })
}

/// Rounds to `digits` significant digits.
pub fn round_sig(x: f64, digits: i32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let scale = 10f64.powi(digits - 1 - x.abs().log10().floor() as i32);
    (x * scale).round() / scale
}

/// Both sides of the incidence bound for one instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IncidenceReport {
    pub field: u64,
    pub sizes: Sizes,
    pub incidences: usize,
    pub intersections: Option<usize>,
    pub max_collinear: usize,
    pub best_s: usize,
    pub best_t: usize,
    pub rhs: f64,
    pub ratio: f64,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Sizes {
    pub points: usize,
    pub planes: usize,
}

pub fn size_warnings(inst: &Instance) -> Vec<String> {
    let p = inst.field.modulus() as u128;
    let n = inst.points.len() as u128;
    if n > p * p {
        vec![format!("|P| = {n} exceeds p^2 = {}; the characteristic condition may fail", p * p)]
    } else {
        Vec::new()
    }
}

/// Counts incidences directly, moves the instance into generic position,
/// counts intersections of the `phi`/`psi` images and checks that the two
/// agree, then fills in the rich-line thresholds and the bound ratio.
pub fn report<R: Rng + ?Sized>(inst: &Instance, rng: &mut R) -> Result<IncidenceReport> {
    let (np, nq) = (inst.points.len(), inst.planes.len());
    if np > nq {
        return Err(Error::SizeOrderViolation { points: np, planes: nq });
    }
    let incidences = count_incidences(inst);
    let intersections = if np == 0 || nq == 0 {
        0
    } else {
        let generic = genericize(&inst.points, &inst.planes, rng, DEFAULT_MAX_RETRIES)?;
        count_line_intersections(&generic.phi_lines(), &generic.psi_lines())
    };
    if incidences != intersections {
        return Err(Error::TransferIdentityViolated { incidences, intersections });
    }
    let thresholds = best_thresholds(&rich_line_stats(inst), np, nq)?;
    let ratio = if thresholds.rhs > 0.0 { incidences as f64 / thresholds.rhs } else { 0.0 };
    Ok(IncidenceReport {
        field: inst.field.modulus(),
        sizes: Sizes { points: np, planes: nq },
        incidences,
        intersections: Some(intersections),
        max_collinear: max_collinear(inst),
        best_s: thresholds.s,
        best_t: thresholds.t,
        rhs: round_sig(thresholds.rhs, 6),
        ratio: round_sig(ratio, 6),
        warnings: size_warnings(inst),
    })
}
