//! The plain-text instance format.
//!
//! One record per line, `#` starts a comment:
//!
//! ```text
//! F <p>
//! P <x> <y> <z>
//! Q <a> <b> <c> <d>          # the plane a x + b y + c z + d = 0
//! L <bx> <by> <bz> <dx> <dy> <dz>
//! ```
//!
//! The `F` header must precede every other record. Integers may be of any
//! size and sign; they are reduced mod p on load.

use std::fmt::Write as _;
use std::path::Path;

use crate::counting::Instance;
use crate::error::{Error, Result};
use crate::ff::{FieldElement, PrimeField};
use crate::geom::{Line3, Plane3, Point3};

/// Everything a file can hold, in file order, before deduplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub field: PrimeField,
    pub points: Vec<Point3>,
    pub planes: Vec<Plane3>,
    pub lines: Vec<Line3>,
}

impl InstanceFile {
    pub fn instance(&self) -> Result<Instance> {
        Instance::new(self.field, self.points.clone(), self.planes.clone())
    }

    /// Splits `L` records into lines with direction `(1, 0, u)` and lines
    /// with direction `(0, 1, u)`, the shapes of `phi`- and `psi`-images.
    pub fn star_families(&self) -> (Vec<Line3>, Vec<Line3>) {
        let (mut phis, mut psis) = (Vec::new(), Vec::new());
        for l in &self.lines {
            let d = l.dir();
            if d[0].is_one() && d[1].is_zero() {
                phis.push(*l);
            } else if d[0].is_zero() && d[1].is_one() {
                psis.push(*l);
            }
        }
        (phis, psis)
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Reduces a decimal integer of arbitrary length mod p.
fn parse_residue(token: &str, field: PrimeField) -> Option<FieldElement> {
    let (negative, digits) = match token.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, token.strip_prefix('+').unwrap_or(token)),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let p = field.modulus();
    let value = digits.bytes().fold(0u64, |acc, b| (acc * 10 + u64::from(b - b'0')) % p);
    let e = field.from_u64(value);
    Some(if negative { -e } else { e })
}

pub fn parse_instance_str(text: &str) -> Result<InstanceFile> {
    let mut field: Option<PrimeField> = None;
    let (mut points, mut planes, mut lines) = (Vec::new(), Vec::new(), Vec::new());
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        let mut tokens = content.split_whitespace();
        let Some(tag) = tokens.next() else {
            continue;
        };
        let args: Vec<&str> = tokens.collect();
        if tag == "F" {
            if field.is_some() {
                return Err(parse_error(line_no, "repeated F header"));
            }
            let [value] = args[..] else {
                return Err(parse_error(line_no, "F expects one integer"));
            };
            let p: u64 = value.parse().map_err(|_| parse_error(line_no, format!("bad modulus {value:?}")))?;
            field = Some(PrimeField::new(p)?);
            continue;
        }
        let f = field.ok_or_else(|| parse_error(line_no, "record before the F header"))?;
        let expected = match tag {
            "P" => 3,
            "Q" => 4,
            "L" => 6,
            other => return Err(parse_error(line_no, format!("unknown record {other:?}"))),
        };
        if args.len() != expected {
            return Err(parse_error(line_no, format!("{tag} expects {expected} integers, got {}", args.len())));
        }
        let v = args
            .iter()
            .map(|t| parse_residue(t, f).ok_or_else(|| parse_error(line_no, format!("bad integer {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        match tag {
            "P" => points.push(Point3 { x: v[0], y: v[1], z: v[2] }),
            "Q" => planes.push(Plane3::new(v[0], v[1], v[2], v[3]).map_err(|e| parse_error(line_no, e.to_string()))?),
            _ => lines.push(
                Line3::new(Point3 { x: v[0], y: v[1], z: v[2] }, [v[3], v[4], v[5]])
                    .map_err(|e| parse_error(line_no, e.to_string()))?,
            ),
        }
    }
    let field = field.ok_or_else(|| parse_error(1, "missing F header"))?;
    Ok(InstanceFile { field, points, planes, lines })
}

pub fn read_instance_file(path: &Path) -> Result<InstanceFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_instance_str(&text)
}

/// Reads, canonicalizes and deduplicates the points and planes of a file.
pub fn parse_instance_file(path: &Path) -> Result<Instance> {
    read_instance_file(path)?.instance()
}

pub fn point_record(p: &Point3) -> String {
    format!("P {} {} {}", p.x, p.y, p.z)
}

pub fn plane_record(q: &Plane3) -> String {
    format!("Q {} {} {} {}", q.a(), q.b(), q.c(), q.d())
}

pub fn line_record(l: &Line3) -> String {
    let (b, d) = (l.base(), l.dir());
    format!("L {} {} {} {} {} {}", b.x, b.y, b.z, d[0], d[1], d[2])
}

pub fn write_instance(inst: &Instance) -> String {
    let mut out = format!("F {}\n", inst.field().modulus());
    for p in inst.points() {
        let _ = writeln!(out, "{}", point_record(p));
    }
    for q in inst.planes() {
        let _ = writeln!(out, "{}", plane_record(q));
    }
    out
}
