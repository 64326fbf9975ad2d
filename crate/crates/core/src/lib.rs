//! Exact point-plane incidence geometry over prime fields.
//!
//! Points and planes of F_p^3 are sent to lines by a fixed parametrization
//! of the lines meeting the z-axis and the plane `x = 1`: a point becomes the
//! pencil of such lines through it, a plane the pencil of such lines inside
//! it. An incidence then becomes an intersection of two lines, so
//! point-plane incidence counts turn into line-line intersection counts.
//!
//! Modules:
//! - [`ff`]: arithmetic and exact linear algebra in F_p.
//! - [`geom`]: canonical affine points, lines, planes and affine maps.
//! - [`transform`]: star coordinates, the point and plane maps, general position.
//! - [`surfaces`]: quadrics through lines and minimal-degree interpolating surfaces.
//! - [`counting`]: incidence/intersection counts, rich lines, bound reports.
//! - [`constructions`]: extremal and random instance generators.
//! - [`cli`]: the command-line harness and its plain-text instance format.

pub mod cli;
pub mod constructions;
pub mod counting;
pub mod error;
pub mod ff;
pub mod geom;
pub mod surfaces;
pub mod transform;

pub use counting::{IncidenceReport, Instance};
pub use error::{Error, Result};
pub use ff::{FieldElement, PrimeField};
pub use geom::{AffineMap, Line3, Plane3, Point3};
pub use surfaces::{Polynomial3, Quadric, Surface};
pub use transform::{GenericInstance, StarCoords};
