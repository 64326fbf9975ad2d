//! Lines meeting the z-axis and the plane x = 1 as points of F_p^3, and the
//! point/plane to line maps built on them.

use incidence_lab::geom::{line_line_intersection, point_on_plane, Plane3, Point3};
use incidence_lab::transform::{phi, psi, star, unstar};
use incidence_lab::PrimeField;

fn main() -> incidence_lab::Result<()> {
    let f = PrimeField::new(101)?;
    let p = Point3::from_ints(f, 3, 7, 11);
    let q = Plane3::from_ints(f, 2, 1, 1, -24)?;
    let r = Plane3::from_ints(f, 1, 1, 1, 0)?;

    let l = phi(&p)?;
    println!("phi(p) = base {:?} dir {:?}", values(l.base().coords()), values(l.dir()));
    for plane in [&q, &r] {
        let m = psi(plane)?;
        let meets = line_line_intersection(&l, &m)?;
        println!(
            "plane {:?}: p on plane = {}, phi(p) meets psi(q) at {:?}",
            values(plane.coeffs()),
            point_on_plane(&p, plane)?,
            meets.map(|s| values(s.coords()))
        );
        if let Some(s) = meets {
            // The meeting point encodes a line through p inside the plane.
            let line = unstar(&incidence_lab::StarCoords { a: s.x, b: s.y, c: s.z });
            println!("  encoded line: base {:?} dir {:?}", values(line.base().coords()), values(line.dir()));
            println!("  star of that line: {:?}", star(&line).map(|c| values(c.as_point().coords())));
        }
    }

    let failures = incidence_lab::cli::lemma_failures(f, 10_000, 1);
    println!("10000 random pairs, {failures} disagreements between incidence and intersection");
    Ok(())
}

fn values<const N: usize>(xs: [incidence_lab::FieldElement; N]) -> [u64; N] {
    xs.map(|x| x.value())
}
