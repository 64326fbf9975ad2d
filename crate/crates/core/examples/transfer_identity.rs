//! Move a random instance into generic position and compare point-plane
//! incidences with intersections of the image lines.

use incidence_lab::constructions::{random_instance, seeded_rng};
use incidence_lab::counting::{count_incidences, count_intersecting_pairs, count_line_intersections};
use incidence_lab::transform::{genericize, is_fully_generic, DEFAULT_MAX_RETRIES};
use incidence_lab::PrimeField;

fn main() -> incidence_lab::Result<()> {
    let mut rng = seeded_rng(42);
    for (p, m, n) in [(101, 40, 60), (1009, 40, 60), (1009, 200, 300)] {
        let f = PrimeField::new(p)?;
        let inst = random_instance(m, n, f, p + m as u64)?;
        let g = genericize(inst.points(), inst.planes(), &mut rng, DEFAULT_MAX_RETRIES)?;
        let (l, mm) = (g.phi_lines(), g.psi_lines());
        println!(
            "F_{p} |P|={m} |Q|={n}: I(P,Q)={} I(L,M)={} intersecting pairs={} all images disjoint={}",
            count_incidences(&inst),
            count_line_intersections(&l, &mm),
            count_intersecting_pairs(&l, &mm),
            is_fully_generic(&g.points, &g.planes),
        );
    }

    let tiny = PrimeField::new(5)?;
    let dense = random_instance(90, 90, tiny, 1)?;
    match genericize(dense.points(), dense.planes(), &mut rng, DEFAULT_MAX_RETRIES) {
        Ok(_) => println!("F_5 with 90 points: unexpectedly generic"),
        Err(e) => println!("F_5 with 90 points: {e}"),
    }
    Ok(())
}
