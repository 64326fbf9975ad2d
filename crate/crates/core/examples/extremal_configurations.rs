//! The configurations that make each term of the incidence bound tight.

use incidence_lab::constructions::{regulus_instance, rich_line_instance};
use incidence_lab::counting::{count_incidences, count_line_intersections, max_collinear, rich_line_stats};
use incidence_lab::PrimeField;

fn main() -> incidence_lab::Result<()> {
    let f = PrimeField::new(101)?;
    println!("k-1 collinear points, n planes through their line:");
    for (k, n) in [(3, 4), (5, 6), (10, 10), (102, 102)] {
        let inst = rich_line_instance(k, n, f, 1)?;
        let best = rich_line_stats(&inst).into_iter().max_by_key(|s| (s.s_count, s.t_count)).unwrap();
        println!(
            "  k={k:>3} n={n:>3}: incidences {:>5} (expected {:>5}), max collinear {}, richest line (s, t) = ({}, {})",
            count_incidences(&inst),
            (k - 1) * n,
            max_collinear(&inst),
            best.s_count,
            best.t_count
        );
    }
    println!("two rulings of z = xy:");
    for (a, b) in [(1, 1), (3, 4), (10, 20)] {
        let (l, m) = regulus_instance(a, b, f, 1)?;
        println!("  {a} x {b}: {} intersection points", count_line_intersections(&l, &m));
    }
    match rich_line_instance(103, 1, f, 1) {
        Ok(_) => unreachable!(),
        Err(e) => println!("k = 103: {e}"),
    }
    Ok(())
}
