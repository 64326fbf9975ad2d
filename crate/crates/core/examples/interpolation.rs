//! Lowest-degree surfaces vanishing on a family of lines.

use incidence_lab::constructions::{random_line, seeded_rng};
use incidence_lab::surfaces::{interpolation_degree_bound, line_in_surface, min_degree_surface};
use incidence_lab::{Polynomial3, PrimeField};

fn main() -> incidence_lab::Result<()> {
    let f = PrimeField::new(32003)?;
    let mut rng = seeded_rng(11);
    let mut lines = Vec::new();
    println!("lines  degree  bound");
    for n in 1..=24 {
        lines.push(random_line(f, &mut rng));
        let s = min_degree_surface(&lines)?;
        assert!(lines.iter().all(|l| line_in_surface(l, &s).unwrap()));
        println!("{n:>5}  {:>6}  {:>5}", s.degree(), interpolation_degree_bound(n));
    }
    Ok(())
}
