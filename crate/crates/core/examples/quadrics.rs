//! Quadrics through three lines, and the two rulings of the saddle z = xy.

use incidence_lab::constructions::{first_ruling, random_line, regulus_instance, second_ruling, seeded_rng};
use incidence_lab::counting::count_line_intersections;
use incidence_lab::surfaces::{line_in_surface, lines_on_quadric, quadric_richness, quadric_through_lines, quadrics_through_lines};
use incidence_lab::{PrimeField, Quadric};

fn main() -> incidence_lab::Result<()> {
    let f = PrimeField::new(101)?;
    let saddle = Quadric::saddle(f);
    let rulings = [first_ruling(f.elem(0)), first_ruling(f.elem(1)), first_ruling(f.elem(2))];
    let q = quadric_through_lines(&rulings[0], &rulings[1], &rulings[2]);
    println!("quadric through x=a, z=ay for a = 0, 1, 2: {:?}", q.coeffs().map(|c| c.value()));
    println!("equals the saddle: {}", q == saddle);
    println!("contains y=5, z=5x: {}", line_in_surface(&second_ruling(f.elem(5)), &q)?);

    let mut rng = seeded_rng(7);
    let random = [random_line(f, &mut rng), random_line(f, &mut rng), random_line(f, &mut rng)];
    let basis = quadrics_through_lines([&random[0], &random[1], &random[2]]);
    println!("three random lines lie on a {}-dimensional space of quadrics", basis.len());

    let (l, m) = regulus_instance(4, 5, f, 3)?;
    println!("regulus 4 x 5: {} intersection points", count_line_intersections(&l, &m));
    let all: Vec<_> = l.iter().chain(&m).cloned().collect();
    println!("lines of the instance on the saddle: {}", lines_on_quadric(&saddle, &all).len());
    for r in quadric_richness(&l, &m).iter().take(3) {
        println!("rich surface holds {} lines of L and {} of M", r.l_count, r.m_count);
    }
    Ok(())
}
