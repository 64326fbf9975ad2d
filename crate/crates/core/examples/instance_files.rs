//! Reading and writing the plain-text instance format.

use incidence_lab::cli::{parse_instance_str, write_instance};
use incidence_lab::constructions::{seeded_rng, rich_line_instance};
use incidence_lab::counting::{count_incidences, report};
use incidence_lab::PrimeField;

const SAMPLE: &str = "\
# two points on the plane z = 0 and one off it
F 7
P 1 2 0
P 3 3 0
P 1 1 1
Q 0 0 1 0
Q 1 1 1 -3
";

fn main() -> incidence_lab::Result<()> {
    let file = parse_instance_str(SAMPLE)?;
    let inst = file.instance()?;
    println!("parsed {} points, {} planes, {} incidences", inst.points().len(), inst.planes().len(), count_incidences(&inst));

    let rich = rich_line_instance(4, 5, PrimeField::new(101)?, 9)?;
    let text = write_instance(&rich);
    print!("{text}");
    let back = parse_instance_str(&text)?.instance()?;
    assert_eq!(back, rich);

    let r = report(&back, &mut seeded_rng(0))?;
    println!("{}", serde_json::to_string_pretty(&r).unwrap());

    if let Err(e) = parse_instance_str("F 7\nP 1 2\n") {
        println!("malformed input: {e}");
    }
    Ok(())
}
