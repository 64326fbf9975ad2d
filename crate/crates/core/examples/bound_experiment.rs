//! Full incidence reports on seeded random instances, written as CSV.

use incidence_lab::cli::{run_experiment, Kind, SizeArgs};
use incidence_lab::PrimeField;

fn main() -> incidence_lab::Result<()> {
    let f = PrimeField::new(1009)?;
    let sizes = SizeArgs { k: 5, n: 50, m: 30, a: 3, b: 4 };
    let mut out = csv::Writer::from_writer(std::io::stdout());
    out.write_record(["kind", "seed", "incidences", "intersections", "best_s", "best_t", "rhs", "ratio"]).unwrap();
    for (name, kind) in [("random", Kind::Random), ("random-no-rich-lines", Kind::RandomNoRichLines)] {
        for r in run_experiment(kind, f, &sizes, 10, 2024)? {
            let rep = r.report;
            out.serialize((name, r.seed, rep.incidences, rep.intersections, rep.best_s, rep.best_t, rep.rhs, rep.ratio)).unwrap();
        }
    }
    out.flush()?;
    Ok(())
}
