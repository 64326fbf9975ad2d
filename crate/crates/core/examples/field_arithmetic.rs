//! Prime field arithmetic and exact linear algebra over F_p.

use incidence_lab::ff::{nullspace, rank, PrimeField};

fn main() -> incidence_lab::Result<()> {
    let f = PrimeField::new(101)?;
    let a = f.elem(37);
    let b = f.elem(-5);
    println!("in F_{}: 37 + (-5) = {}, 37 * (-5) = {}", f.modulus(), (a + b).value(), (a * b).value());
    println!("37^-1 = {} (check: {})", a.inv()?.value(), (a * a.inv()?).value());
    println!("2^100 = {} (Fermat says 1)", f.elem(2).pow(100).value());

    let rows: Vec<Vec<_>> = [[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 1, 1]]
        .iter()
        .map(|r| r.iter().map(|&x| f.elem(x)).collect())
        .collect();
    println!("rank = {}", rank(f, &rows, 4)?);
    for v in nullspace(f, &rows, 4)? {
        let shown: Vec<_> = v.iter().map(|x| x.value()).collect();
        println!("kernel vector {shown:?}");
    }

    match PrimeField::new(91) {
        Ok(_) => unreachable!(),
        Err(e) => println!("F_91 rejected: {e}"),
    }
    Ok(())
}
