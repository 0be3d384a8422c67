use tandet::ntheory::{count_quad_reps, jacobi, least_nonresidue, pan_sign, sqrt_mod, zolotarev_sign};

fn main() -> tandet::Result<()> {
    for n in [15u64, 21, 23] {
        let z = zolotarev_sign(2, n)?;
        println!(
            "n={n}: (2/n)={}, sign of j -> 2j is {}, Pan sign for c=2 is {}",
            jacobi(2, n)?.value(),
            z.sign,
            pan_sign(2, n)?.sign
        );
    }
    let p = 41;
    println!("least nonresidue mod {p}: {}", least_nonresidue(p));
    println!("sqrt(10) mod {p}: {:?}", sqrt_mod(10, p)?);
    println!("#{{(x,y): x^2+3y^2 = 1 mod {p}}} = {}", count_quad_reps(p, 1, 3, 1)?);
    Ok(())
}
