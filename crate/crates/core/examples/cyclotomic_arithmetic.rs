// Exact arithmetic in Z[ω]: cyclotomic polynomials, canonical reduction,
// divisibility and Galois conjugation.
//
// ```text
// cargo run --example cyclotomic_arithmetic
// ```

use rootavg::{cyclotomic_poly, reduce, CycInt, ExpSum};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("Cyclotomic polynomials (ascending coefficients):");
    for n in [1, 2, 3, 4, 5, 6, 12, 15] {
        let phi = cyclotomic_poly(n)?;
        let coeffs: Vec<String> = phi.coeffs().iter().map(ToString::to_string).collect();
        println!("  Phi_{n:<3} degree {:>2}: [{}]", phi.degree(), coeffs.join(", "));
    }
    let phi105 = cyclotomic_poly(105)?;
    println!("  Phi_105 has coefficient {} at X^7", phi105.coeffs()[7]);

    // 1 + 2ω + 2ω⁴ over n = 5, i.e. the exponents {0, 1, 1, 4, 4}.
    let sum = ExpSum::from_exponents(5, [0, 1, 1, 4, 4])?;
    let x = reduce(&sum);
    println!("\n1 + 2w + 2w^4 (n=5) reduces to {x}");
    println!("  divisible by 5? {}", x.is_divisible_by(5));
    for k in 1..5 {
        println!("  sigma_{k}: {}", x.galois_conjugate(k)?);
    }

    let full_orbit = reduce(&ExpSum::from_counts(7, vec![1; 7])?);
    println!("\n1 + w + ... + w^6 (n=7) = {full_orbit}");

    let w = CycInt::root(4, 1)?;
    println!("w * w (n=4) = {}", w.mul(&w)?);
    println!("sigma_3(w) (n=4) = {}", w.galois_conjugate(3)?);
    println!("as JSON: {}", serde_json::to_string(&x)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
