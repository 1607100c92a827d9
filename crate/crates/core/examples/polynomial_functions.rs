// Functions Z_n → Z_n: evaluation tables, interpolation over Z_p, linear
// representations and the slope sets W_f.
//
// ```text
// cargo run --example polynomial_functions
// ```

use rootavg::modfun::PolyModN;
use rootavg::{degree, interpolate, stothers_holds, w_set, ModFunction};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // X^3 + X looks cubic, but over Z_6 it agrees with 2X everywhere.
    let cubic = PolyModN::new(6, vec![0, 1, 0, 1])?;
    let f = ModFunction::from_poly(&cubic);
    println!("{cubic} has table {f}");
    println!("  linear representation: {:?}", f.linear_representation());

    // Over a prime every function is a unique polynomial of degree < p.
    let indicator = ModFunction::new(5, vec![1, 0, 0, 0, 0])?;
    println!("\nindicator of 0 over Z_5 interpolates to {}", interpolate(&indicator)?);
    let square = ModFunction::from_fn(5, |x| (x * x) as i64)?;
    println!("x^2 over Z_5: table {square}, degree {}", degree(&square)?);
    println!("  linear representation: {:?}", square.linear_representation());

    println!("\nSlope sets W_f = {{λ : x ↦ f(x) + λx is a permutation}}:");
    let samples = [
        ("identity", ModFunction::identity(7)?),
        ("constant 3", ModFunction::constant(7, 3)?),
        ("x^2", ModFunction::from_fn(7, |x| (x * x) as i64)?),
        ("x^5", ModFunction::from_fn(7, |x| (x.pow(5) % 7) as i64)?),
        ("3x + 1", ModFunction::linear(7, 3, 1)?),
    ];
    for (name, f) in samples {
        let w = w_set(&f)?;
        println!(
            "  p=7 {name:<10} W_f = {:?} (|W_f| = {}), degree {}, bound holds: {}",
            w.members(),
            w.len(),
            degree(&f)?,
            stothers_holds(&f)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
