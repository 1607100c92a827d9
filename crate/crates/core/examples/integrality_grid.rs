// The numerators Σ_x ω^{a·f(x) + b·x} over the full (a, b) grid, and which
// of them are divisible by n.
//
// ```text
// cargo run --example integrality_grid
// ```

use rootavg::integrality::witness_grid;
use rootavg::{galois_equivariance_check, passes_all, ModFunction};

fn show(label: &str, f: &ModFunction) -> Result<(), Box<dyn std::error::Error>> {
    println!("{label}: f = {f}");
    let grid = witness_grid(f);
    let failing: Vec<_> = grid.iter().filter(|w| !w.integral).collect();
    println!("  passes all (a, b): {}", passes_all(f));
    println!("  {} of {} cells fail", failing.len(), grid.len());
    for w in failing.iter().take(4) {
        println!("    a={} b={}: numerator {}", w.a, w.b, w.numerator);
    }
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    show("x^2 over Z_5", &ModFunction::from_fn(5, |x| (x * x) as i64)?)?;
    show(
        "x^3 + x over Z_6",
        &ModFunction::from_fn(6, |x| (x * x * x + x) as i64)?,
    )?;
    show("4x + 3 over Z_8", &ModFunction::linear(8, 4, 3)?)?;
    show("x^2 over Z_4", &ModFunction::from_fn(4, |x| (x * x) as i64)?)?;

    // Scaling (a, b) by a unit k acts on the numerator as σ_k.
    let f = ModFunction::new(6, vec![3, 0, 5, 5, 1, 2])?;
    let ok = (0..6).all(|a| (0..6).all(|b| galois_equivariance_check(&f, a, b, 5).unwrap()));
    println!("\nnumerator(5a, 5b) = sigma_5(numerator(a, b)) for {f}: {ok}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
