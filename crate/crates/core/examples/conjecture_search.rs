// Searches composite moduli for functions whose averages are all
// algebraic integers although no linear polynomial represents them.
//
// ```text
// cargo run --release --example conjecture_search -- 4 6 8
// ```
//
// Pass `--symmetry` to scan only tables with f(0) = 0.

use rootavg::{verify_conjecture, SearchConfig};

fn run(moduli: &[usize], symmetry: bool) -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SearchConfig::default().with_symmetry_reduction(symmetry);
    for &n in moduli {
        let r = verify_conjecture(n, &cfg)?;
        println!("{}", serde_json::to_string(&r)?);
        if r.counterexamples.is_empty() {
            println!("  n = {n}: every passing function is linear ({} of them)", r.passing);
        } else {
            println!("  n = {n}: {} non-linear passing functions", r.counterexamples.len());
        }
    }
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    run(&[1, 4, 6], false)?;
    run(&[6], true)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let symmetry = args.iter().any(|a| a == "--symmetry");
    let moduli = args
        .iter()
        .filter(|a| !a.starts_with("--"))
        .map(|a| a.parse())
        .collect::<Result<Vec<usize>, _>>()?;
    run(if moduli.is_empty() { &[4, 6] } else { &moduli }, symmetry)
}
