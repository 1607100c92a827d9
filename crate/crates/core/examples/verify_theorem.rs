// Exhaustive check over all p^p functions Z_p → Z_p: the ones whose a = 1
// averages are all algebraic integers are exactly the p² linear ones.
//
// ```text
// cargo run --release --example verify_theorem -- 7
// ```

use rootavg::{verify_theorem, SearchConfig};

fn run(max_p: usize) -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SearchConfig::default();
    for p in [2, 3, 5, 7].into_iter().filter(|&p| p <= max_p) {
        let r = verify_theorem(p, &cfg)?;
        println!(
            "p = {p}: {:>7} functions, {:>2} pass, {:>2} linear, {} counterexamples ({} ms on {} workers)",
            r.total_functions,
            r.passing,
            r.passing_linear,
            r.counterexamples.len(),
            r.elapsed_ms,
            r.workers
        );
        assert!(r.counterexamples.is_empty() && r.passing == (p * p) as u64);
    }
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    run(5)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max_p = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(7);
    run(max_p)
}
