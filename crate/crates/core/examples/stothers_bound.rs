// Exhaustive check of the slope-set bound: if more than (p-3)/2 slopes λ
// make x ↦ f(x) + λx a permutation of Z_p, then f has degree at most 1.
//
// ```text
// cargo run --release --example stothers_bound -- 7
// ```

use std::collections::BTreeMap;

use rootavg::{degree, enumerate_functions, verify_stothers, w_set, SearchConfig};

fn run(max_p: usize) -> Result<(), Box<dyn std::error::Error>> {
    for p in [2, 3, 5, 7].into_iter().filter(|&p| p <= max_p) {
        let r = verify_stothers(p, &SearchConfig::default())?;
        println!(
            "p = {p}: {} functions, {} violations ({} ms)",
            r.total,
            r.violations.len(),
            r.elapsed_ms
        );
    }

    // Largest |W_f| seen among functions of each degree over Z_5.
    let mut widest: BTreeMap<String, usize> = BTreeMap::new();
    for f in enumerate_functions(5)? {
        let entry = widest.entry(degree(&f)?.to_string()).or_default();
        *entry = (*entry).max(w_set(&f)?.len());
    }
    println!("p = 5, max |W_f| by degree: {widest:?}");
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
