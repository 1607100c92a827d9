// An average of roots of unity is an algebraic integer exactly when the
// roots sum to zero or all coincide. Checked here over every small
// multiset of 5th roots of unity.
//
// ```text
// cargo run --example average_of_roots
// ```

use rootavg::{dichotomy_check, reduce, ExpSum};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let n = 5;
    let mut checked = 0;
    let mut integral = 0;
    for code in 1..7u64.pow(n as u32) {
        // counts in base 7, so each exponent appears at most 6 times
        let counts: Vec<u64> = (0..n).map(|i| code / 7u64.pow(i as u32) % 7).collect();
        let s = ExpSum::from_counts(n, counts)?;
        assert!(dichotomy_check(&s)?);
        checked += 1;
        if reduce(&s).is_divisible_by(s.total()) {
            integral += 1;
        }
    }
    println!("n = {n}: dichotomy holds on all {checked} multisets; {integral} have an integral average");

    for counts in [
        vec![1, 1, 1, 1, 1],
        vec![3, 0, 0, 0, 0],
        vec![1, 2, 0, 0, 2],
        vec![2, 2, 2, 2, 2],
    ] {
        let s = ExpSum::from_counts(n, counts.clone())?;
        let sum = reduce(&s);
        println!(
            "  counts {counts:?}: sum = {sum}, average integral: {}",
            sum.is_divisible_by(s.total())
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
