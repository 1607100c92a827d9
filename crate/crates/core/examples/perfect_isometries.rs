// Perfect self-isometries of C_p induced by bijections of its characters.
// Every one found is x ↦ αx + β, i.e. the automorphism action χ_x ↦ χ_{αx}
// followed by multiplication by the linear character χ_β.
//
// ```text
// cargo run --release --example perfect_isometries -- 7
// ```

use rootavg::{classify_perfect, is_perfect, ModFunction, SearchConfig};

fn run(max_p: usize) -> Result<(), Box<dyn std::error::Error>> {
    for p in [2, 3, 5, 7].into_iter().filter(|&p| p <= max_p) {
        let perfect = classify_perfect(p, &SearchConfig::default())?;
        println!(
            "p = {p}: {} perfect isometries (p(p-1) = {})",
            perfect.len(),
            p * (p - 1)
        );
        for r in perfect.iter().take(3) {
            let (alpha, beta) = r.linear_form.expect("perfect isometries are affine");
            println!(
                "  f = {:?}: I_alpha with alpha={alpha}, then I_beta with beta={beta}",
                r.f.table()
            );
        }
    }

    let swap = ModFunction::new(5, vec![1, 0, 2, 3, 4])?;
    let r = is_perfect(&swap)?;
    println!(
        "transposition (0 1) on Z_5: integrality {}, separation {}, perfect {}",
        r.integrality_ok, r.separation_ok, r.perfect
    );
    println!("{}", serde_json::to_string(&r)?);
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
