//! Exact variance constants from the general subset-sum engine and the
//! single-`s_0` linear solve, side by side.

use billiard_walks::linalg::{q, q_to_string};
use billiard_walks::rootsys::{build_root_system, Family};
use billiard_walks::sigma::{sigma_general, sigma_single_s0};
use billiard_walks::subwords::LetterWord;

fn main() -> billiard_walks::error::Result<()> {
    let p = q(2, 3);
    let cases = [
        (Family::A, 2, "2,1,0"),
        (Family::A, 2, "1,2,1,0"),
        (Family::A, 2, "2,1,1,0"),
        (Family::C, 2, "2,1,2,0"),
        (Family::G, 2, "1,2,1,0"),
        (Family::B, 3, "3,2,1,2,0"),
    ];
    println!("p = {}", q_to_string(&p));
    for (family, rank, word) in cases {
        let rs = build_root_system(family, rank)?;
        let w: LetterWord = word.parse()?;
        let general = sigma_general(&rs, &w, &p)?;
        let single = sigma_single_s0(&rs, &w, &p)?;
        println!(
            "{:<3} {:<10} general {:>10}  single-s0 {:>10}",
            rs.name(),
            w.to_string(),
            q_to_string(&general.value),
            q_to_string(&single.value)
        );
    }
    let rs = build_root_system(Family::A, 2)?;
    let w: LetterWord = "1,0,2,0".parse()?;
    println!("\nwords with several s0 use the general engine: {} -> {}", w, q_to_string(&sigma_general(&rs, &w, &p)?.value));
    Ok(())
}
