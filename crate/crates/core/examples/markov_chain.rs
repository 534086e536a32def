//! The finite-part chain of a billiard walk: its exact transition matrix
//! is doubly stochastic, so the uniform distribution is stationary.

use billiard_walks::linalg::{q, q_to_string};
use billiard_walks::rootsys::{build_root_system, Family};
use billiard_walks::sigma::{markov_transition_matrix, DEFAULT_SUBSET_BUDGET};
use billiard_walks::subwords::LetterWord;
use billiard_walks::weylgroup::DEFAULT_WEYL_BUDGET;

fn main() -> billiard_walks::error::Result<()> {
    let rs = build_root_system(Family::A, 2)?;
    let word = LetterWord::coxeter(&rs);
    let t = markov_transition_matrix(&rs, &word, &q(1, 3), DEFAULT_WEYL_BUDGET, DEFAULT_SUBSET_BUDGET)?;
    for row in &t.entries {
        let cells: Vec<String> = row.iter().map(|x| format!("{:>6}", q_to_string(x))).collect();
        println!("{}", cells.join(" "));
    }
    let n = t.len();
    let uniform = vec![q(1, n as i64); n];
    println!("row sums all 1: {}", t.row_sums().iter().all(|s| *s == q(1, 1)));
    println!("uniform stationary: {}", t.left_apply(&uniform) == uniform);
    Ok(())
}
