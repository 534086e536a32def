//! Returns to the identity alcove: frequent in rank 1, rare in rank 3.

use billiard_walks::linalg::q;
use billiard_walks::rootsys::{build_root_system, Family};
use billiard_walks::subwords::{count_returns, LetterWord};

fn main() -> billiard_walks::error::Result<()> {
    let p = q(1, 2);
    for rank in 1..=3 {
        let rs = build_root_system(Family::A, rank)?;
        let word = LetterWord::coxeter(&rs);
        let seeds = 50;
        let total: u64 = (0..seeds).map(|s| count_returns(&rs, &word, &p, 10_000, s)).sum::<Result<u64, _>>()?;
        println!("{}: mean returns over K = 10⁴ periods: {:.2}", rs.name(), total as f64 / seeds as f64);
    }
    Ok(())
}
