//! Compares the engine with the closed forms for Coxeter words of every
//! type, including the limiting constant of `E[ℓ]/√K`.

use billiard_walks::cli::table_rows;
use billiard_walks::linalg::q;

fn main() -> billiard_walks::error::Result<()> {
    for p in [q(1, 3), q(4, 5)] {
        println!("p = {p}");
        for row in table_rows(&p, &[], None, 5)? {
            println!(
                "  {}{:<2} σ² = {:<8} E[ℓ]/√K → {:<28} {}",
                row.family, row.rank, row.engine_sigma2, row.length_limit, row.status
            );
        }
    }
    Ok(())
}
