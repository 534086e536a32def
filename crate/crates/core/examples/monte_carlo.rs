//! Estimates the covariance of `v_p(b^K)•/√K` by simulation and compares
//! it with the exact constant.

use billiard_walks::linalg::{q, q_to_f64};
use billiard_walks::montecarlo::estimate_walk_stats;
use billiard_walks::rootsys::{build_root_system, Family};
use billiard_walks::sigma::{length_limit, sigma_single_s0};
use billiard_walks::subwords::LetterWord;

fn main() -> billiard_walks::error::Result<()> {
    let p = q(4, 5);
    for family in [Family::A, Family::C, Family::G] {
        let rs = build_root_system(family, 2)?;
        let word = LetterWord::coxeter(&rs);
        let exact = sigma_single_s0(&rs, &word, &p)?.value;
        let stats = estimate_walk_stats(&rs, &word, &p, 2_000, 2_000, 1)?;
        println!(
            "{}: σ̂² = {:.4} ± {:.4} (exact {:.4}), isotropy defect {:.3}, E[ℓ]/√K = {:.3} (limit {:.3})",
            rs.name(),
            stats.sigma2_hat,
            stats.sigma2_se,
            q_to_f64(&exact),
            stats.isotropy_defect,
            stats.length_scaling_hat,
            length_limit(&rs, &exact)?
        );
    }
    Ok(())
}
