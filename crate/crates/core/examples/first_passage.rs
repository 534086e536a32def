//! Excursions of the finite-part chain from the identity back to itself:
//! mean period count and displacement covariance.

use billiard_walks::linalg::{q, q_to_f64};
use billiard_walks::montecarlo::estimate_first_passage;
use billiard_walks::rootsys::{build_root_system, Family};
use billiard_walks::sigma::sigma_single_s0;
use billiard_walks::subwords::LetterWord;

fn main() -> billiard_walks::error::Result<()> {
    let p = q(4, 5);
    for family in [Family::A, Family::C] {
        let rs = build_root_system(family, 2)?;
        let word = LetterWord::coxeter(&rs);
        let st = estimate_first_passage(&rs, &word, &p, 50_000, 3)?;
        let exact = q_to_f64(&sigma_single_s0(&rs, &word, &p)?.value);
        println!(
            "{}: E[T] = {:.3} ± {:.3} (|W̄| = {}), mean D = {:?}, σ̂²_fp = {:.4} (exact {exact:.4})",
            rs.name(),
            st.mean_t,
            st.mean_t_se,
            st.weyl_order,
            st.mean_d.iter().map(|x| format!("{x:+.3}")).collect::<Vec<_>>(),
            st.sigma2_hat_fp
        );
    }
    Ok(())
}
