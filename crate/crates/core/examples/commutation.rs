//! Words related by rotation and commutation moves share the same
//! variance constant.

use billiard_walks::linalg::{q, q_to_string};
use billiard_walks::rootsys::{build_root_system, Family};
use billiard_walks::sigma::sigma_general;
use billiard_walks::subwords::{commutation_orbit, LetterWord, DEFAULT_ORBIT_BUDGET};

fn main() -> billiard_walks::error::Result<()> {
    let rs = build_root_system(Family::C, 3)?;
    let word: LetterWord = "3,1,2,0,1".parse()?;
    let p = q(3, 5);
    let mut orbit: Vec<LetterWord> = commutation_orbit(&rs, &word, DEFAULT_ORBIT_BUDGET)?.into_iter().collect();
    orbit.sort_by_key(|w| w.to_string());
    println!("{} words equivalent to {word}:", orbit.len());
    for w in &orbit {
        println!("  {:<14} σ² = {}", w.to_string(), q_to_string(&sigma_general(&rs, w, &p)?.value));
    }
    Ok(())
}
