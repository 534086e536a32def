//! Samples `v_p(b^K)` for a Coxeter word and replays the hyperplane hits.

use billiard_walks::linalg::q;
use billiard_walks::rootsys::{build_root_system, Family};
use billiard_walks::subwords::{sample_subword_element, LetterWord};

fn main() -> billiard_walks::error::Result<()> {
    let rs = build_root_system(Family::A, 2)?;
    let word = LetterWord::coxeter(&rs);
    let (u, log) = sample_subword_element(&rs, &word, &q(4, 5), 5, 42, true)?;
    let log = log.unwrap();
    println!("word {word}, processing order {:?}", word.processing_order());
    for h in &log.hits {
        let action = if h.crossed { "cross" } else { "reflect" };
        let c: Vec<String> = h.centroid.iter().map(|x| format!("{x:+.3}")).collect();
        println!("hit {:>2}  s{}  {action:<7}  centroid ({})", h.index, h.letter, c.join(", "));
    }
    println!("{} of {} hits crossed; final length {}", log.crossed_count(), log.hits.len(), u.coxeter_length(&rs));
    Ok(())
}
