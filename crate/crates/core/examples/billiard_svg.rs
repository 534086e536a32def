//! Draws a billiard trajectory in each rank-2 type. Pass an output
//! directory as the first argument (default: the system temp directory).

use std::path::PathBuf;

use billiard_walks::linalg::q;
use billiard_walks::render::{trajectory_csv, trajectory_svg, SvgStyle};
use billiard_walks::rootsys::{build_root_system, Family};
use billiard_walks::subwords::{sample_subword_element, LetterWord};

fn main() -> billiard_walks::error::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    for family in [Family::A, Family::C, Family::G] {
        let rs = build_root_system(family, 2)?;
        let word = LetterWord::coxeter(&rs);
        let (_, log) = sample_subword_element(&rs, &word, &q(7, 10), 300, 5, true)?;
        let log = log.unwrap();
        let svg = dir.join(format!("billiard_{}.svg", rs.name()));
        let csv = dir.join(format!("billiard_{}.csv", rs.name()));
        std::fs::write(&svg, trajectory_svg(&rs, &log, &SvgStyle::default())?)?;
        std::fs::write(&csv, trajectory_csv(&rs, &log))?;
        println!("{} -> {}", rs.name(), svg.display());
    }
    Ok(())
}
