//! Random subwords and random billiard walks in irreducible affine Weyl
//! groups.
//!
//! A word `b = s_{i_m} ⋯ s_{i_1}` over the simple reflections is repeated
//! `K` times and each letter is kept independently with probability `p`.
//! The product `v_p(b^K)` is the alcove reached by a beam that crosses each
//! wall it hits with probability `p` and reflects otherwise.
//!
//! * [`rootsys`] builds exact root data for types A–G.
//! * [`weylgroup`] does affine group arithmetic, alcove centroids and
//!   Coxeter lengths, with scaled-integer fast paths.
//! * [`subwords`] samples random subwords and commutation classes of words.
//! * [`sigma`] computes the variance constant `σ_b²` exactly.
//! * [`montecarlo`] estimates the same quantities by simulation.
//! * [`render`] exports trajectories as CSV or SVG.
//!
//! ```
//! use billiard_walks::linalg::q;
//! use billiard_walks::rootsys::{build_root_system, Family};
//! use billiard_walks::sigma::sigma_single_s0;
//! use billiard_walks::subwords::LetterWord;
//!
//! let rs = build_root_system(Family::A, 2).unwrap();
//! let word: LetterWord = "2,1,0".parse().unwrap();
//! let s = sigma_single_s0(&rs, &word, &q(4, 5)).unwrap();
//! assert_eq!(s.value, q(4, 3));
//! ```

pub mod error;
pub mod linalg;
pub mod rootsys;
pub mod surd;
pub mod weylgroup;
pub mod subwords;
pub mod sigma;
pub mod montecarlo;
pub mod render;
pub mod cli;
