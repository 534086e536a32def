//! Words over the simple reflections and Bernoulli subword sampling.
//!
//! Words are stored in written order `s_{i_m} ⋯ s_{i_1}`. Position 1 is the
//! rightmost letter and is processed first.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{q_to_f64, Q};
use crate::rootsys::RootSystem;
use crate::weylgroup::{AffineElement, FastElement, FastGroup};

/// Name recorded in output metadata.
pub const GENERATOR_NAME: &str = "ChaCha8 (rand_chacha 0.3), seed_from_u64(seed), stream = trial index";

/// Generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LetterWord {
    letters: Vec<usize>,
}

impl LetterWord {
    pub fn new(letters: Vec<usize>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(LetterWord { letters })
    }

    /// Like [`LetterWord::new`], also checking every letter against `rs`.
    pub fn for_system(rs: &RootSystem, letters: Vec<usize>) -> Result<Self> {
        for &i in &letters {
            rs.check_letter(i)?;
        }
        Self::new(letters)
    }

    /// The Coxeter word `s_r ⋯ s_1 s_0`.
    pub fn coxeter(rs: &RootSystem) -> Self {
        LetterWord {
            letters: (0..=rs.rank()).rev().collect(),
        }
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letters in the order they are applied (rightmost first).
    pub fn processing_order(&self) -> Vec<usize> {
        self.letters.iter().rev().copied().collect()
    }

    /// Letter at 1-indexed position `j` (position 1 is rightmost).
    pub fn at_position(&self, j: usize) -> usize {
        self.letters[self.letters.len() - j]
    }

    pub fn contains_all(&self, num_letters: usize) -> bool {
        (0..num_letters).all(|i| self.letters.contains(&i))
    }

    /// `Z = {j : i_j = 0}`, 1-indexed from the right.
    pub fn z_positions(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&j| self.at_position(j) == 0).collect()
    }

    pub fn count_zeros(&self) -> usize {
        self.letters.iter().filter(|&&i| i == 0).count()
    }

    pub fn max_letter(&self) -> usize {
        *self.letters.iter().max().expect("non-empty")
    }

    /// `self^k`, concatenated.
    pub fn power(&self, k: usize) -> Self {
        LetterWord {
            letters: self.letters.repeat(k.max(1)),
        }
    }

    pub fn element(&self, rs: &RootSystem) -> Result<AffineElement> {
        AffineElement::from_word(rs, &self.letters)
    }

    /// Moves the leftmost letter to the right end.
    pub fn rotate_left(&self) -> Self {
        let mut v = self.letters.clone();
        v.rotate_left(1);
        LetterWord { letters: v }
    }

    /// Comma-separated form accepted by [`FromStr`].
    pub fn to_csv(&self) -> String {
        self.letters.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for LetterWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.letters {
            write!(f, "s{i}")?;
        }
        Ok(())
    }
}

impl FromStr for LetterWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .split(',')
            .map(|t| t.trim())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad letter {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(letters)
    }
}

/// Bernoulli(p) draws. Exact rationals with 64-bit parts are sampled by an
/// unbiased integer comparison; anything larger falls back to `f64`.
#[derive(Clone, Copy, Debug)]
pub enum KeepRule {
    Never,
    Always,
    Ratio { num: u64, den: u64 },
    Float(f64),
}

impl KeepRule {
    pub fn new(p: &Q) -> Result<Self> {
        if p.is_negative() || *p > Q::one() {
            return Err(Error::ProbabilityOutOfRange(crate::linalg::q_to_string(p)));
        }
        if p.is_zero() {
            return Ok(KeepRule::Never);
        }
        if p.is_one() {
            return Ok(KeepRule::Always);
        }
        Ok(match (p.numer().to_u64(), p.denom().to_u64()) {
            (Some(num), Some(den)) => KeepRule::Ratio { num, den },
            _ => KeepRule::Float(q_to_f64(p)),
        })
    }

    #[inline]
    pub fn draw<R: Rng>(&self, rng: &mut R) -> bool {
        match *self {
            KeepRule::Never => false,
            KeepRule::Always => true,
            KeepRule::Ratio { num, den } => rng.gen_range(0..den) < num,
            KeepRule::Float(p) => rng.gen::<f64>() < p,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Hit {
    /// 1-based hit index `M`.
    pub index: u64,
    pub letter: usize,
    pub crossed: bool,
    /// Ambient coordinates of the current alcove centroid after the hit.
    pub centroid: Vec<f64>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct TrajectoryLog {
    pub hits: Vec<Hit>,
    /// Coxeter length at the end of each period.
    pub period_lengths: Vec<u64>,
}

impl TrajectoryLog {
    pub fn crossed_count(&self) -> usize {
        self.hits.iter().filter(|h| h.crossed).count()
    }
}

/// Runs `periods` periods of `word` on `u` in place, drawing from `rng`.
pub fn run_periods<R: Rng>(
    group: &FastGroup,
    word: &[usize],
    keep: KeepRule,
    periods: u64,
    rng: &mut R,
    u: &mut FastElement,
    mut log: Option<&mut TrajectoryLog>,
) {
    let order: Vec<usize> = word.iter().rev().copied().collect();
    let mut index = 0u64;
    for _ in 0..periods {
        for &i in &order {
            index += 1;
            let crossed = keep.draw(rng);
            if crossed {
                group.apply_letter(u, i);
            }
            if let Some(log) = log.as_deref_mut() {
                log.hits.push(Hit {
                    index,
                    letter: i,
                    crossed,
                    centroid: group.centroid_f64(u),
                });
            }
        }
        if let Some(log) = log.as_deref_mut() {
            log.period_lengths.push(group.coxeter_length(u));
        }
    }
}

/// Samples `v_p(b^K)` using stream 0 of `seed`.
pub fn sample_subword_element(
    rs: &RootSystem,
    word: &LetterWord,
    p: &Q,
    periods: u64,
    seed: u64,
    log: bool,
) -> Result<(AffineElement, Option<TrajectoryLog>)> {
    for &i in word.letters() {
        rs.check_letter(i)?;
    }
    let keep = KeepRule::new(p)?;
    let group = FastGroup::new(rs);
    let mut rng = trial_rng(seed, 0);
    let mut u = group.identity();
    let mut trajectory = log.then(TrajectoryLog::default);
    run_periods(&group, word.letters(), keep, periods, &mut rng, &mut u, trajectory.as_mut());
    Ok((group.to_exact(&u), trajectory))
}

/// Number of hit indices `M ∈ [1, K·m]` after which the walk sits at the
/// identity.
pub fn count_returns(rs: &RootSystem, word: &LetterWord, p: &Q, periods: u64, seed: u64) -> Result<u64> {
    let group = FastGroup::new(rs);
    let keep = KeepRule::new(p)?;
    let mut rng = trial_rng(seed, 0);
    Ok(count_returns_with(&group, word, keep, periods, &mut rng))
}

pub fn count_returns_with<R: Rng>(group: &FastGroup, word: &LetterWord, keep: KeepRule, periods: u64, rng: &mut R) -> u64 {
    let order = word.processing_order();
    let mut u = group.identity();
    let mut returns = 0;
    for _ in 0..periods {
        for &i in &order {
            if keep.draw(rng) {
                group.apply_letter(&mut u, i);
            }
            if group.is_identity(&u) {
                returns += 1;
            }
        }
    }
    returns
}

/// Whether `s_i` and `s_j` commute in `W`, i.e. the Coxeter matrix entry is
/// 2. Equal letters count as commuting.
pub fn letters_commute(rs: &RootSystem, i: usize, j: usize) -> bool {
    if i == j {
        return true;
    }
    let root = |k: usize| {
        if k == 0 {
            -rs.highest_root()
        } else {
            rs.simple_roots()[k - 1].clone()
        }
    };
    root(i).dot(&root(j)).is_zero()
}

/// Words one move away: the two cyclic rotations and every swap of adjacent
/// distinct commuting letters.
pub fn neighbors(rs: &RootSystem, word: &LetterWord) -> Vec<LetterWord> {
    let mut out = Vec::new();
    let m = word.len();
    if m > 1 {
        out.push(word.rotate_left());
        let mut v = word.letters.clone();
        v.rotate_right(1);
        out.push(LetterWord { letters: v });
    }
    for k in 0..m.saturating_sub(1) {
        let (a, b) = (word.letters[k], word.letters[k + 1]);
        if a != b && letters_commute(rs, a, b) {
            let mut v = word.letters.clone();
            v.swap(k, k + 1);
            out.push(LetterWord { letters: v });
        }
    }
    out
}

pub const DEFAULT_ORBIT_BUDGET: usize = 200_000;

/// Breadth-first search over rotations and commutation swaps.
pub fn cyclic_commutation_equivalent(rs: &RootSystem, w1: &LetterWord, w2: &LetterWord) -> Result<bool> {
    if w1.len() != w2.len() {
        return Ok(false);
    }
    let mut s1 = w1.letters.clone();
    let mut s2 = w2.letters.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return Ok(false);
    }
    let orbit = commutation_orbit(rs, w1, DEFAULT_ORBIT_BUDGET)?;
    Ok(orbit.contains(w2))
}

/// All words cyclically commutation equivalent to `word`.
pub fn commutation_orbit(rs: &RootSystem, word: &LetterWord, budget: usize) -> Result<HashSet<LetterWord>> {
    let mut seen = HashSet::from([word.clone()]);
    let mut queue = VecDeque::from([word.clone()]);
    while let Some(w) = queue.pop_front() {
        for n in neighbors(rs, &w) {
            if seen.insert(n.clone()) {
                if seen.len() > budget {
                    return Err(Error::BudgetExceeded {
                        what: "commutation orbit",
                        needed: seen.len() as u128,
                        budget: budget as u128,
                    });
                }
                queue.push_back(n);
            }
        }
    }
    Ok(seen)
}

/// The cyclic rotation whose rightmost letter is the unique `s_0`.
pub fn rotate_to_s0_last(word: &LetterWord) -> Result<LetterWord> {
    let zeros = word.count_zeros();
    if zeros != 1 {
        return Err(Error::S0Count(zeros));
    }
    let k = word.letters.iter().position(|&i| i == 0).expect("one zero");
    let mut v = word.letters.clone();
    v.rotate_left(k + 1);
    Ok(LetterWord { letters: v })
}
