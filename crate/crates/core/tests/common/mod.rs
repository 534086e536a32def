//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use billiard_walks::linalg::{q, qi, QMat, QVec, Q};
use billiard_walks::rootsys::RootSystem;
use billiard_walks::subwords::LetterWord;
use billiard_walks::weylgroup::AffineElement;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;

pub const PS: [(i64, i64); 3] = [(1, 3), (2, 5), (4, 5)];

pub fn ps() -> Vec<Q> {
    PS.iter().map(|&(a, b)| q(a, b)).collect()
}

/// `e_i` in `ℝⁿ`, 1-indexed.
pub fn e(n: usize, i: usize) -> QVec {
    QVec::unit(n, i - 1)
}

pub fn word(letters: &[usize]) -> LetterWord {
    LetterWord::new(letters.to_vec()).unwrap()
}

/// `x = p / (1 − p)`.
pub fn odds(p: &Q) -> Q {
    p / (Q::one() - p)
}

fn sum_vec(n: usize, terms: impl Iterator<Item = (usize, Q)>) -> QVec {
    let mut v = QVec::zeros(n);
    for (i, c) in terms {
        v[i - 1] += c;
    }
    v
}

/// Type C, `n = r`: `(1/(4np(1−p))) Σ_{i≤n} ((2n−2i+1)(1−p)+p) e_i`.
pub fn zeta_c(n: usize, p: &Q) -> QVec {
    zeta_bc(n, n, p)
}

/// Type B: same sum with prefactor `1/(4(n−1)p(1−p))`.
pub fn zeta_b(n: usize, p: &Q) -> QVec {
    zeta_bc(n, n - 1, p)
}

fn zeta_bc(n: usize, f: usize, p: &Q) -> QVec {
    let one_p = Q::one() - p;
    let pre = Q::one() / (qi(4 * f as i64) * p * &one_p);
    sum_vec(
        n,
        (1..=n).map(|i| (i, &pre * (qi((2 * n - 2 * i + 1) as i64) * &one_p + p))),
    )
}

/// Type D: `(1/(4(n−2)p(1−p))) Σ_{i≤n−1} ((2n−2i−1)(1−p)+p) e_i`.
pub fn zeta_d(n: usize, p: &Q) -> QVec {
    let one_p = Q::one() - p;
    let pre = Q::one() / (qi(4 * (n as i64 - 2)) * p * &one_p);
    sum_vec(
        n,
        (1..n).map(|i| (i, &pre * (qi((2 * n - 2 * i - 1) as i64) * &one_p + p))),
    )
}

/// `c^(d) = s_d s_{d+1} ⋯ s_{n−1} s_{d−1} ⋯ s_1 s_0` in `Ã_{n−1}`.
pub fn c_d(n: usize, d: usize) -> LetterWord {
    let mut v: Vec<usize> = (d..n).collect();
    v.extend((1..d).rev());
    v.push(0);
    word(&v)
}

/// The claimed `(I − R_{c^(d)})^{-1} θ∨` in `Ã_{n−1}`.
pub fn type_a_inverse(n: usize, d: usize, p: &Q) -> QVec {
    let one_p = Q::one() - p;
    let nn = qi(n as i64);
    let omega = |k: usize| sum_vec(n, (1..=k).map(|i| (i, Q::one())));
    let zeta = sum_vec(n, (1..=n).map(|i| (i, qi(i as i64))));
    let a = q(n as i64 + 1, 2) - qi(d as i64) * p / (&nn * &one_p);
    let v = &(&omega(n).scale(&a) + &omega(d).scale(&(p / &one_p))) - &zeta;
    v.scale(&(Q::one() / (&nn * p)))
}

/// Ambient `Ř_{s_i} = p·(swap i, i+1 mod n) + (1−p) I_n`.
pub fn r_check(n: usize, i: usize, p: &Q) -> QMat {
    let (a, b) = if i == 0 { (n - 1, 0) } else { (i - 1, i) };
    let mut perm = QMat::identity(n);
    perm[(a, a)] = qi(0);
    perm[(b, b)] = qi(0);
    perm[(a, b)] = qi(1);
    perm[(b, a)] = qi(1);
    &perm.scale(p) + &QMat::identity(n).scale(&(Q::one() - p))
}

/// `Ř` of a word, multiplied in application order.
pub fn r_check_word(n: usize, w: &LetterWord, p: &Q) -> QMat {
    w.processing_order()
        .iter()
        .fold(QMat::identity(n), |m, &i| &m * &r_check(n, i, p))
}

/// `s_1 s_2 ⋯ s_{n−1} ⋯ s_2 s_1 s_0` in `Ã_{n−1}`.
pub fn palindrome_word(n: usize) -> LetterWord {
    let mut v: Vec<usize> = (1..n).collect();
    v.extend((1..n - 1).rev());
    v.push(0);
    word(&v)
}

/// `(I − R)^{-1} θ∨` for [`palindrome_word`]. The `e_n` coefficient is
/// negative, so the components sum to zero.
pub fn palindrome_inverse(n: usize, p: &Q) -> QVec {
    let one_p = Q::one() - p;
    let nn = n as i64;
    let choose2 = |k: i64| qi(k * (k - 1) / 2);
    let a = qi(nn) / &one_p;
    let mut v = QVec::zeros(n);
    v[0] = &a + choose2(nn - 1);
    v[n - 1] = -(&a + (choose2(nn) - qi(1)));
    for i in 2..n {
        v[i - 1] = choose2(nn + 1) + qi(1) - qi(i as i64 * nn);
    }
    v.scale(&(Q::one() / (qi(nn * (nn + 2)) * p)))
}

/// Word lengths from breadth-first search of the Cayley graph.
pub fn bfs_lengths(rs: &RootSystem, depth: u64) -> HashMap<AffineElement, u64> {
    let id = AffineElement::identity(rs);
    let mut dist = HashMap::from([(id.clone(), 0)]);
    let mut queue = VecDeque::from([id]);
    while let Some(u) = queue.pop_front() {
        let d = dist[&u];
        if d == depth {
            continue;
        }
        for i in 0..rs.num_letters() {
            let v = u.apply_letter(rs, i).unwrap();
            if !dist.contains_key(&v) {
                dist.insert(v.clone(), d + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// A word of length `len` with one `s_0` that uses every letter.
pub fn random_single_s0_word<R: Rng>(rs: &RootSystem, len: usize, rng: &mut R) -> LetterWord {
    let r = rs.rank();
    assert!(len > r);
    let mut v: Vec<usize> = (1..=r).collect();
    while v.len() < len - 1 {
        v.push(rng.gen_range(1..=r));
    }
    v.push(0);
    v.shuffle(rng);
    word(&v)
}

/// A word of length `len` using every letter, with any number of `s_0`.
pub fn random_full_word<R: Rng>(rs: &RootSystem, len: usize, rng: &mut R) -> LetterWord {
    let mut v: Vec<usize> = (0..rs.num_letters()).collect();
    while v.len() < len {
        v.push(rng.gen_range(0..rs.num_letters()));
    }
    v.shuffle(rng);
    word(&v)
}
