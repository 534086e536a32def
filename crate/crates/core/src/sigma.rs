//! Exact asymptotic variance `σ_b²` of billiard walks.
//!
//! Two engines agree wherever both apply:
//!
//! * [`sigma_general`] sums over all `2^m` subsets `J` of positions,
//!   `σ² = (1/r)(2 Σ_J w_J ⟨G_J, P_J κ'⟩ + χ)` with
//!   `κ' = (I − R_b)^{-1} Σ_J w_J G_J` and `w_J = p^{|J|}(1−p)^{m−|J|}`.
//! * [`sigma_single_s0`] handles words with exactly one `s_0` through a
//!   single linear solve.
//!
//! [`table_closed_form`] evaluates the closed forms for Coxeter words.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{q_to_f64, q_to_string, qi, QMat, QVec, Q};
use crate::rootsys::{build_root_system, Family, RootSystem};
use crate::subwords::{rotate_to_s0_last, LetterWord};
use crate::surd::SurdSum;
use crate::weylgroup::{mat_mul_scaled, mat_vec_scaled, FiniteWeylTable};

pub const DEFAULT_SUBSET_BUDGET: usize = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    General,
    SingleS0,
    ClosedForm,
    Degenerate,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::General => "general",
            Method::SingleS0 => "single-s0",
            Method::ClosedForm => "closed-form",
            Method::Degenerate => "degenerate",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SigmaResult {
    pub value: Q,
    pub method: Method,
    pub word: LetterWord,
    pub p: Q,
}

impl SigmaResult {
    pub fn to_f64(&self) -> f64 {
        q_to_f64(&self.value)
    }
}

pub(crate) fn check_open_p(p: &Q) -> Result<()> {
    if !p.is_positive() || *p >= Q::one() {
        return Err(Error::ProbabilityOutOfRange(q_to_string(p)));
    }
    Ok(())
}

fn check_word(rs: &RootSystem, word: &LetterWord) -> Result<()> {
    word.letters().iter().try_for_each(|&i| rs.check_letter(i))
}

/// `R_b = R_{s_{i_1}} R_{s_{i_2}} ⋯ R_{s_{i_m}}` (reversed order), with
/// `R_s = (1−p)I + p P_{s̄}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ROperator {
    pub matrix: QMat,
    pub word: LetterWord,
    pub p: Q,
}

pub fn r_operator(rs: &RootSystem, word: &LetterWord, p: &Q) -> Result<ROperator> {
    check_open_p(p)?;
    check_word(rs, word)?;
    let n = rs.ambient_dim();
    let id = QMat::identity(n);
    let q = Q::one() - p;
    let mut m = id.clone();
    for &i in word.processing_order().iter() {
        let ri = &id.scale(&q) + &rs.reflection(i).scale(p);
        m = &m * &ri;
    }
    Ok(ROperator {
        matrix: m,
        word: word.clone(),
        p: p.clone(),
    })
}

/// Solves `(I − R) x = y` for `x ∈ V`, where `y ∈ V` and `R` preserves `V`.
/// The system is set up in simple-root coordinates:
/// `Σ_k ⟨α_j, (I−R)α_k⟩ c_k = ⟨α_j, y⟩`, `x = Σ_k c_k α_k`.
pub fn solve_on_v(rs: &RootSystem, r: &QMat, y: &QVec) -> Result<QVec> {
    let n = rs.ambient_dim();
    let alphas = rs.simple_roots();
    let a = &QMat::identity(n) - r;
    let images: Vec<QVec> = alphas.iter().map(|al| a.mul_vec(al)).collect();
    let rows = alphas
        .iter()
        .map(|aj| images.iter().map(|im| aj.dot(im)).collect())
        .collect();
    let b = QVec(alphas.iter().map(|aj| aj.dot(y)).collect());
    let c = QMat::from_rows(rows).solve(&b).ok_or(Error::Singular)?;
    let mut x = QVec::zeros(n);
    for (ck, ak) in c.0.iter().zip(alphas) {
        x = &x + &ak.scale(ck);
    }
    Ok(x)
}

/// `(I − R_b)^{-1} y` on `V`.
pub fn resolvent_apply(rs: &RootSystem, word: &LetterWord, p: &Q, y: &QVec) -> Result<QVec> {
    let r = r_operator(rs, word, p)?;
    solve_on_v(rs, &r.matrix, &rs.project_to_v(y))
}

/// `(P_{s̄_J}, G_J)` for a set of 1-indexed positions.
pub fn subset_data(rs: &RootSystem, word: &LetterWord, positions: &[usize]) -> Result<(QMat, QVec)> {
    check_word(rs, word)?;
    let m = word.len();
    let mut js = positions.to_vec();
    js.sort_unstable();
    js.dedup();
    if let Some(&bad) = js.iter().find(|&&j| j == 0 || j > m) {
        return Err(Error::PositionOutOfRange { position: bad, len: m });
    }
    let n = rs.ambient_dim();
    let mut p = QMat::identity(n);
    let mut g = QVec::zeros(n);
    for j in js {
        let letter = word.at_position(j);
        if letter == 0 {
            g = &g + &p.mul_vec(rs.theta_coroot());
        }
        p = &p * rs.reflection(letter);
    }
    Ok((p, g))
}

/// Subset sums grouped by `|J|`, independent of `p`. Vectors are scaled by
/// the root system's `D`, `χ` terms by `D²`.
#[derive(Clone, Debug)]
pub struct SubsetSums {
    m: usize,
    scale: i64,
    g: Vec<Vec<i128>>,
    h: Vec<Vec<i128>>,
    chi: Vec<i128>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubsetEngine {
    /// Depth-first over keep/skip decisions, sharing prefix products.
    PrefixTree,
    /// Independent exact evaluation of every subset; the reference.
    Naive,
}

pub fn subset_sums(rs: &RootSystem, word: &LetterWord, budget: usize) -> Result<SubsetSums> {
    check_word(rs, word)?;
    let m = word.len();
    if m > budget {
        return Err(Error::BudgetExceeded {
            what: "subset sum over 2^m subsets (m = word length)",
            needed: m as u128,
            budget: budget as u128,
        });
    }
    let n = rs.ambient_dim();
    let sd = rs.scaled();
    let mut sums = SubsetSums {
        m,
        scale: sd.scale,
        g: vec![vec![0; n]; m + 1],
        h: vec![vec![0; n]; m + 1],
        chi: vec![0; m + 1],
    };
    let order = word.processing_order();
    let id = crate::weylgroup::IntAffine::identity(rs).m;
    let ctx = Dfs {
        rs,
        order: &order,
        n,
        d: sd.scale,
    };
    ctx.walk(0, 0, &id, &vec![0; n], &mut sums);
    Ok(sums)
}

struct Dfs<'a> {
    rs: &'a RootSystem,
    order: &'a [usize],
    n: usize,
    d: i64,
}

impl Dfs<'_> {
    fn walk(&self, depth: usize, size: usize, p: &[i64], g: &[i64], acc: &mut SubsetSums) {
        let n = self.n;
        if depth == self.order.len() {
            let mut h = vec![0i64; n];
            for j in 0..n {
                let s: i64 = (0..n).map(|i| p[i * n + j] * g[i]).sum();
                assert!(s % self.d == 0);
                h[j] = s / self.d;
            }
            for k in 0..n {
                acc.g[size][k] += g[k] as i128;
                acc.h[size][k] += h[k] as i128;
            }
            acc.chi[size] += g.iter().map(|&x| (x as i128) * (x as i128)).sum::<i128>();
            return;
        }
        self.walk(depth + 1, size, p, g, acc);
        let letter = self.order[depth];
        let sd = self.rs.scaled();
        let mut g2 = g.to_vec();
        if letter == 0 {
            let mut t = vec![0i64; n];
            mat_vec_scaled(p, &sd.theta_coroot, n, self.d, &mut t);
            for (a, b) in g2.iter_mut().zip(&t) {
                *a += b;
            }
        }
        let mut p2 = vec![0i64; n * n];
        mat_mul_scaled(p, &sd.reflections[letter], n, self.d, &mut p2);
        self.walk(depth + 1, size + 1, &p2, &g2, acc);
    }
}

/// Intermediate quantities of the general formula at a given `p`:
/// `g = Σ w_J G_J`, `h = Σ w_J P_Jᵀ G_J`, `χ = Σ w_J ‖G_J‖²`, and
/// `κ' = (I − R_b)^{-1} g` (the `κ_b` of the formula divided by `|W̄|`).
#[derive(Clone, Debug, PartialEq)]
pub struct GeneralParts {
    pub g: QVec,
    pub h: QVec,
    pub chi: Q,
    pub kappa_prime: QVec,
}

fn weights(m: usize, p: &Q) -> Vec<Q> {
    let q = Q::one() - p;
    (0..=m)
        .map(|k| num_traits::pow(p.clone(), k) * num_traits::pow(q.clone(), m - k))
        .collect()
}

impl SubsetSums {
    pub fn evaluate(&self, rs: &RootSystem, word: &LetterWord, p: &Q) -> Result<GeneralParts> {
        check_open_p(p)?;
        let n = rs.ambient_dim();
        let w = weights(self.m, p);
        let d = Q::from_integer(BigInt::from(self.scale));
        let d2 = &d * &d;
        let mut g = QVec::zeros(n);
        let mut h = QVec::zeros(n);
        let mut chi = Q::zero();
        for k in 0..=self.m {
            for i in 0..n {
                g[i] += &w[k] * Q::from_integer(BigInt::from(self.g[k][i]));
                h[i] += &w[k] * Q::from_integer(BigInt::from(self.h[k][i]));
            }
            chi += &w[k] * Q::from_integer(BigInt::from(self.chi[k]));
        }
        let g = g.scale(&d.recip());
        let h = h.scale(&d.recip());
        let chi = chi / d2;
        let r = r_operator(rs, word, p)?;
        let kappa_prime = solve_on_v(rs, &r.matrix, &g)?;
        Ok(GeneralParts { g, h, chi, kappa_prime })
    }
}

fn naive_parts(rs: &RootSystem, word: &LetterWord, p: &Q) -> Result<GeneralParts> {
    let m = word.len();
    let n = rs.ambient_dim();
    let w = weights(m, p);
    let mut g = QVec::zeros(n);
    let mut h = QVec::zeros(n);
    let mut chi = Q::zero();
    for mask in 0u64..(1u64 << m) {
        let js: Vec<usize> = (1..=m).filter(|j| mask >> (j - 1) & 1 == 1).collect();
        let wk = &w[js.len()];
        let (pj, gj) = subset_data(rs, word, &js)?;
        g = &g + &gj.scale(wk);
        h = &h + &pj.transpose().mul_vec(&gj).scale(wk);
        chi += wk * gj.norm_sq();
    }
    let r = r_operator(rs, word, p)?;
    let kappa_prime = solve_on_v(rs, &r.matrix, &g)?;
    Ok(GeneralParts { g, h, chi, kappa_prime })
}

pub fn general_parts(
    rs: &RootSystem,
    word: &LetterWord,
    p: &Q,
    engine: SubsetEngine,
    budget: usize,
) -> Result<GeneralParts> {
    check_open_p(p)?;
    match engine {
        SubsetEngine::PrefixTree => subset_sums(rs, word, budget)?.evaluate(rs, word, p),
        SubsetEngine::Naive => {
            check_word(rs, word)?;
            if word.len() > budget {
                return Err(Error::BudgetExceeded {
                    what: "subset sum over 2^m subsets (m = word length)",
                    needed: word.len() as u128,
                    budget: budget as u128,
                });
            }
            naive_parts(rs, word, p)
        }
    }
}

pub fn sigma_general(rs: &RootSystem, word: &LetterWord, p: &Q) -> Result<SigmaResult> {
    sigma_general_with(rs, word, p, SubsetEngine::PrefixTree, DEFAULT_SUBSET_BUDGET)
}

pub fn sigma_general_with(
    rs: &RootSystem,
    word: &LetterWord,
    p: &Q,
    engine: SubsetEngine,
    budget: usize,
) -> Result<SigmaResult> {
    check_open_p(p)?;
    check_word(rs, word)?;
    if !word.contains_all(rs.num_letters()) {
        return Ok(SigmaResult {
            value: Q::zero(),
            method: Method::Degenerate,
            word: word.clone(),
            p: p.clone(),
        });
    }
    let parts = general_parts(rs, word, p, engine, budget)?;
    let value = (qi(2) * parts.h.dot(&parts.kappa_prime) + parts.chi) / qi(rs.rank() as i64);
    Ok(SigmaResult {
        value,
        method: Method::General,
        word: word.clone(),
        p: p.clone(),
    })
}

/// Single-`s_0` formula. At `p = 1/2` the formula has a removable
/// singularity and the general engine is used instead.
pub fn sigma_single_s0(rs: &RootSystem, word: &LetterWord, p: &Q) -> Result<SigmaResult> {
    check_open_p(p)?;
    check_word(rs, word)?;
    let a = rotate_to_s0_last(word)?;
    if !word.contains_all(rs.num_letters()) {
        return Ok(SigmaResult {
            value: Q::zero(),
            method: Method::Degenerate,
            word: word.clone(),
            p: p.clone(),
        });
    }
    let two = qi(2);
    let denom = &two * p - Q::one();
    if denom.is_zero() {
        return sigma_general(rs, word, p);
    }
    let theta = rs.theta_coroot();
    let x = resolvent_apply(rs, &a, p, theta)?;
    let inner = &two * p * theta.dot(&x) - theta.norm_sq();
    let value = p / denom * inner / qi(rs.rank() as i64);
    Ok(SigmaResult {
        value,
        method: Method::SingleS0,
        word: word.clone(),
        p: p.clone(),
    })
}

/// Single-`s_0` when the word has one `s_0` and `p ≠ 1/2`, otherwise
/// general.
pub fn sigma_auto(rs: &RootSystem, word: &LetterWord, p: &Q) -> Result<SigmaResult> {
    if word.count_zeros() == 1 && *p != Q::new(1.into(), 2.into()) {
        sigma_single_s0(rs, word, p)
    } else {
        sigma_general(rs, word, p)
    }
}

/// `coefficient · √(radicand / π)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LengthLimitForm {
    pub coefficient: SurdSum,
    pub radicand: Q,
}

impl LengthLimitForm {
    pub fn to_f64(&self) -> f64 {
        self.coefficient.to_f64() * (q_to_f64(&self.radicand) / std::f64::consts::PI).sqrt()
    }
}

impl fmt::Display for LengthLimitForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coefficient.to_string();
        let c = if c.contains(' ') { format!("({c})") } else { c };
        let rad = if self.radicand.is_integer() {
            q_to_string(&self.radicand)
        } else {
            format!("({})", q_to_string(&self.radicand))
        };
        if self.coefficient == SurdSum::rational(Q::one()) {
            write!(f, "√({rad}/π)")
        } else {
            write!(f, "{c}·√({rad}/π)")
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClosedForm {
    pub sigma2: Q,
    pub length_limit: LengthLimitForm,
}

/// Closed forms for a Coxeter word, with `x = p/(1−p)`.
pub fn table_closed_form(family: Family, rank: usize, p: &Q) -> Result<ClosedForm> {
    family.check_rank(rank)?;
    check_open_p(p)?;
    let x = p / (Q::one() - p);
    let r = qi(rank as i64);
    let one = Q::one();
    let s2 = |c: Q, a: Q| SurdSum::from_parts(a, c, Q::zero(), Q::zero());
    let (k, coefficient, rad) = match family {
        Family::A => (qi(2) / (&r * (&r + &one)), SurdSum::rational(one.clone()), qi(2) * &r * (&r + &one)),
        Family::B => (
            one.clone() / (qi(2) * &r * (&r - &one)),
            s2(&r - &one, one.clone()),
            &r / (&r - &one),
        ),
        Family::C => (one.clone() / (qi(2) * &r * &r), s2(&r - &one, qi(2)), one.clone()),
        Family::D => (
            one.clone() / (qi(2) * &r * (&r - qi(2))),
            SurdSum::rational(&r - &one),
            qi(2) * &r / (&r - qi(2)),
        ),
        Family::E => match rank {
            6 => (Q::new(1.into(), 72.into()), SurdSum::rational(qi(6)), qi(2)),
            7 => (Q::new(1.into(), 168.into()), SurdSum::rational(qi(3)), Q::new(21.into(), 2.into())),
            _ => (Q::new(1.into(), 480.into()), SurdSum::rational(qi(2)), qi(30)),
        },
        Family::F => (Q::new(1.into(), 48.into()), s2(one.clone(), one.clone()), qi(6)),
        Family::G => (
            Q::new(1.into(), 24.into()),
            SurdSum::from_parts(one.clone(), Q::zero(), one.clone(), Q::zero()),
            Q::new(3.into(), 2.into()),
        ),
    };
    Ok(ClosedForm {
        sigma2: k * &x,
        length_limit: LengthLimitForm {
            coefficient,
            radicand: rad * x,
        },
    })
}

/// `√(2/π) · σ · Σ_{β∈Φ⁺} ‖β‖`.
pub fn length_limit(rs: &RootSystem, sigma2: &Q) -> Result<f64> {
    if sigma2.is_negative() {
        return Err(Error::NegativeVariance(q_to_string(sigma2)));
    }
    let s = rs.root_norm_sum().to_f64();
    Ok((2.0 / std::f64::consts::PI).sqrt() * q_to_f64(sigma2).sqrt() * s)
}

/// Whether `√(2/π)·σ·Σ‖β‖` equals `form` exactly, by comparing squares
/// `2σ²(Σ‖β‖)² = c²·radicand` in `ℚ(√2, √3)`.
pub fn length_limit_matches(rs: &RootSystem, sigma2: &Q, form: &LengthLimitForm) -> bool {
    let s = rs.root_norm_sum();
    let lhs = &(&s * &s) * &SurdSum::rational(qi(2) * sigma2);
    let rhs = &(&form.coefficient * &form.coefficient) * &SurdSum::rational(form.radicand.clone());
    lhs == rhs
}

/// Transition matrix of the finite-part chain, indexed by the enumeration
/// order of [`FiniteWeylTable`]: entry `(w, w')` is the total weight of
/// subsets `J` with `P_w · P_{s̄_J} = P_{w'}`.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkovMatrix {
    pub entries: Vec<Vec<Q>>,
}

impl MarkovMatrix {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn row_sums(&self) -> Vec<Q> {
        self.entries.iter().map(|r| r.iter().cloned().sum()).collect()
    }

    /// `πᵀ T` for a row vector `π`.
    pub fn left_apply(&self, pi: &[Q]) -> Vec<Q> {
        let n = self.len();
        (0..n)
            .map(|j| (0..n).map(|i| &pi[i] * &self.entries[i][j]).sum())
            .collect()
    }
}

pub fn markov_transition_matrix(
    rs: &RootSystem,
    word: &LetterWord,
    p: &Q,
    weyl_budget: usize,
    subset_budget: usize,
) -> Result<MarkovMatrix> {
    check_open_p(p)?;
    check_word(rs, word)?;
    let m = word.len();
    if m > subset_budget {
        return Err(Error::BudgetExceeded {
            what: "subset enumeration (m = word length)",
            needed: m as u128,
            budget: subset_budget as u128,
        });
    }
    let table = FiniteWeylTable::new(rs, weyl_budget)?;
    let size = table.len();
    // counts[idx][k]: number of J with |J| = k and P_{s̄_J} = P_idx.
    let mut counts = vec![vec![0u64; m + 1]; size];
    let order = word.processing_order();
    fn walk(t: &FiniteWeylTable, order: &[usize], depth: usize, idx: u32, k: usize, counts: &mut [Vec<u64>]) {
        if depth == order.len() {
            counts[idx as usize][k] += 1;
            return;
        }
        walk(t, order, depth + 1, idx, k, counts);
        walk(t, order, depth + 1, t.step(idx, order[depth]), k + 1, counts);
    }
    walk(&table, &order, 0, table.identity_index(), 0, &mut counts);
    let w = weights(m, p);
    let jump: Vec<(u32, Q)> = counts
        .iter()
        .enumerate()
        .filter(|(_, c)| c.iter().any(|&x| x > 0))
        .map(|(idx, c)| {
            let weight: Q = c.iter().zip(&w).map(|(&n, wk)| wk * Q::from_integer(BigInt::from(n))).sum();
            (idx as u32, weight)
        })
        .collect();
    let mut entries = vec![vec![Q::zero(); size]; size];
    for (from, row) in entries.iter_mut().enumerate() {
        for (j, weight) in &jump {
            let to = table.product(rs, from as u32, *j);
            row[to as usize] += weight;
        }
    }
    Ok(MarkovMatrix { entries })
}

/// Convenience: the Coxeter word `s_r ⋯ s_0` of the given type.
pub fn coxeter_word(family: Family, rank: usize) -> Result<(RootSystem, LetterWord)> {
    let rs = build_root_system(family, rank)?;
    let c = LetterWord::coxeter(&rs);
    Ok((rs, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use crate::rootsys::admissible_types;

    fn w(s: &str) -> LetterWord {
        s.parse().unwrap()
    }

    fn sys(f: Family, r: usize) -> RootSystem {
        build_root_system(f, r).unwrap()
    }

    #[test]
    fn single_letter_r_operator() {
        let rs = sys(Family::C, 2);
        for i in 0..3 {
            let r = r_operator(&rs, &LetterWord::new(vec![i]).unwrap(), &q(1, 2)).unwrap();
            let expect = (&QMat::identity(2) + rs.reflection(i)).scale(&q(1, 2));
            assert_eq!(r.matrix, expect);
        }
        assert!(r_operator(&rs, &w("1"), &qi(1)).is_err());
        assert!(r_operator(&rs, &w("1"), &qi(0)).is_err());
    }

    #[test]
    fn a1_r_operator_is_scalar_on_v() {
        let rs = sys(Family::A, 1);
        let p = q(2, 7);
        let r = r_operator(&rs, &w("1,0"), &p).unwrap();
        let alpha = &rs.simple_roots()[0];
        let s = (Q::one() - qi(2) * &p) * (Q::one() - qi(2) * &p);
        assert_eq!(r.matrix.mul_vec(alpha), alpha.scale(&s));
    }

    #[test]
    fn subset_data_examples() {
        let rs = sys(Family::A, 2);
        let b = w("2,1,0");
        let (p0, g0) = subset_data(&rs, &b, &[]).unwrap();
        assert_eq!(p0, QMat::identity(3));
        assert!(g0.is_zero());
        let (_, g) = subset_data(&rs, &b, &[1, 3]).unwrap();
        assert_eq!(&g, rs.theta_coroot());
        let (_, g) = subset_data(&rs, &b, &[2, 3]).unwrap();
        assert!(g.is_zero());
        assert!(matches!(
            subset_data(&rs, &b, &[4]),
            Err(Error::PositionOutOfRange { position: 4, len: 3 })
        ));
        // Kept letters after the s0 transport θ∨ only when they come first.
        let (_, g) = subset_data(&rs, &w("0,1"), &[1, 2]).unwrap();
        assert_eq!(g, rs.reflection(1).mul_vec(rs.theta_coroot()));
    }

    #[test]
    fn general_examples() {
        let a1 = sys(Family::A, 1);
        assert_eq!(sigma_general(&a1, &w("1,0"), &q(1, 2)).unwrap().value, qi(1));
        let a2 = sys(Family::A, 2);
        assert_eq!(sigma_general(&a2, &w("2,1,0"), &q(4, 5)).unwrap().value, q(4, 3));
        assert_eq!(sigma_general(&a2, &w("2,1,1,0"), &q(1, 2)).unwrap().value, q(1, 3));
        let d = sigma_general(&a2, &w("2,1,2"), &q(1, 2)).unwrap();
        assert_eq!(d.method, Method::Degenerate);
        assert!(d.value.is_zero());
    }

    #[test]
    fn single_s0_examples() {
        let a2 = sys(Family::A, 2);
        assert_eq!(sigma_single_s0(&a2, &w("1,2,1,0"), &q(1, 3)).unwrap().value, q(1, 5));
        let c2 = sys(Family::C, 2);
        assert_eq!(sigma_single_s0(&c2, &w("2,1,0"), &q(4, 5)).unwrap().value, q(1, 2));
        let a3 = sys(Family::A, 3);
        let half = sigma_single_s0(&a3, &w("1,2,3,2,1,0"), &q(1, 2)).unwrap();
        assert_eq!(half.value, q(2, 9));
        assert_eq!(half.method, Method::General);
        let g2 = sys(Family::G, 2);
        assert_eq!(sigma_single_s0(&g2, &w("2,1,0"), &q(1, 2)).unwrap().value, q(1, 24));
        assert!(matches!(sigma_single_s0(&a2, &w("0,1,2,0"), &q(1, 3)), Err(Error::S0Count(2))));
    }

    #[test]
    fn engines_agree_with_naive_oracle() {
        for (f, r, word) in [
            (Family::A, 2, "2,1,1,0"),
            (Family::C, 2, "0,1,2,1,0"),
            (Family::G, 2, "1,2,0,1"),
            (Family::B, 3, "3,2,1,0,2"),
        ] {
            let rs = sys(f, r);
            let b = w(word);
            for p in [q(1, 3), q(3, 4)] {
                let fast = general_parts(&rs, &b, &p, SubsetEngine::PrefixTree, 22).unwrap();
                let slow = general_parts(&rs, &b, &p, SubsetEngine::Naive, 22).unwrap();
                assert_eq!(fast, slow, "{} {word}", rs.name());
            }
        }
    }

    #[test]
    fn budget_enforced() {
        let rs = sys(Family::A, 2);
        let long = w("2,1,0").power(3);
        assert!(matches!(
            sigma_general_with(&rs, &long, &q(1, 2), SubsetEngine::PrefixTree, 8),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn closed_form_examples() {
        let a = table_closed_form(Family::A, 2, &q(4, 5)).unwrap();
        assert_eq!(a.sigma2, q(4, 3));
        assert_eq!(a.length_limit.radicand, qi(48));
        assert!((a.length_limit.to_f64() - (48.0 / std::f64::consts::PI).sqrt()).abs() < 1e-12);
        assert_eq!(table_closed_form(Family::E, 8, &q(1, 2)).unwrap().sigma2, q(1, 480));
        let f = table_closed_form(Family::F, 4, &q(1, 2)).unwrap();
        assert_eq!(f.sigma2, q(1, 48));
        let expect = (2f64.sqrt() + 1.0) * (6.0 / std::f64::consts::PI).sqrt();
        assert!((f.length_limit.to_f64() - expect).abs() < 1e-12);
        assert!(table_closed_form(Family::B, 2, &q(1, 2)).is_err());
    }

    #[test]
    fn closed_form_limits_consistent_with_root_norms() {
        for (f, r) in admissible_types(8) {
            let rs = sys(f, r);
            for p in [q(1, 3), q(4, 5)] {
                let cf = table_closed_form(f, r, &p).unwrap();
                assert!(length_limit_matches(&rs, &cf.sigma2, &cf.length_limit), "{}", rs.name());
                let fl = length_limit(&rs, &cf.sigma2).unwrap();
                assert!((fl - cf.length_limit.to_f64()).abs() < 1e-12 * fl.max(1.0));
            }
        }
    }

    #[test]
    fn length_limit_examples() {
        let a2 = sys(Family::A, 2);
        let v = length_limit(&a2, &q(4, 3)).unwrap();
        assert!((v - 3.9088).abs() < 1e-4, "{v}");
        assert_eq!(length_limit(&a2, &Q::zero()).unwrap(), 0.0);
        let c2 = sys(Family::C, 2);
        let v = length_limit(&c2, &q(1, 2)).unwrap();
        assert!((v - 3.852).abs() < 1e-3, "{v}");
        assert!(matches!(length_limit(&a2, &q(-1, 2)), Err(Error::NegativeVariance(_))));
    }

    #[test]
    fn markov_a1() {
        let rs = sys(Family::A, 1);
        let p = q(1, 3);
        let t = markov_transition_matrix(&rs, &w("1,0"), &p, 2000, 22).unwrap();
        let qq = Q::one() - &p;
        let stay = &qq * &qq + &p * &p;
        let switch = qi(2) * &p * &qq;
        assert_eq!(t.entries, vec![vec![stay.clone(), switch.clone()], vec![switch, stay]]);
    }

    #[test]
    fn markov_rows_and_stationarity() {
        for (f, r) in [(Family::A, 2), (Family::C, 2), (Family::G, 2), (Family::B, 3)] {
            let rs = sys(f, r);
            let t = markov_transition_matrix(&rs, &LetterWord::coxeter(&rs), &q(2, 7), 2000, 22).unwrap();
            assert!(t.row_sums().iter().all(|s| s.is_one()));
            let n = t.len();
            let u = vec![Q::new(1.into(), (n as i64).into()); n];
            assert_eq!(t.left_apply(&u), u);
        }
    }

    #[test]
    fn r_operator_contracts_on_probes() {
        let rs = sys(Family::F, 4);
        let r = r_operator(&rs, &LetterWord::coxeter(&rs), &q(3, 7)).unwrap();
        let m = r.matrix.to_f64_rows();
        for v in rs.orthonormal_basis() {
            let img: Vec<f64> = m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect();
            let norm: f64 = img.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!(norm <= 1.0 + 1e-12);
        }
    }
}
