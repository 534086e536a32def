//! Finite irreducible crystallographic root systems in explicit coordinates.
//!
//! Each family is realized inside an ambient `ℝⁿ` with the usual textbook
//! coordinates. Types A, E6, E7 and G2 live in a proper subspace `V ⊊ ℝⁿ`;
//! all reflection matrices act on the whole ambient space and fix `V⊥`
//! pointwise.
//!
//! Simple roots for E-types use the Bourbaki numbering with `α₁` the
//! half-integer root, which is what the Coxeter words `s_r ⋯ s₁ s₀` in the
//! tests assume.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{q, qi, QMat, QVec, Q};
use crate::surd::SurdSum;

/// Ranks above this are refused so that `|W̄|` fits in a `u128`.
pub const MAX_RANK: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn check_rank(self, rank: usize) -> Result<()> {
        let reason = match self {
            Family::A if rank < 1 => Some("type A needs rank >= 1"),
            Family::B if rank < 3 => Some("type B needs rank >= 3"),
            Family::C if rank < 2 => Some("type C needs rank >= 2"),
            Family::D if rank < 4 => Some("type D needs rank >= 4"),
            Family::E if !(6..=8).contains(&rank) => Some("type E needs rank 6, 7 or 8"),
            Family::F if rank != 4 => Some("type F needs rank 4"),
            Family::G if rank != 2 => Some("type G needs rank 2"),
            _ if rank > MAX_RANK => Some("rank above 24 is not supported"),
            _ => None,
        };
        match reason {
            Some(reason) => Err(Error::InadmissibleType {
                family: self.letter(),
                rank,
                reason,
            }),
            None => Ok(()),
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B => 3,
            Family::C | Family::G => 2,
            Family::D | Family::F => 4,
            Family::E => 6,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            other => Err(Error::Parse(format!("unknown root system family {other:?}"))),
        }
    }
}

/// A root system together with everything the walk and variance engines
/// consume. Immutable after construction.
#[derive(Clone, Debug)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    ambient_dim: usize,
    simple_roots: Vec<QVec>,
    simple_coroots: Vec<QVec>,
    positive_roots: Vec<QVec>,
    highest_root: QVec,
    highest_root_coeffs: Vec<Q>,
    theta_coroot: QVec,
    /// `reflections[i]` is `P_{s̄_i}`; index 0 reflects through `θ⊥`.
    reflections: Vec<QMat>,
    fundamental_coweights: Vec<QVec>,
    fundamental_centroid: QVec,
    weyl_order: u128,
    scaled: ScaledData,
    orthonormal_basis: Vec<Vec<f64>>,
}

/// Integer data at a common scale `D`: every reflection matrix, `θ∨`, root
/// and coroot-lattice vector is an integer multiple of `1/D`, and so is every
/// product of reflections applied to those vectors.
#[derive(Clone, Debug)]
pub struct ScaledData {
    pub scale: i64,
    /// Row-major `D · P_{s̄_i}`.
    pub reflections: Vec<Vec<i64>>,
    pub theta_coroot: Vec<i64>,
    pub positive_roots: Vec<Vec<i64>>,
    /// `centroid_den · 1•` (exact integers; no `D` factor).
    pub centroid: Vec<i64>,
    pub centroid_den: i64,
}

pub fn build_root_system(family: Family, rank: usize) -> Result<RootSystem> {
    family.check_rank(rank)?;
    let (ambient_dim, roots, simple_roots) = match family {
        Family::A => type_a(rank),
        Family::B => type_bcd(rank, Family::B),
        Family::C => type_bcd(rank, Family::C),
        Family::D => type_bcd(rank, Family::D),
        Family::E => type_e(rank),
        Family::F => type_f4(),
        Family::G => type_g2(),
    };
    RootSystem::assemble(family, rank, ambient_dim, roots, simple_roots)
}

fn e(n: usize, i: usize) -> QVec {
    QVec::unit(n, i)
}

fn type_a(rank: usize) -> (usize, Vec<QVec>, Vec<QVec>) {
    let n = rank + 1;
    let mut roots = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                roots.push(&e(n, i) - &e(n, j));
            }
        }
    }
    let simple = (0..rank).map(|i| &e(n, i) - &e(n, i + 1)).collect();
    (n, roots, simple)
}

fn type_bcd(rank: usize, family: Family) -> (usize, Vec<QVec>, Vec<QVec>) {
    let n = rank;
    let mut roots = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for si in [1, -1] {
                for sj in [1, -1] {
                    roots.push(&e(n, i).scale(&qi(si)) + &e(n, j).scale(&qi(sj)));
                }
            }
        }
        match family {
            Family::B => {
                roots.push(e(n, i));
                roots.push(-&e(n, i));
            }
            Family::C => {
                roots.push(e(n, i).scale(&qi(2)));
                roots.push(e(n, i).scale(&qi(-2)));
            }
            _ => {}
        }
    }
    let mut simple: Vec<QVec> = (0..n - 1).map(|i| &e(n, i) - &e(n, i + 1)).collect();
    simple.push(match family {
        Family::B => e(n, n - 1),
        Family::C => e(n, n - 1).scale(&qi(2)),
        _ => &e(n, n - 2) + &e(n, n - 1),
    });
    (n, roots, simple)
}

fn e8_roots() -> Vec<QVec> {
    let n = 8;
    let mut roots = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for si in [1, -1] {
                for sj in [1, -1] {
                    roots.push(&e(n, i).scale(&qi(si)) + &e(n, j).scale(&qi(sj)));
                }
            }
        }
    }
    // Half-integer roots: all sign patterns with an even number of minus signs.
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            roots.push(QVec(
                (0..n)
                    .map(|i| if mask & (1 << i) != 0 { q(-1, 2) } else { q(1, 2) })
                    .collect(),
            ));
        }
    }
    roots
}

fn type_e(rank: usize) -> (usize, Vec<QVec>, Vec<QVec>) {
    let n = 8;
    let roots = e8_roots()
        .into_iter()
        .filter(|b| match rank {
            6 => b[5] == b[6] && b[6] == -&b[7],
            7 => b[6] == -&b[7],
            _ => true,
        })
        .collect();
    let mut simple = vec![QVec(vec![
        q(1, 2),
        q(-1, 2),
        q(-1, 2),
        q(-1, 2),
        q(-1, 2),
        q(-1, 2),
        q(-1, 2),
        q(1, 2),
    ])];
    simple.push(&e(n, 0) + &e(n, 1));
    for i in 3..=rank {
        simple.push(&e(n, i - 2) - &e(n, i - 3));
    }
    (n, roots, simple)
}

fn type_f4() -> (usize, Vec<QVec>, Vec<QVec>) {
    let n = 4;
    let (_, mut roots, _) = type_bcd(4, Family::B);
    for mask in 0u32..16 {
        roots.push(QVec(
            (0..n)
                .map(|i| if mask & (1 << i) != 0 { q(-1, 2) } else { q(1, 2) })
                .collect(),
        ));
    }
    let simple = vec![
        &e(n, 1) - &e(n, 2),
        &e(n, 2) - &e(n, 3),
        e(n, 3),
        QVec(vec![q(1, 2), q(-1, 2), q(-1, 2), q(-1, 2)]),
    ];
    (n, roots, simple)
}

fn type_g2() -> (usize, Vec<QVec>, Vec<QVec>) {
    let n = 3;
    let mut roots = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                roots.push(&e(n, i) - &e(n, j));
            }
        }
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        // ±(e_j + e_k − 2e_i)
        let long = &(&e(n, j) + &e(n, k)) - &e(n, i).scale(&qi(2));
        roots.push(-&long);
        roots.push(long);
    }
    let simple = vec![&e(n, 1) - &e(n, 2), QVec::from_ints(&[1, -2, 1])];
    (n, roots, simple)
}

fn coroot(beta: &QVec) -> QVec {
    beta.scale(&(qi(2) / beta.norm_sq()))
}

fn weyl_order(family: Family, rank: usize) -> u128 {
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    match family {
        Family::A => fact(rank + 1),
        Family::B | Family::C => (1u128 << rank) * fact(rank),
        Family::D => (1u128 << (rank - 1)) * fact(rank),
        Family::E => match rank {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        Family::F => 1152,
        Family::G => 12,
    }
}

fn lcm_all(dens: impl Iterator<Item = BigInt>) -> BigInt {
    dens.fold(BigInt::one(), |acc, d| acc.lcm(&d))
}

fn scaled_ints(v: &[Q], scale: &BigInt) -> Vec<i64> {
    v.iter()
        .map(|x| {
            let y = x * Q::from_integer(scale.clone());
            assert!(y.is_integer(), "entry not on the scale grid");
            y.to_integer().to_i64().expect("scaled entry fits in i64")
        })
        .collect()
}

impl RootSystem {
    fn assemble(
        family: Family,
        rank: usize,
        ambient_dim: usize,
        roots: Vec<QVec>,
        simple_roots: Vec<QVec>,
    ) -> Result<Self> {
        assert_eq!(simple_roots.len(), rank);
        let gram = QMat::from_rows(
            simple_roots
                .iter()
                .map(|a| simple_roots.iter().map(|b| a.dot(b)).collect())
                .collect(),
        );
        let simple_coords = |beta: &QVec| -> QVec {
            let rhs = QVec(simple_roots.iter().map(|a| a.dot(beta)).collect());
            gram.solve(&rhs).expect("simple roots are linearly independent")
        };

        let mut positive_roots = Vec::new();
        let mut highest: Option<(Q, QVec, QVec)> = None;
        for beta in &roots {
            let c = simple_coords(beta);
            assert!(c.0.iter().all(|x| x.is_integer()), "root outside the root lattice");
            if c.0.iter().all(|x| !x.is_negative()) {
                let height: Q = c.0.iter().sum();
                if highest.as_ref().is_none_or(|(h, _, _)| &height > h) {
                    highest = Some((height, beta.clone(), c.clone()));
                }
                positive_roots.push(beta.clone());
            } else {
                assert!(c.0.iter().all(|x| !x.is_positive()), "root neither positive nor negative");
            }
        }
        let (_, highest_root, coeffs) = highest.expect("non-empty root system");
        let theta_coroot = coroot(&highest_root);

        let mut reflections = vec![QMat::reflection(&highest_root)];
        reflections.extend(simple_roots.iter().map(QMat::reflection));

        let gram_inv_cols: Vec<QVec> = (0..rank)
            .map(|i| gram.solve(&QVec::unit(rank, i)).expect("nonsingular Gram matrix"))
            .collect();
        let fundamental_coweights: Vec<QVec> = gram_inv_cols
            .iter()
            .map(|c| {
                (0..rank).fold(QVec::zeros(ambient_dim), |acc, k| {
                    &acc + &simple_roots[k].scale(&c[k])
                })
            })
            .collect();
        let mut centroid = QVec::zeros(ambient_dim);
        for (w, m) in fundamental_coweights.iter().zip(&coeffs.0) {
            centroid = &centroid + &w.scale(&(Q::one() / m));
        }
        let fundamental_centroid = centroid.scale(&q(1, rank as i64 + 1));

        let simple_coroots: Vec<QVec> = simple_roots.iter().map(coroot).collect();

        let scale = lcm_all(
            reflections
                .iter()
                .map(QMat::common_denominator)
                .chain(std::iter::once(theta_coroot.common_denominator()))
                .chain(positive_roots.iter().map(QVec::common_denominator))
                .chain(simple_coroots.iter().map(QVec::common_denominator)),
        );
        let centroid_den = fundamental_centroid.common_denominator();
        let scaled = ScaledData {
            scale: scale.to_i64().expect("small scale"),
            reflections: reflections.iter().map(|m| scaled_ints(m.entries(), &scale)).collect(),
            theta_coroot: scaled_ints(&theta_coroot.0, &scale),
            positive_roots: positive_roots.iter().map(|b| scaled_ints(&b.0, &scale)).collect(),
            centroid: scaled_ints(&fundamental_centroid.0, &centroid_den),
            centroid_den: centroid_den.to_i64().expect("small centroid denominator"),
        };

        let orthonormal_basis = gram_schmidt(&simple_roots);

        Ok(RootSystem {
            family,
            rank,
            ambient_dim,
            simple_roots,
            simple_coroots,
            positive_roots,
            highest_root,
            highest_root_coeffs: coeffs.0,
            theta_coroot,
            reflections,
            fundamental_coweights,
            fundamental_centroid,
            weyl_order: weyl_order(family, rank),
            scaled,
            orthonormal_basis,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of letters `s₀, …, s_r`.
    pub fn num_letters(&self) -> usize {
        self.rank + 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    pub fn simple_roots(&self) -> &[QVec] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[QVec] {
        &self.simple_coroots
    }

    pub fn positive_roots(&self) -> &[QVec] {
        &self.positive_roots
    }

    pub fn highest_root(&self) -> &QVec {
        &self.highest_root
    }

    /// Coefficients `m_i` of `θ = Σ m_i α_i`.
    pub fn highest_root_coeffs(&self) -> &[Q] {
        &self.highest_root_coeffs
    }

    pub fn theta_coroot(&self) -> &QVec {
        &self.theta_coroot
    }

    pub fn reflection(&self, letter: usize) -> &QMat {
        &self.reflections[letter]
    }

    pub fn reflections(&self) -> &[QMat] {
        &self.reflections
    }

    pub fn fundamental_coweights(&self) -> &[QVec] {
        &self.fundamental_coweights
    }

    pub fn fundamental_centroid(&self) -> &QVec {
        &self.fundamental_centroid
    }

    pub fn weyl_order(&self) -> u128 {
        self.weyl_order
    }

    pub fn scaled(&self) -> &ScaledData {
        &self.scaled
    }

    /// Orthonormal basis of `V` (Gram–Schmidt over the simple roots), as
    /// ambient-coordinate float vectors.
    pub fn orthonormal_basis(&self) -> &[Vec<f64>] {
        &self.orthonormal_basis
    }

    /// Coordinates of an ambient float vector in the orthonormal basis of `V`.
    pub fn to_v_coords(&self, x: &[f64]) -> Vec<f64> {
        self.orthonormal_basis
            .iter()
            .map(|b| b.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn check_letter(&self, letter: usize) -> Result<()> {
        if letter > self.rank {
            Err(Error::LetterOutOfRange {
                letter,
                rank: self.rank,
            })
        } else {
            Ok(())
        }
    }

    /// Whether `v` lies in `V`, the span of the simple roots.
    pub fn in_v(&self, v: &QVec) -> bool {
        self.project_to_v(v) == *v
    }

    /// Orthogonal projection onto `V`.
    pub fn project_to_v(&self, v: &QVec) -> QVec {
        let gram = QMat::from_rows(
            self.simple_roots
                .iter()
                .map(|a| self.simple_roots.iter().map(|b| a.dot(b)).collect())
                .collect(),
        );
        let rhs = QVec(self.simple_roots.iter().map(|a| a.dot(v)).collect());
        let c = gram.solve(&rhs).expect("nonsingular Gram matrix");
        (0..self.rank).fold(QVec::zeros(self.ambient_dim), |acc, k| {
            &acc + &self.simple_roots[k].scale(&c[k])
        })
    }

    /// Coordinates of `v ∈ V` in the simple-coroot basis `α₁∨, …, α_r∨`.
    pub fn coroot_coords(&self, v: &QVec) -> Option<QVec> {
        let gram = QMat::from_rows(
            self.simple_coroots
                .iter()
                .map(|a| self.simple_coroots.iter().map(|b| a.dot(b)).collect())
                .collect(),
        );
        let rhs = QVec(self.simple_coroots.iter().map(|a| a.dot(v)).collect());
        let c = gram.solve(&rhs)?;
        let back = (0..self.rank).fold(QVec::zeros(self.ambient_dim), |acc, k| {
            &acc + &self.simple_coroots[k].scale(&c[k])
        });
        (back == *v).then_some(c)
    }

    /// Whether `v` lies in the coroot lattice `Q∨`.
    pub fn in_coroot_lattice(&self, v: &QVec) -> bool {
        self.coroot_coords(v)
            .is_some_and(|c| c.0.iter().all(|x| x.is_integer()))
    }

    /// Σ_{β∈Φ⁺} ‖β‖, exactly.
    pub fn root_norm_sum(&self) -> SurdSum {
        self.positive_roots.iter().fold(SurdSum::zero(), |acc, b| {
            let len = SurdSum::sqrt_of(&b.norm_sq()).expect("root lengths lie in Q(√2, √3)");
            &acc + &len
        })
    }

    pub fn to_json(&self) -> RootSystemJson {
        RootSystemJson {
            family: self.family.letter().to_string(),
            rank: self.rank,
            ambient_dim: self.ambient_dim,
            simple_roots: self.simple_roots.iter().map(QVec::to_strings).collect(),
            positive_roots: self.positive_roots.iter().map(QVec::to_strings).collect(),
            theta_covector: self.theta_coroot.to_strings(),
            weyl_order: self.weyl_order,
        }
    }
}

/// Free-function form of [`RootSystem::root_norm_sum`].
pub fn root_norm_sum(rs: &RootSystem) -> SurdSum {
    rs.root_norm_sum()
}

/// Free-function form of [`RootSystem::fundamental_centroid`].
pub fn fundamental_centroid(rs: &RootSystem) -> QVec {
    rs.fundamental_centroid.clone()
}

#[derive(Clone, Debug, Serialize)]
pub struct RootSystemJson {
    pub family: String,
    pub rank: usize,
    pub ambient_dim: usize,
    pub simple_roots: Vec<Vec<String>>,
    pub positive_roots: Vec<Vec<String>>,
    pub theta_covector: Vec<String>,
    pub weyl_order: u128,
}

fn gram_schmidt(vs: &[QVec]) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vs {
        let mut w = v.to_f64();
        for b in &basis {
            let c: f64 = b.iter().zip(&w).map(|(x, y)| x * y).sum();
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi -= c * bi;
            }
        }
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        basis.push(w.into_iter().map(|x| x / norm).collect());
    }
    basis
}

/// Every admissible `(family, rank)` with `rank ≤ max_rank`.
pub fn admissible_types(max_rank: usize) -> Vec<(Family, usize)> {
    let mut out = Vec::new();
    for family in Family::ALL {
        for rank in family.min_rank()..=max_rank {
            if family.check_rank(rank).is_ok() {
                out.push((family, rank));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;
    use num_traits::Zero;

    fn rs(f: Family, r: usize) -> RootSystem {
        build_root_system(f, r).unwrap()
    }

    #[test]
    fn admissibility_gate() {
        assert!(build_root_system(Family::B, 2).is_err());
        assert!(build_root_system(Family::D, 3).is_err());
        assert!(build_root_system(Family::E, 5).is_err());
        assert!(build_root_system(Family::E, 9).is_err());
        assert!(build_root_system(Family::F, 3).is_err());
        assert!(build_root_system(Family::G, 3).is_err());
        assert!(build_root_system(Family::A, 0).is_err());
        assert!(build_root_system(Family::C, 2).is_ok());
        let err = build_root_system(Family::B, 2).unwrap_err().to_string();
        assert!(err.contains("B2"), "{err}");
    }

    #[test]
    fn c2_coordinates() {
        let c2 = rs(Family::C, 2);
        let expect: HashSet<QVec> = [[1, -1], [1, 1], [2, 0], [0, 2]]
            .iter()
            .map(|v| QVec::from_ints(v))
            .collect();
        let got: HashSet<QVec> = c2.positive_roots().iter().cloned().collect();
        assert_eq!(got, expect);
        assert_eq!(c2.theta_coroot(), &QVec::from_ints(&[1, 0]));
    }

    #[test]
    fn theta_coroots_match_explicit_constructions() {
        let half = |xs: [i64; 8]| QVec(xs.iter().map(|&x| q(x, 2)).collect());
        assert_eq!(rs(Family::A, 2).theta_coroot(), &QVec::from_ints(&[1, 0, -1]));
        assert_eq!(rs(Family::A, 2).ambient_dim(), 3);
        assert_eq!(rs(Family::B, 3).theta_coroot(), &QVec::from_ints(&[1, 1, 0]));
        assert_eq!(rs(Family::D, 5).theta_coroot(), &QVec::from_ints(&[1, 1, 0, 0, 0]));
        assert_eq!(rs(Family::C, 4).theta_coroot(), &QVec::from_ints(&[1, 0, 0, 0]));
        assert_eq!(rs(Family::E, 6).theta_coroot(), &half([1, 1, 1, 1, 1, -1, -1, 1]));
        assert_eq!(
            rs(Family::E, 7).theta_coroot(),
            &QVec::from_ints(&[0, 0, 0, 0, 0, 0, -1, 1])
        );
        assert_eq!(
            rs(Family::E, 8).theta_coroot(),
            &QVec::from_ints(&[0, 0, 0, 0, 0, 0, 1, 1])
        );
        assert_eq!(rs(Family::F, 4).theta_coroot(), &QVec::from_ints(&[1, 1, 0, 0]));
        assert_eq!(
            rs(Family::G, 2).theta_coroot(),
            &QVec(vec![q(2, 3), q(-1, 3), q(-1, 3)])
        );
    }

    fn coxeter_number(f: Family, r: usize) -> usize {
        match f {
            Family::A => r + 1,
            Family::B | Family::C => 2 * r,
            Family::D => 2 * r - 2,
            Family::E => [12, 18, 30][r - 6],
            Family::F => 12,
            Family::G => 6,
        }
    }

    /// Saturate the simple roots under the simple reflections.
    fn closure_of_simple_roots(rs: &RootSystem) -> HashSet<QVec> {
        let mut seen: HashSet<QVec> = rs.simple_roots().iter().cloned().collect();
        let mut frontier: Vec<QVec> = seen.iter().cloned().collect();
        while let Some(b) = frontier.pop() {
            for i in 1..=rs.rank() {
                let img = rs.reflection(i).mul_vec(&b);
                if seen.insert(img.clone()) {
                    frontier.push(img);
                }
            }
        }
        seen
    }

    #[test]
    fn positive_root_counts_match_closure_and_coxeter_number() {
        for (f, r) in admissible_types(8) {
            let rs = rs(f, r);
            let closure = closure_of_simple_roots(&rs);
            assert_eq!(closure.len(), 2 * rs.positive_roots().len(), "{}", rs.name());
            assert_eq!(rs.positive_roots().len(), r * coxeter_number(f, r) / 2, "{}", rs.name());
            let pos: HashSet<QVec> = rs.positive_roots().iter().cloned().collect();
            for b in rs.positive_roots() {
                assert!(!pos.contains(&-b));
                assert!(closure.contains(b) && closure.contains(&-b));
            }
        }
    }

    #[test]
    fn reflections_are_orthogonal_involutions_preserving_v() {
        for (f, r) in admissible_types(8) {
            let rs = rs(f, r);
            let id = QMat::identity(rs.ambient_dim());
            for (i, p) in rs.reflections().iter().enumerate() {
                assert_eq!(&(p * p), &id, "{} s{i}", rs.name());
                assert_eq!(&(p * &p.transpose()), &id, "{} s{i}", rs.name());
                for a in rs.simple_roots() {
                    assert!(rs.in_v(&p.mul_vec(a)));
                }
            }
            assert_eq!(rs.reflection(0).mul_vec(rs.theta_coroot()), -rs.theta_coroot());
        }
    }

    #[test]
    fn reflections_permute_roots() {
        for (f, r) in admissible_types(6) {
            let rs = rs(f, r);
            let all: HashSet<QVec> = rs
                .positive_roots()
                .iter()
                .flat_map(|b| [b.clone(), -b])
                .collect();
            for p in rs.reflections() {
                for b in &all {
                    assert!(all.contains(&p.mul_vec(b)));
                }
            }
        }
    }

    #[test]
    fn centroid_is_interior() {
        for (f, r) in admissible_types(8) {
            let rs = rs(f, r);
            let c = rs.fundamental_centroid();
            assert!(rs.in_v(c));
            let th = c.dot(rs.highest_root());
            assert!(th > Q::zero() && th < Q::one(), "{}", rs.name());
            for a in rs.simple_roots() {
                assert!(c.dot(a).is_positive());
            }
            for b in rs.positive_roots() {
                assert!(!c.dot(b).is_integer());
            }
        }
    }

    #[test]
    fn a1_centroid_is_segment_midpoint() {
        let a1 = rs(Family::A, 1);
        assert_eq!(a1.fundamental_centroid(), &a1.fundamental_coweights()[0].scale(&q(1, 2)));
        assert_eq!(a1.fundamental_centroid().dot(a1.highest_root()), q(1, 2));
    }

    #[test]
    fn a2_centroid_dual_basis() {
        // The fundamental coweights solve ⟨α_j, ϖ_i∨⟩ = δ_ij; θ = α₁ + α₂, so
        // 1• = (ϖ₁∨ + ϖ₂∨)/3 and ⟨1•, α_i⟩ = 1/3.
        let a2 = rs(Family::A, 2);
        for (i, w) in a2.fundamental_coweights().iter().enumerate() {
            for (j, a) in a2.simple_roots().iter().enumerate() {
                assert_eq!(w.dot(a), if i == j { qi(1) } else { qi(0) });
            }
        }
        for a in a2.simple_roots() {
            assert_eq!(a2.fundamental_centroid().dot(a), q(1, 3));
        }
        assert_eq!(
            a2.fundamental_centroid(),
            &QVec(vec![q(1, 3), qi(0), q(-1, 3)])
        );
    }

    #[test]
    fn root_norm_sums() {
        let c2 = rs(Family::C, 2).root_norm_sum();
        assert_eq!(c2, SurdSum::from_parts(qi(4), qi(2), qi(0), qi(0)));
        let a2 = rs(Family::A, 2).root_norm_sum();
        assert_eq!(a2, SurdSum::from_parts(qi(0), qi(3), qi(0), qi(0)));
        let g2 = rs(Family::G, 2).root_norm_sum();
        assert_eq!(g2, SurdSum::from_parts(qi(0), qi(3), qi(0), qi(3)));
    }

    #[test]
    fn root_norm_sum_closed_forms() {
        let s2 = |rat: i64, sq2: i64| SurdSum::from_parts(qi(rat), qi(sq2), qi(0), qi(0));
        for n in 2..=8i64 {
            assert_eq!(rs(Family::C, n as usize).root_norm_sum(), s2(2 * n, n * (n - 1)));
            assert_eq!(rs(Family::A, n as usize - 1).root_norm_sum(), s2(0, n * (n - 1) / 2));
            if n >= 3 {
                assert_eq!(rs(Family::B, n as usize).root_norm_sum(), s2(n, n * (n - 1)));
            }
            if n >= 4 {
                assert_eq!(rs(Family::D, n as usize).root_norm_sum(), s2(0, n * (n - 1)));
            }
        }
        assert_eq!(rs(Family::E, 6).root_norm_sum(), s2(0, 36));
        assert_eq!(rs(Family::E, 7).root_norm_sum(), s2(0, 63));
        assert_eq!(rs(Family::E, 8).root_norm_sum(), s2(0, 120));
        assert_eq!(rs(Family::F, 4).root_norm_sum(), s2(12, 12));
    }

    #[test]
    fn e_type_numbering() {
        let e8 = rs(Family::E, 8);
        let a = e8.simple_roots();
        assert_eq!(a[1], QVec::from_ints(&[1, 1, 0, 0, 0, 0, 0, 0]));
        assert_eq!(a[2], QVec::from_ints(&[-1, 1, 0, 0, 0, 0, 0, 0]));
        assert_eq!(a[7], QVec::from_ints(&[0, 0, 0, 0, 0, -1, 1, 0]));
        assert_eq!(e8.positive_roots().len(), 120);
        assert_eq!(e8.scaled().scale, 4);
    }

    #[test]
    fn json_export_has_fields() {
        let v = serde_json::to_value(rs(Family::G, 2).to_json()).unwrap();
        assert_eq!(v["family"], "G");
        assert_eq!(v["weyl_order"], 12);
        assert_eq!(v["theta_covector"][0], "2/3");
        assert_eq!(v["positive_roots"].as_array().unwrap().len(), 6);
    }

    #[test]
    fn orthonormal_basis_is_orthonormal() {
        let rs = rs(Family::E, 6);
        let b = rs.orthonormal_basis();
        assert_eq!(b.len(), 6);
        for i in 0..6 {
            for j in 0..6 {
                let d: f64 = b[i].iter().zip(&b[j]).map(|(x, y)| x * y).sum();
                assert!((d - if i == j { 1.0 } else { 0.0 }).abs() < 1e-12);
            }
        }
    }
}
