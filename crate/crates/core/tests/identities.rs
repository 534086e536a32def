mod common;

use billiard_walks::linalg::{q, qi, QVec, Q};
use billiard_walks::rootsys::{build_root_system, Family};
use billiard_walks::sigma::{
    general_parts, resolvent_apply, sigma_general, sigma_single_s0, subset_data, SubsetEngine, DEFAULT_SUBSET_BUDGET,
};
use billiard_walks::subwords::LetterWord;
use common::*;
use num_traits::{One, Zero};

#[test]
fn g2_resolvent_vector() {
    let rs = build_root_system(Family::G, 2).unwrap();
    let c = LetterWord::coxeter(&rs);
    for p in ps() {
        let one_p = Q::one() - &p;
        let pre = Q::one() / (qi(24) * &p * &one_p);
        let expect = QVec(vec![
            &pre * (qi(7) - qi(6) * &p),
            &pre * qi(-2),
            &pre * (qi(-5) + qi(6) * &p),
        ]);
        assert_eq!(resolvent_apply(&rs, &c, &p, rs.theta_coroot()).unwrap(), expect);
    }
}

#[test]
fn palindrome_resolvent_vector() {
    for n in 3..=7 {
        let rs = build_root_system(Family::A, n - 1).unwrap();
        let w = palindrome_word(n);
        for p in ps() {
            let got = resolvent_apply(&rs, &w, &p, rs.theta_coroot()).unwrap();
            assert_eq!(got, palindrome_inverse(n, &p), "n = {n}");
        }
    }
}

#[test]
fn palindrome_variance_beyond_six() {
    for n in 7..=8 {
        let rs = build_root_system(Family::A, n - 1).unwrap();
        let p = q(2, 7);
        let expect = Q::new(4.into(), (((n - 1) * (n + 2)) as i64).into()) * odds(&p);
        assert_eq!(sigma_single_s0(&rs, &palindrome_word(n), &p).unwrap().value, expect);
    }
}

#[test]
fn type_a_variance_independent_of_d() {
    for n in 3..=7 {
        let rs = build_root_system(Family::A, n - 1).unwrap();
        let p = q(3, 8);
        let expect = Q::new(2.into(), ((n * (n - 1)) as i64).into()) * odds(&p);
        for d in 1..n {
            assert_eq!(sigma_single_s0(&rs, &c_d(n, d), &p).unwrap().value, expect, "n = {n}, d = {d}");
            assert_eq!(resolvent_apply(&rs, &c_d(n, d), &p, rs.theta_coroot()).unwrap(), type_a_inverse(n, d, &p));
        }
    }
}

#[test]
fn stochastic_ambient_operator() {
    for n in 2..=6 {
        for p in ps() {
            for d in 1..n {
                let m = r_check_word(n, &c_d(n, d), &p);
                for i in 0..n {
                    let row: Q = m.row(i).iter().cloned().sum();
                    let col: Q = m.column(i).0.into_iter().sum();
                    assert!(row.is_one() && col.is_one());
                }
            }
        }
    }
}

#[test]
fn subset_data_matches_manual_product() {
    let rs = build_root_system(Family::C, 2).unwrap();
    let w: LetterWord = "2,1,0".parse().unwrap();
    let (p, g) = subset_data(&rs, &w, &[]).unwrap();
    assert!(p == billiard_walks::linalg::QMat::identity(2) && g.is_zero());
    // Position 1 is s0 and is processed first.
    let (p, g) = subset_data(&rs, &w, &[1, 3]).unwrap();
    assert_eq!(g, rs.theta_coroot().clone());
    assert_eq!(p, rs.reflection(0) * rs.reflection(2));
    let (_, g) = subset_data(&rs, &w, &[2, 1]).unwrap();
    assert_eq!(g, rs.theta_coroot().clone());
}

#[test]
fn naive_and_prefix_tree_parts_agree() {
    for (f, r, word) in [(Family::A, 2, "1,0,2,0,1"), (Family::G, 2, "0,1,2,1"), (Family::B, 3, "3,0,2,1,0")] {
        let rs = build_root_system(f, r).unwrap();
        let w: LetterWord = word.parse().unwrap();
        for p in ps() {
            let a = general_parts(&rs, &w, &p, SubsetEngine::PrefixTree, DEFAULT_SUBSET_BUDGET).unwrap();
            let b = general_parts(&rs, &w, &p, SubsetEngine::Naive, DEFAULT_SUBSET_BUDGET).unwrap();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn variance_positive_for_full_words() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for (f, r) in [(Family::A, 2), (Family::A, 3), (Family::C, 3), (Family::D, 4), (Family::G, 2)] {
        let rs = build_root_system(f, r).unwrap();
        for _ in 0..5 {
            let w = random_full_word(&rs, r + 3, &mut rng);
            for p in ps() {
                assert!(sigma_general(&rs, &w, &p).unwrap().value > Q::zero(), "{w}");
            }
        }
    }
}
