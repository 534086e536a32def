use billiard_walks::linalg::{q, q_to_f64, QMat, Q};
use billiard_walks::rootsys::{admissible_types, build_root_system, Family};
use billiard_walks::weylgroup::{enumerate_finite_weyl, DEFAULT_WEYL_BUDGET};
use num_traits::{One, Zero};

/// (family, rank, |Φ⁺|, Coxeter number h, |W̄|)
fn classical() -> Vec<(Family, usize, usize, usize, u128)> {
    let fact = |n: u128| (1..=n).product::<u128>();
    let mut v = Vec::new();
    for r in 1..=7 {
        v.push((Family::A, r, r * (r + 1) / 2, r + 1, fact(r as u128 + 1)));
    }
    for r in 2..=6 {
        let order = (1u128 << r) * fact(r as u128);
        if r >= 3 {
            v.push((Family::B, r, r * r, 2 * r, order));
        }
        v.push((Family::C, r, r * r, 2 * r, order));
    }
    for r in 4..=6 {
        v.push((Family::D, r, r * (r - 1), 2 * r - 2, (1u128 << (r - 1)) * fact(r as u128)));
    }
    v.extend([
        (Family::E, 6, 36, 12, 51_840),
        (Family::E, 7, 63, 18, 2_903_040),
        (Family::E, 8, 120, 30, 696_729_600),
        (Family::F, 4, 24, 12, 1152),
        (Family::G, 2, 6, 6, 12),
    ]);
    v
}

#[test]
fn root_counts_coxeter_numbers_and_orders() {
    for (f, r, npos, h, order) in classical() {
        let rs = build_root_system(f, r).unwrap();
        assert_eq!(rs.positive_roots().len(), npos, "{}", rs.name());
        let height: Q = rs.highest_root_coeffs().iter().cloned().sum();
        assert_eq!(height + Q::one(), Q::from_integer((h as i64).into()), "{}", rs.name());
        assert_eq!(rs.weyl_order(), order, "{}", rs.name());
        if order <= DEFAULT_WEYL_BUDGET as u128 {
            assert_eq!(enumerate_finite_weyl(&rs, DEFAULT_WEYL_BUDGET).unwrap().len() as u128, order);
        }
    }
}

#[test]
fn reflections_are_orthogonal_involutions() {
    for (f, r) in admissible_types(6) {
        let rs = build_root_system(f, r).unwrap();
        let id = QMat::identity(rs.ambient_dim());
        for p in rs.reflections() {
            assert_eq!(p * p, id);
            assert_eq!(p.transpose(), *p);
        }
    }
}

#[test]
fn theta_coroot_and_centroid() {
    for (f, r) in admissible_types(6) {
        let rs = build_root_system(f, r).unwrap();
        let theta = rs.highest_root();
        assert_eq!(rs.theta_coroot(), &theta.scale(&(q(2, 1) / theta.norm_sq())));
        assert!(rs.in_coroot_lattice(rs.theta_coroot()));
        let c = rs.fundamental_centroid();
        assert!(rs.simple_roots().iter().all(|a| a.dot(c) > Q::zero()));
        assert!(c.dot(theta) < Q::one());
        // Every positive root is a non-negative combination of simple roots.
        for beta in rs.positive_roots() {
            let coords = rs.coroot_coords(&beta.scale(&(q(2, 1) / beta.norm_sq()))).unwrap();
            assert!(coords.0.iter().all(|x| *x >= Q::zero()), "{}", rs.name());
        }
    }
}

#[test]
fn root_norm_sums() {
    let expect = [
        (Family::A, 2, 3.0 * 2f64.sqrt()),
        (Family::C, 2, 2.0 * 2f64.sqrt() + 4.0),
        (Family::G, 2, 3.0 * 2f64.sqrt() + 3.0 * 6f64.sqrt()),
    ];
    for (f, r, s) in expect {
        let rs = build_root_system(f, r).unwrap();
        assert!((rs.root_norm_sum().to_f64() - s).abs() < 1e-12, "{}", rs.name());
    }
    for (f, r) in admissible_types(8) {
        let rs = build_root_system(f, r).unwrap();
        let direct: f64 = rs.positive_roots().iter().map(|b| q_to_f64(&b.norm_sq()).sqrt()).sum();
        assert!((rs.root_norm_sum().to_f64() - direct).abs() < 1e-9, "{}", rs.name());
    }
}

#[test]
fn inadmissible_ranks_rejected() {
    for (f, r) in [(Family::B, 2), (Family::D, 3), (Family::E, 5), (Family::E, 9), (Family::F, 3), (Family::G, 3)] {
        assert!(build_root_system(f, r).is_err());
    }
    assert!(build_root_system(Family::A, 0).is_err());
}
