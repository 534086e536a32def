//! Group arithmetic in the affine Weyl group of type C̃2: products,
//! inverses, alcove centroids and Coxeter lengths.

use billiard_walks::linalg::QVec;
use billiard_walks::rootsys::{build_root_system, Family};
use billiard_walks::weylgroup::{multiply, AffineElement};

fn show(v: &QVec) -> String {
    format!("({})", v.to_strings().join(", "))
}

fn main() -> billiard_walks::error::Result<()> {
    let rs = build_root_system(Family::C, 2)?;
    let u = AffineElement::from_word(&rs, &[2, 1, 0])?;
    let v = AffineElement::from_word(&rs, &[0, 1])?;
    let uv = multiply(&u, &v)?;

    for (name, x) in [("u = s2s1s0", &u), ("v = s0s1", &v), ("uv", &uv), ("u⁻¹", &u.inverse())] {
        println!(
            "{name:<12} ℓ = {:>2}  ξ = {:<10} centroid = {}",
            x.coxeter_length(&rs),
            show(x.translation()),
            show(&x.centroid(&rs))
        );
    }
    assert!(multiply(&u, &u.inverse())?.is_identity());

    let mut w = AffineElement::identity(&rs);
    print!("ℓ((s2s1s0)^k):");
    for _ in 0..8 {
        for &i in &[0, 1, 2] {
            w = w.apply_letter(&rs, i)?;
        }
        print!(" {}", w.coxeter_length(&rs));
    }
    println!();
    Ok(())
}
