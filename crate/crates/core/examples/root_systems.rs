//! Builds every irreducible type at small rank and prints its basic data.

use billiard_walks::rootsys::{admissible_types, build_root_system};

fn main() -> billiard_walks::error::Result<()> {
    println!("{:<4} {:>4} {:>10} {:>12}  θ∨", "type", "|Φ⁺|", "|W̄|", "Σ‖β‖");
    for (family, rank) in admissible_types(4) {
        let rs = build_root_system(family, rank)?;
        let theta: Vec<String> = rs.theta_coroot().to_strings();
        println!(
            "{:<4} {:>4} {:>10} {:>12.6}  ({})",
            rs.name(),
            rs.positive_roots().len(),
            rs.weyl_order(),
            rs.root_norm_sum().to_f64(),
            theta.join(", ")
        );
    }
    let g2 = build_root_system(billiard_walks::rootsys::Family::G, 2)?;
    println!("\n{}", serde_json::to_string_pretty(&g2.to_json()).unwrap());
    Ok(())
}
