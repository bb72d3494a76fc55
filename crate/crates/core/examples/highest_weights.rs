//! Highest-weight vectors of H_{p+2} (x) Sym^2_0 and the comparison with closed forms.

use ahmass::weylspace::hw::hw_vectors_weyl;

fn main() -> ahmass::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let n = args.first().copied().unwrap_or(4);
    let p = args.get(1).copied().unwrap_or(0);
    let r = hw_vectors_weyl(n, p)?;
    println!("n = {n}, p = {p}");
    for e in &r.entries {
        println!(
            "  {:<14} weight {:?}  hw vectors {}  dim {}  de Donder {}  transverse {}",
            e.label,
            e.weight,
            e.vectors.len(),
            e.weyl_dimension,
            e.de_donder,
            e.transverse
        );
    }
    println!("  sum of dimensions {} (expected {})", r.dimension_sum, r.dimension_expected);
    println!("  Weyl-summand dimension {}", r.weyl_space_dimension);
    for c in &r.comparisons {
        println!("  [{}] {}: {}", if c.matches { "match" } else { "MISMATCH" }, c.name, c.note);
    }
    Ok(())
}
