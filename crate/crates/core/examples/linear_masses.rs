//! Conformal, Weyl and chiral Weyl masses, and the Wang mass vector.

use ahmass::invariants::{mass_value, wang_mass_vector, Family};
use ahmass::massaspect::{load_mass_aspect, random_transverse};
use std::path::Path;

fn main() -> ahmass::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let round = load_mass_aspect(&dir.join("round_n3.json"), false)?;
    let v = mass_value(Family::Conformal, &round, 0)?;
    println!("conformal mass of the round metric, n1 = 0: {}", v.coefficients[0]);

    let m = load_mass_aspect(&dir.join("aspect_n3_k3.toml"), true)?;
    let wang: Vec<String> = wang_mass_vector(&m)?.iter().map(|x| x.to_string()).collect();
    println!("Wang mass vector: [{}]", wang.join(", "));

    let m4 = load_mass_aspect(&dir.join("aspect_n3_k4.json"), true)?;
    for fam in [Family::Weyl, Family::WeylPlus, Family::WeylMinus] {
        let v = mass_value(fam, &m4, 0)?;
        let nz = v.coefficients.iter().filter(|c| !ahmass::Field::is_zero(*c)).count();
        println!("{fam} mass against W_0: {} coefficients, {} nonzero, first {}", v.coefficients.len(), nz, v.coefficients[0]);
    }

    let m5 = random_transverse(4, Family::Weyl.weight(4, 0), 3)?;
    let v = mass_value(Family::Weyl, &m5, 0)?;
    println!("n = 4 Weyl mass of a random aspect: {} coefficients", v.coefficients.len());
    Ok(())
}
