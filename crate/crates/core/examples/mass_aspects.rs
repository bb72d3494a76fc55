//! Loading mass aspects, the transverse adjustment and the infinitesimal Lorentz action.

use ahmass::massaspect::{boost_action, load_mass_aspect, parse_mass_aspect};
use std::path::Path;

fn main() -> ahmass::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let round = load_mass_aspect(&dir.join("round_n3.json"), false)?;
    println!("round metric: transverse {}, tr = {}", round.is_transverse(), round.sigma_trace());

    let raw = load_mass_aspect(&dir.join("aspect_n3_k3.toml"), false)?;
    let adjusted = load_mass_aspect(&dir.join("aspect_n3_k3.toml"), true)?;
    println!("raw aspect transverse {}, adjusted transverse {}", raw.is_transverse(), adjusted.is_transverse());
    println!("tr of adjusted aspect = {}", adjusted.sigma_trace());

    let a1 = boost_action(1, &adjusted)?;
    println!("a_1 . m has trace {}", a1.sigma_trace());

    match parse_mass_aspect("{\"n\": 3, \"k\": 2, \"entries\": [ {\"i\": 4, \"j\": 1, \"exponents\": [0,0,0], \"num\": 1} ]}", false) {
        Ok(_) => println!("unexpected success"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
