//! The space W_p of polynomial Weyl tensors: dimension, signature, Lorentz closure.

use ahmass::weylspace::space::{build_wp, closure_failures, dim_formula, form_is_invariant, signature_formula, signature_wp};

fn main() -> ahmass::Result<()> {
    let mut args = std::env::args().skip(1).filter_map(|a| a.parse::<usize>().ok());
    let n = args.next().unwrap_or(4);
    let pmax = args.next().unwrap_or(1);
    for p in 0..=pmax {
        let ws = build_wp(n, p);
        println!(
            "n = {n}, p = {p}: dim {} (formula {}), signature {:?} (formula {:?}), closure failures {}, invariant form {}",
            ws.dim(),
            dim_formula(n, p),
            signature_wp(&ws)?,
            signature_formula(n, p),
            closure_failures(&ws)?,
            form_is_invariant(&ws)
        );
    }
    Ok(())
}
