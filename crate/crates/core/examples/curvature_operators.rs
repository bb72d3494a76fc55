//! Cotton, Bach and Ricci eigenvalues on highest-weight tensors, and the constant mu_p.

use ahmass::charges::{bach_derived, bach_report, cotton_reports, mu_p, ricci_report, transverse_hw_vector};

fn main() -> ahmass::Result<()> {
    for p in 0..=2 {
        for r in cotton_reports(p)? {
            println!("{:<22} p = {p}: displayed {}, computed {}", r.operator, r.predicted, r.computed.map(|c| c.to_string()).unwrap_or_default());
        }
    }
    for n in [4, 5] {
        for p in 0..=1 {
            let r = bach_report(n, p)?;
            println!(
                "{:<22} n = {n}, p = {p}, degree {}: displayed {}, computed {}, (p+1)(n+p-2)K = {}",
                r.operator,
                r.degree,
                r.predicted,
                r.computed.map(|c| c.to_string()).unwrap_or_default(),
                bach_derived(n, r.degree)
            );
        }
        let ric = ricci_report(&transverse_hw_vector(n, 0)?, 0)?;
        println!("ricci n = {n}, degree {}: {} {}", ric.degree, ric.computed.map(|c| c.to_string()).unwrap_or_default(), ric.note);
    }
    for (n, p) in [(3, 0), (4, 1), (4, 2)] {
        let m = mu_p(n, p)?;
        println!(
            "mu_{p} (n = {n}): solved {}, printed {} (satisfies: {}), pipeline {}",
            m.mu,
            m.printed,
            m.printed_satisfies,
            m.mu_pipeline.map(|x| x.to_string()).unwrap_or_default()
        );
    }
    Ok(())
}
