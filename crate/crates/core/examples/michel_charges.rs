//! Charge integrals on the model metric b + e: F_p and Scal charges against the conformal mass.

use ahmass::charges::michel::{fp_convergence, scal_mass_vector};
use ahmass::exactcore::sphere::sphere_volume;
use ahmass::harmonic::build_hp;
use ahmass::invariants::{conformal_mass, wang_mass_vector};
use ahmass::massaspect::{random_transverse, SphereQuadrature};
use ahmass::{Field, Poly};

fn main() -> ahmass::Result<()> {
    let n = 3;
    let quad = SphereQuadrature::new(n, 32);
    for p in 0..=2usize {
        let m = random_transverse(n, (p + n - 1) as u32, 5 + p as u64)?;
        // first basis element of H_p that the conformal mass sees
        let mut u = Poly::one(n + 1);
        for b in build_hp(n, p).basis {
            if !conformal_mass(&m, &b)?.is_zero() {
                u = b;
                break;
            }
        }
        let c = fp_convergence(&m, &u, 12.0, &quad)?;
        println!("F_{p}: u = {u}");
        for row in &c.rows {
            println!("   r = {:>5.1}  charge {:>16.9e}", row.r, row.charge);
        }
        println!(
            "   limit {:.9e}; Vol * Phi_c = {:.9e}; constant displayed {} derived {}",
            c.limit, c.reference, c.constant_printed, c.constant_derived
        );
    }

    let m = random_transverse(n, n as u32, 11)?;
    let scal = scal_mass_vector(&m, 14.0, &quad)?;
    let wang = wang_mass_vector(&m)?;
    let unit = n as f64 * sphere_volume(n);
    for (s, w) in scal.iter().zip(&wang) {
        println!("Scal charge / (n Vol) = {:>14.10}   Wang component {}", s / unit, w);
    }
    Ok(())
}
