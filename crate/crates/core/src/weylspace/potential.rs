//! Reconstruction of a linearized metric from a polynomial Weyl tensor.

use super::forms::homotopy_on_slots;
use super::tensors::{check_weyl_constraints, linearized_riemann};
use crate::error::{Error, Result};
use crate::exactcore::{Field, PolyTensor, Q};


fn cyclic3(f: &PolyTensor<Q>) -> PolyTensor<Q> {
    f.add(&f.permute(&[1, 2, 0])).add(&f.permute(&[2, 0, 1]))
}

/// Returns h with linearized_riemann(h) = -W/2.
///
/// Stages: f = I_2 W on the first pair; remove the totally antisymmetric part of f by an exact
/// 3-form; h = I_2 f on the last pair; remove the antisymmetric part of h by a gradient.
pub fn weyl_to_potential(w: &PolyTensor<Q>) -> Result<PolyTensor<Q>> {
    check_weyl_constraints(w)?;
    let d = w.dim;
    if w.is_zero() {
        return Ok(PolyTensor::zero(d, 2, w.nvars));
    }
    // f_{nu alpha beta}: d_mu f_{nu ab} - d_nu f_{mu ab} = W_{mu nu ab}
    let f = homotopy_on_slots(w, &[0, 1]);
    if f.gradient().sub(&f.gradient().permute(&[1, 0, 2, 3])) != *w {
        return Err(Error::Check("first homotopy stage does not reproduce W".into()));
    }
    // Omega = cyclic sum, a closed 3-form; theta = -I_3 Omega
    let omega = cyclic3(&f);
    let theta = homotopy_on_slots(&omega, &[0, 1, 2]).scale(&Q::from_i64(-1));
    let ft = f.add(&theta.gradient());
    if !cyclic3(&ft).is_zero() {
        return Err(Error::Check("cyclic part of f not removed".into()));
    }
    // h_{mu alpha}: d_alpha h_{mu beta} - d_beta h_{mu alpha} = ft_{mu alpha beta}
    let h = homotopy_on_slots(&ft, &[1, 2]);
    let dh = h.gradient();
    // dh[a, mu, b] = d_a h_{mu b}; want dh[a,mu,b] - dh[b,mu,a] = ft[mu,a,b]
    let curl = dh.permute(&[1, 0, 2]).sub(&dh.permute(&[1, 2, 0]));
    if curl != ft {
        return Err(Error::Check("second homotopy stage does not reproduce f".into()));
    }
    // antisymmetric part A = h - h^T, v = I_2 A, h~ = h + d_beta v_alpha
    let a = h.sub(&h.permute(&[1, 0]));
    let v = homotopy_on_slots(&a, &[0, 1]);
    let ht = h.add(&v.gradient().permute(&[1, 0]));
    if ht != ht.permute(&[1, 0]) {
        return Err(Error::Check("symmetrized potential is not symmetric".into()));
    }
    if linearized_riemann(&ht) != w.scale(&Q::new((-1).into(), 2.into())) {
        return Err(Error::Check("reconstructed potential does not reproduce W".into()));
    }
    Ok(ht)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::field::q;
    use crate::weylspace::space::build_wp;
    use crate::weylspace::tensors::{linearized_einstein, sym_grad};
    use crate::exactcore::{Poly, PolyTensor};

    #[test]
    fn zero_maps_to_zero() {
        let w = PolyTensor::<Q>::zero(5, 4, 5);
        assert!(weyl_to_potential(&w).unwrap().is_zero());
    }

    #[test]
    fn round_trip_on_basis() {
        for (n, p) in [(3, 0), (3, 1), (4, 0)] {
            let ws = build_wp(n, p);
            for i in 0..ws.dim().min(6) {
                let w = ws.tensor(i);
                let h = weyl_to_potential(&w).unwrap();
                assert_eq!(linearized_riemann(&h), w.scale(&Q::new((-1).into(), 2.into())));
                assert!(linearized_einstein(&h).is_zero());
            }
        }
    }

    #[test]
    fn non_weyl_rejected() {
        let mut w = PolyTensor::<Q>::zero(4, 4, 4);
        w.set(&[0, 1, 0, 1], Poly::constant(4, q(1)));
        assert!(weyl_to_potential(&w).is_err());
    }

    #[test]
    fn riemann_of_gauge_is_invisible() {
        let mut xi = PolyTensor::<Q>::zero(4, 1, 4);
        xi.set(&[2], Poly::var(4, 0).pow(3));
        assert!(linearized_riemann(&sym_grad(&xi)).is_zero());
    }
}
