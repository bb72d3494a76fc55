//! Linearized gravity operators on Minkowski space for polynomial tensors.

use crate::error::{Error, Result};
use crate::exactcore::linalg::{solve, SparseMatrix};
use crate::exactcore::sphere::{minkowski_square, wave_operator};
use crate::exactcore::{Field, Indexer, Poly, PolyTensor, Q};
use crate::harmonic::harmonic_components;
use crate::lorentz::eta;

pub fn eta_q<C: Field>(mu: usize) -> C {
    C::from_i64(eta(mu))
}

/// eta^{ab} h_{ab}.
pub fn trace2<C: Field>(h: &PolyTensor<C>) -> Poly<C> {
    let mut t = Poly::zero(h.nvars);
    for a in 0..h.dim {
        t.add_scaled(h.get(&[a, a]), &eta_q(a));
    }
    t
}

/// (div h)_nu = d^mu h_{mu nu}.
pub fn divergence<C: Field>(h: &PolyTensor<C>) -> PolyTensor<C> {
    let mut r = PolyTensor::zero(h.dim, 1, h.nvars);
    for nu in 0..h.dim {
        let mut s = Poly::zero(h.nvars);
        for mu in 0..h.dim {
            s.add_scaled(&h.get(&[mu, nu]).deriv(mu), &eta_q(mu));
        }
        r.set(&[nu], s);
    }
    r
}

pub fn wave_tensor<C: Field>(t: &PolyTensor<C>) -> PolyTensor<C> {
    t.map(wave_operator)
}

/// d_mu xi_nu + d_nu xi_mu.
pub fn sym_grad<C: Field>(xi: &PolyTensor<C>) -> PolyTensor<C> {
    let g = xi.gradient();
    g.add(&g.permute(&[1, 0]))
}

/// Constant metric eta as a rank-2 tensor.
pub fn eta_tensor<C: Field>(dim: usize, nvars: usize) -> PolyTensor<C> {
    let mut t = PolyTensor::zero(dim, 2, nvars);
    for a in 0..dim {
        t.set(&[a, a], Poly::constant(nvars, eta_q(a)));
    }
    t
}

/// Six-term linearized Einstein operator.
pub fn linearized_einstein<C: Field>(h: &PolyTensor<C>) -> PolyTensor<C> {
    let d = h.dim;
    let nv = h.nvars;
    let tr = trace2(h);
    let div = divergence(h);
    let mut ddh = Poly::zero(nv);
    for a in 0..d {
        ddh.add_scaled(&div.get(&[a]).deriv(a), &eta_q(a));
    }
    let box_tr = wave_operator(&tr);
    let mut r = PolyTensor::zero(d, 2, nv);
    for mu in 0..d {
        for nu in 0..d {
            let mut s = wave_operator(h.get(&[mu, nu])).neg();
            s = s.add(&div.get(&[nu]).deriv(mu));
            s = s.add(&div.get(&[mu]).deriv(nu));
            s = s.sub(&tr.deriv(mu).deriv(nu));
            if mu == nu {
                s.add_scaled(&ddh, &eta_q::<C>(mu).neg());
                s.add_scaled(&box_tr, &eta_q(mu));
            }
            r.set(&[mu, nu], s);
        }
    }
    r
}

/// R_{mu nu alpha beta} = -(1/2)(d_mu d_alpha h_{nu beta} + d_nu d_beta h_{mu alpha}
///                              - d_mu d_beta h_{nu alpha} - d_nu d_alpha h_{mu beta}).
pub fn linearized_riemann<C: Field>(h: &PolyTensor<C>) -> PolyTensor<C> {
    let d = h.dim;
    let mut r = PolyTensor::zero(d, 4, h.nvars);
    let half = C::from_q(Q::new((-1).into(), 2.into()));
    // second derivatives dd[a][b][(x,y)] = d_a d_b h_xy
    let dd = h.gradient().gradient();
    for mu in 0..d {
        for nu in 0..d {
            if mu == nu {
                continue;
            }
            for al in 0..d {
                for be in 0..d {
                    if al == be {
                        continue;
                    }
                    let mut s = dd.get(&[mu, al, nu, be]).clone();
                    s = s.add(dd.get(&[nu, be, mu, al]));
                    s = s.sub(dd.get(&[mu, be, nu, al]));
                    s = s.sub(dd.get(&[nu, al, mu, be]));
                    r.set(&[mu, nu, al, be], s.scale(&half));
                }
            }
        }
    }
    r
}

/// Checks index symmetries, eta-trace, both Bianchi identities.
pub fn check_weyl_constraints<C: Field>(w: &PolyTensor<C>) -> Result<()> {
    let d = w.dim;
    for idx in w.indices() {
        let (a, b, c, e) = (idx[0], idx[1], idx[2], idx[3]);
        let v = w.get(&idx);
        if v.add(w.get(&[b, a, c, e])) != Poly::zero(w.nvars) {
            return Err(Error::Check("antisymmetry in the first pair".into()));
        }
        if v.add(w.get(&[a, b, e, c])) != Poly::zero(w.nvars) {
            return Err(Error::Check("antisymmetry in the second pair".into()));
        }
        if v != w.get(&[c, e, a, b]) {
            return Err(Error::Check("pair symmetry".into()));
        }
        let cyc = v.add(w.get(&[a, c, e, b])).add(w.get(&[a, e, b, c]));
        if !cyc.is_zero() {
            return Err(Error::Check("first Bianchi identity".into()));
        }
    }
    for nu in 0..d {
        for be in 0..d {
            let mut s = Poly::zero(w.nvars);
            for mu in 0..d {
                s.add_scaled(w.get(&[mu, nu, mu, be]), &eta_q(mu));
            }
            if !s.is_zero() {
                return Err(Error::Check("eta-trace".into()));
            }
        }
    }
    let g = w.gradient();
    for l in 0..d {
        for m in 0..d {
            for n in 0..d {
                for a in 0..d {
                    for b in 0..d {
                        let s = g.get(&[l, m, n, a, b]).add(g.get(&[m, n, l, a, b])).add(g.get(&[n, l, m, a, b]));
                        if !s.is_zero() {
                            return Err(Error::Check("second Bianchi identity".into()));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Trace-free and divergence-free.
pub fn is_de_donder<C: Field>(h: &PolyTensor<C>) -> bool {
    trace2(h).is_zero() && divergence(h).is_zero()
}

/// F with wave_operator(F) = G for homogeneous G, through the harmonic decomposition.
pub fn wave_preimage(g: &Poly<Q>) -> Result<Poly<Q>> {
    let n1 = g.nvars();
    let d = match g.degree() {
        None => return Ok(Poly::zero(n1)),
        Some(d) => d,
    };
    let comps = harmonic_components(g)?;
    let eta = minkowski_square::<Q>(n1);
    let mut f = Poly::zero(n1);
    let mut eta_k = eta.clone();
    for (j, gj) in comps.iter().enumerate() {
        // wave(eta^{k} H) = 2k(N + 2m + 2k - 2) eta^{k-1} H, k = j + 1, m = deg H
        let k = (j + 1) as i64;
        let m = (d - 2 * j) as i64;
        let c = Q::from_i64(2 * k * (n1 as i64 + 2 * m + 2 * k - 2));
        f = f.add(&eta_k.mul(gj).scale(&c.inv()));
        eta_k = eta_k.mul(&eta);
    }
    Ok(f)
}

/// Gauge transformation h + d xi + (d xi)^T into de Donder gauge. Returns (h_fixed, xi).
pub fn de_donder_fix(h: &PolyTensor<Q>) -> Result<(PolyTensor<Q>, PolyTensor<Q>)> {
    let d = h.dim;
    let nv = h.nvars;
    if !linearized_einstein(h).is_zero() {
        return Err(Error::Invalid("input does not solve the linearized Einstein equations".into()));
    }
    let deg = h.comps.iter().filter_map(|c| c.degree()).max().unwrap_or(0);
    // step 1: wave xi0_nu = -d^mu h_{mu nu} + (1/2) d_nu tr h
    let tr = trace2(h);
    let div = divergence(h);
    let mut xi0 = PolyTensor::zero(d, 1, nv);
    for nu in 0..d {
        let rhs = div.get(&[nu]).neg().add(&tr.deriv(nu).scale(&Q::new(1.into(), 2.into())));
        let f = wave_preimage(&rhs)?;
        if wave_operator(&f) != rhs {
            return Err(Error::Internal("wave preimage failed".into()));
        }
        xi0.set(&[nu], f);
    }
    let h1 = h.add(&sym_grad(&xi0));
    // step 2: xi harmonic with d^mu xi_mu = -(1/2) tr h1
    let target = trace2(&h1).scale(&Q::new((-1).into(), 2.into()));
    let xi1 = if target.is_zero() {
        PolyTensor::zero(d, 1, nv)
    } else {
        let hp = crate::harmonic::build_hp(d - 1, deg + 1);
        let mut ix: Indexer<crate::exactcore::Mono> = Indexer::new();
        // columns: (mu, basis index)
        let nb = hp.basis.len();
        let mut cols: Vec<Vec<(usize, Q)>> = Vec::new();
        for mu in 0..d {
            for b in &hp.basis {
                let img = b.deriv(mu).scale(&eta_q(mu));
                cols.push(img.terms().map(|(e, c)| (ix.index(e.clone()), c.clone())).collect());
            }
        }
        for (e, _) in target.terms() {
            ix.index(e.clone());
        }
        let mut rows: Vec<Vec<(usize, Q)>> = vec![Vec::new(); ix.len()];
        for (j, col) in cols.iter().enumerate() {
            for (r, c) in col {
                rows[*r].push((j, c.clone()));
            }
        }
        let mut rhs = vec![Q::zero(); ix.len()];
        for (e, c) in target.terms() {
            rhs[ix.get(e).unwrap()] = c.clone();
        }
        let mut m = SparseMatrix::new(cols.len());
        let mut b = Vec::new();
        for (r, v) in rows.into_iter().zip(rhs) {
            m.rows.push(crate::exactcore::linalg::normalize_row(r));
            b.push(v);
        }
        let sol = solve(&m, &b).ok_or_else(|| Error::Invalid("trace condition has no harmonic solution".into()))?;
        let mut xi = PolyTensor::zero(d, 1, nv);
        for mu in 0..d {
            let mut p = Poly::zero(nv);
            for (k, bp) in hp.basis.iter().enumerate() {
                p.add_scaled(bp, &sol[mu * nb + k]);
            }
            xi.set(&[mu], p);
        }
        xi
    };
    let xi = xi0.add(&xi1);
    let fixed = h.add(&sym_grad(&xi));
    if !is_de_donder(&fixed) || !wave_tensor(&fixed).is_zero() {
        return Err(Error::Internal("de Donder post-conditions failed".into()));
    }
    Ok((fixed, xi))
}
