//! Product quadrature on S^{n-1}, weights normalized to total mass 1.
//!
//! x_1 = t with weight (1 - t^2)^{(n-3)/2} on [-1, 1] (Gauss-Jacobi), the remaining coordinates
//! sqrt(1 - t^2) times a node of S^{n-2}; the circle uses the trapezoid rule.

use gauss_quad::{FiniteAboveNegOneF64, GaussJacobi};
use std::f64::consts::PI;
use std::num::NonZeroUsize;

#[derive(Clone, Debug)]
pub struct SphereQuadrature {
    pub n: usize,
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

fn circle(m: usize) -> SphereQuadrature {
    let nodes = (0..m)
        .map(|j| {
            let phi = 2.0 * PI * j as f64 / m as f64;
            vec![phi.cos(), phi.sin()]
        })
        .collect();
    SphereQuadrature { n: 2, nodes, weights: vec![1.0 / m as f64; m] }
}

impl SphereQuadrature {
    /// `order` Gauss nodes per polar level and 2 * order trapezoid nodes on the circle.
    pub fn new(n: usize, order: usize) -> Self {
        assert!(n >= 2 && order >= 1);
        if n == 2 {
            return circle(2 * order);
        }
        let inner = SphereQuadrature::new(n - 1, order);
        let a = (n as f64 - 3.0) / 2.0;
        let ab = FiniteAboveNegOneF64::new(a).expect("exponent above -1");
        let rule = GaussJacobi::new(NonZeroUsize::new(order).unwrap(), ab, ab);
        let pairs = rule.as_node_weight_pairs();
        let total: f64 = pairs.iter().map(|(_, w)| w).sum();
        let mut nodes = Vec::with_capacity(pairs.len() * inner.nodes.len());
        let mut weights = Vec::with_capacity(nodes.capacity());
        for &(t, w) in pairs {
            let r = (1.0 - t * t).max(0.0).sqrt();
            for (y, v) in inner.nodes.iter().zip(&inner.weights) {
                let mut x = Vec::with_capacity(n);
                x.push(t);
                x.extend(y.iter().map(|c| r * c));
                nodes.push(x);
                weights.push(w / total * v);
            }
        }
        SphereQuadrature { n, nodes, weights }
    }

    /// Default orders: 64 for S^2, 16 otherwise.
    pub fn default_for(n: usize) -> Self {
        SphereQuadrature::new(n, if n <= 3 { 64 } else { 16 })
    }

    /// Mean value of f over the sphere.
    pub fn integrate(&self, f: impl Fn(&[f64]) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(x, w)| w * f(x)).sum()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::field::q_to_f64;
    use crate::exactcore::sphere_monomial_integral;

    #[test]
    fn reproduces_monomial_integrals() {
        for n in [2usize, 3, 4, 5] {
            let quad = SphereQuadrature::new(n, 8);
            let exps: Vec<Vec<u8>> = vec![vec![0; n], {
                let mut e = vec![0; n];
                e[0] = 4;
                e
            }, {
                let mut e = vec![0; n];
                e[0] = 2;
                e[n - 1] = 2;
                e
            }, {
                let mut e = vec![0; n];
                e[n - 1] = 3;
                e
            }];
            for e in exps {
                let exact = q_to_f64(&sphere_monomial_integral(&e));
                let num = quad.integrate(|x| x.iter().zip(&e).map(|(a, &k)| a.powi(k as i32)).product());
                assert!((exact - num).abs() < 1e-13, "n={n} e={e:?} {exact} {num}");
            }
        }
    }

    #[test]
    fn nodes_on_sphere() {
        let quad = SphereQuadrature::new(4, 5);
        for x in &quad.nodes {
            let r: f64 = x.iter().map(|c| c * c).sum();
            assert!((r - 1.0).abs() < 1e-14);
        }
    }
}
