//! Gauss-Legendre quadrature on intervals and tensor-product boxes.
//!
//! Every integrand in the engine is a (possibly hyperbolic) trigonometric
//! polynomial, for which Gauss-Legendre rules converge spectrally.

use crate::error::{Error, Result};

/// Default number of nodes per axis.
pub const DEFAULT_POINTS: usize = 64;

/// An `n`-point Gauss-Legendre rule on the reference interval `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds the rule by Newton iteration on the Legendre recurrence.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "a quadrature rule needs at least one node".into(),
            ));
        }
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            // Tricomi's initial guess for the i-th largest root.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d.is_finite() {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = x;
            weights[i] = w;
            nodes[n - 1 - i] = -x;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Ok(Self { nodes, weights })
    }

    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// `true` if the rule has no nodes (never the case for a built rule).
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes on `[-1, 1]`, in decreasing order.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Weights matching [`nodes`](Self::nodes).
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Nodes and weights affinely mapped onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let xs = self.nodes.iter().map(|&x| mid + half * x).collect();
        let ws = self.weights.iter().map(|&w| half * w).collect();
        (xs, ws)
    }

    /// `∫_a^b f(x) dx`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }

    /// Tensor-product integral over the axis-aligned box `[lo, hi]`.
    ///
    /// The integrand receives a slice of length `lo.len()`.
    pub fn integrate_box<F: FnMut(&[f64]) -> f64>(&self, lo: &[f64], hi: &[f64], mut f: F) -> f64 {
        assert_eq!(lo.len(), hi.len(), "box corners must have equal dimension");
        let dim = lo.len();
        if dim == 0 {
            return f(&[]);
        }
        let axes: Vec<(Vec<f64>, Vec<f64>)> =
            lo.iter().zip(hi).map(|(&a, &b)| self.mapped(a, b)).collect();
        let n = self.len();
        let mut idx = vec![0usize; dim];
        let mut point = vec![0.0; dim];
        let mut acc = 0.0;
        loop {
            let mut w = 1.0;
            for d in 0..dim {
                point[d] = axes[d].0[idx[d]];
                w *= axes[d].1[idx[d]];
            }
            acc += w * f(&point);
            // odometer increment
            let mut d = 0;
            loop {
                idx[d] += 1;
                if idx[d] < n {
                    break;
                }
                idx[d] = 0;
                d += 1;
                if d == dim {
                    return acc;
                }
            }
        }
    }
}

/// `(P_n(x), P_n'(x))` from the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let dp = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let rule = GaussLegendre::new(5).unwrap();
        // degree 9 is the highest degree integrated exactly by 5 nodes
        let v = rule.integrate(0.0, 2.0, |x| x.powi(9));
        assert!((v - 2f64.powi(10) / 10.0).abs() < 1e-11);
    }

    #[test]
    fn weights_sum_to_interval_length() {
        for n in [1, 2, 7, 64, 129] {
            let rule = GaussLegendre::new(n).unwrap();
            let s: f64 = rule.weights().iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n = {n}: {s}");
        }
    }

    #[test]
    fn known_three_point_rule() {
        let rule = GaussLegendre::new(3).unwrap();
        let r = (0.6f64).sqrt();
        assert!((rule.nodes()[0] - r).abs() < 1e-15);
        assert!(rule.nodes()[1].abs() < 1e-15);
        assert!((rule.weights()[0] - 5.0 / 9.0).abs() < 1e-15);
        assert!((rule.weights()[1] - 8.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn trigonometric_integrand_converges() {
        let rule = GaussLegendre::new(64).unwrap();
        let v = rule.integrate(0.0, std::f64::consts::PI, |x| (10.0 * x).sin().powi(2));
        assert!((v - std::f64::consts::FRAC_PI_2).abs() < 1e-13);
    }

    #[test]
    fn box_integral_factorises() {
        let rule = GaussLegendre::new(16).unwrap();
        let v = rule.integrate_box(&[0.0, 0.0, 0.0], &[1.0, 2.0, 3.0], |p| p[0] * p[1] * p[2]);
        assert!((v - 0.5 * 2.0 * 4.5).abs() < 1e-12);
    }

    #[test]
    fn zero_nodes_rejected() {
        assert!(GaussLegendre::new(0).is_err());
    }
}
