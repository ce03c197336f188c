//! Gauss rules mapped onto the unit interval.

use std::f64::consts::PI;

/// Nodes and weights of a quadrature rule on `[0, 1]`.
#[derive(Debug, Clone)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(z, w)| w * f(*z))
            .sum()
    }
}

/// `points`-node Gauss-Legendre rule for `int_0^1 f(z) dz`, exact for
/// polynomials of degree `2 * points - 1`.
pub fn gauss_legendre(points: usize) -> Rule {
    assert!(points > 0, "quadrature needs at least one node");
    let n = points;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = 0.5 * (1.0 - x);
        nodes[n - 1 - i] = 0.5 * (1.0 + x);
        weights[i] = 0.5 * w;
        weights[n - 1 - i] = 0.5 * w;
    }
    Rule { nodes, weights }
}

/// Smallest Gauss-Legendre rule that integrates degree `degree` exactly.
pub fn gauss_legendre_exact_for(degree: usize) -> Rule {
    gauss_legendre(degree / 2 + 1)
}

/// `points`-node Gauss-Chebyshev rule for
/// `int_0^1 f(z) / sqrt(z (1 - z)) dz`.
pub fn gauss_chebyshev(points: usize) -> Rule {
    assert!(points > 0, "quadrature needs at least one node");
    let w = PI / points as f64;
    let nodes = (1..=points)
        .map(|j| 0.5 * (1.0 + ((2 * j - 1) as f64 * PI / (2 * points) as f64).cos()))
        .collect();
    Rule {
        nodes,
        weights: vec![w; points],
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}
