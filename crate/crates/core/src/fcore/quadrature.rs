use std::f64::consts::PI;

/// Quadrature rule `∫_a^b f ≈ Σ w_i f(x_i)` on a reference interval.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Highest polynomial degree integrated exactly.
    pub degree: usize,
    pub interval: (f64, f64),
}

impl QuadratureRule {
    /// `n`-point Gauss-Legendre rule on `[-1, 1]`, exact up to degree `2n - 1`.
    ///
    /// Nodes are found by Newton iteration on the Legendre three-term
    /// recurrence from Chebyshev starting values.
    pub fn gauss_legendre(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let half = n.div_ceil(2);
        for i in 0..half {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self {
            nodes,
            weights,
            degree: 2 * n - 1,
            interval: (-1.0, 1.0),
        }
    }

    /// Smallest Gauss-Legendre rule exact for degree `degree`.
    pub fn exact_for(degree: usize) -> Self {
        Self::gauss_legendre((degree + 2) / 2)
    }

    /// Same rule transported affinely to `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> Self {
        let (lo, hi) = self.interval;
        let scale = (b - a) / (hi - lo);
        Self {
            nodes: self.nodes.iter().map(|x| a + (x - lo) * scale).collect(),
            weights: self.weights.iter().map(|w| w * scale).collect(),
            degree: self.degree,
            interval: (a, b),
        }
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// `(P_n(x), P_n'(x))`.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}
