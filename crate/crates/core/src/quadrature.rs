//! Gauss-Legendre quadrature.
//!
//! The integrands in this crate are low-order trigonometric polynomials, so
//! a modest node count is already far beyond sufficient; the default used by
//! the folding machinery is 256 nodes per interval.

use crate::real::Real;

/// Nodes and weights of an `n`-point Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    /// Computes the rule by Newton iteration on the Legendre polynomial
    /// `P_n`, seeded with the Chebyshev-like initial guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "need at least two quadrature nodes");
        let mut nodes = vec![T::zero(); n];
        let mut weights = vec![T::zero(); n];
        let nf = T::of(n as f64);
        // Roots are symmetric; solve for the first half and mirror.
        for i in 0..n.div_ceil(2) {
            let k = T::of(i as f64 + 0.75);
            let mut x = (k * T::PI() / (nf + T::of(0.5))).cos();
            let mut dp = T::one();
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x = x - dx;
                if dx.abs() <= T::epsilon() * (T::one() + x.abs()) {
                    break;
                }
            }
            let w = T::of(2.0) / ((T::one() - x * x) * dp * dp);
            nodes[i] = -x;
            weights[i] = w;
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Integrates `f` over `[a, b]`.
    pub fn integrate<F: FnMut(T) -> T>(&self, a: T, b: T, mut f: F) -> T {
        let half = T::of(0.5);
        let mid = half * (a + b);
        let scale = half * (b - a);
        let mut acc = T::zero();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + scale * x);
        }
        acc * scale
    }

    /// Nodes mapped to `[a, b]`, paired with scaled weights.
    pub fn mapped(&self, a: T, b: T) -> impl Iterator<Item = (T, T)> + '_ {
        let half = T::of(0.5);
        let mid = half * (a + b);
        let scale = half * (b - a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + scale * x, w * scale))
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    for k in 2..=n {
        let kf = T::of(k as f64);
        let p2 = ((T::of(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = T::of(n as f64) * (x * p1 - p0) / (x * x - T::one());
    (p1, d)
}
