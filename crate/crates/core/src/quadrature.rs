//! Gauss–Legendre rules and an adaptive bisecting integrator.
//!
//! Each panel is integrated with an `n`-point rule and an independent
//! `n/2`-point rule; the difference is taken as the panel's error estimate
//! (it is the error of the coarser rule, so it overstates the error of the
//! returned value). Panels that miss their share of the tolerance are bisected.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Nodes and weights of an `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on `P_n` from the Tricomi initial guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre order must be positive");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
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
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Fixed-rule integral over `[a, b]`, together with `Σ |w f|` (the
    /// rounding scale of the sum).
    pub fn apply<F>(&self, f: &mut F, a: f64, b: f64) -> (Complex64, f64)
    where
        F: FnMut(f64) -> Complex64,
    {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut sum = Complex64::new(0.0, 0.0);
        let mut scale = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            let v = f(mid + half * x) * w;
            scale += v.norm();
            sum += v;
        }
        (sum * half, scale * half.abs())
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: Complex64,
    pub error: f64,
    pub panels: usize,
}

/// Adaptive integrator holding a pair of rules.
#[derive(Debug, Clone)]
pub struct Integrator {
    fine: GaussLegendre,
    coarse: GaussLegendre,
    max_panels: usize,
}

impl Integrator {
    pub fn new(order: usize, max_panels: usize) -> Self {
        let order = order.max(4);
        Self {
            fine: GaussLegendre::new(order),
            coarse: GaussLegendre::new(order / 2),
            max_panels,
        }
    }

    pub fn order(&self) -> usize {
        self.fine.order()
    }

    /// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
    pub fn integrate<F>(&self, mut f: F, a: f64, b: f64, tol: f64) -> Result<Integral>
    where
        F: FnMut(f64) -> Complex64,
    {
        let mut total = Complex64::new(0.0, 0.0);
        let mut error = 0.0;
        let mut panels = 0usize;
        let mut stack = vec![(a, b, tol, 0u32)];
        while let Some((lo, hi, t, depth)) = stack.pop() {
            let (fine, scale) = self.fine.apply(&mut f, lo, hi);
            let (coarse, _) = self.coarse.apply(&mut f, lo, hi);
            let diff = (fine - coarse).norm();
            let floor = 64.0 * f64::EPSILON * scale;
            panels += 1;
            let budget_left = panels + stack.len() < self.max_panels;
            if diff <= t.max(floor) || depth >= 60 || !budget_left {
                if !budget_left && diff > t.max(floor) {
                    return Err(Error::Accuracy {
                        reason: format!("adaptive quadrature exceeded {} panels", self.max_panels),
                        est_error: error + diff,
                    });
                }
                total += fine;
                error += diff + 4.0 * f64::EPSILON * scale;
            } else {
                let mid = 0.5 * (lo + hi);
                stack.push((mid, hi, 0.5 * t, depth + 1));
                stack.push((lo, mid, 0.5 * t, depth + 1));
            }
        }
        Ok(Integral {
            value: total,
            error,
            panels,
        })
    }
}
