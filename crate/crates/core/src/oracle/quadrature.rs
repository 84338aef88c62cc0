//! Through-thickness Gauss–Legendre quadrature of the stress resultants.

use crate::elasticity::StiffnessTensor;
use crate::geometry::ShellGeometry;
use crate::resultants::{strain_components, FieldJet, ResultantState};

/// Default number of Gauss points across the thickness.
pub const DEFAULT_POINTS: usize = 64;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[−1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Resultants from quadrature, and the same integrals of the absolute
/// integrands (a magnitude scale for relative comparisons).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSample {
    pub resultants: ResultantState,
    pub magnitude: ResultantState,
}

/// `F_i1 = ∫ α S_i1`, `F_i2 = ∫ S_i2`, `M_i1 = ∫ α ζ S_i1`, `M_i2 = ∫ ζ S_i2`
/// over `ζ ∈ [−ε, ε]`, with `α = 1 + ζ/ρo` and `S = C̃[E(ζ)]`.
pub fn quadrature_resultants(
    jet: &FieldJet,
    stiffness: &StiffnessTensor,
    geometry: &ShellGeometry,
    points: usize,
) -> QuadratureSample {
    let (nodes, weights) = gauss_legendre(points);
    let eps = geometry.eps;
    let mut acc = [0.0; 8];
    let mut mag = [0.0; 8];
    for (&xi, &wt) in nodes.iter().zip(&weights) {
        let zeta = eps * xi;
        let alpha = 1.0 + zeta / geometry.rho0;
        let s = stiffness.apply(&strain_components(jet, geometry, zeta).to_tensor());
        let integrands = [
            alpha * s[0][0],
            s[1][1],
            s[0][1],
            alpha * s[1][0],
            alpha * zeta * s[0][0],
            zeta * s[0][1],
            alpha * zeta * s[1][0],
            zeta * s[1][1],
        ];
        for k in 0..8 {
            acc[k] += eps * wt * integrands[k];
            mag[k] += eps * wt * integrands[k].abs();
        }
    }
    QuadratureSample {
        resultants: ResultantState::from_array(acc),
        magnitude: ResultantState::from_array(mag),
    }
}

/// Torque carried by a cross-section, `2π ∫ (ρo + ζ)² S21 dζ` [nN·nm].
pub fn quadrature_torque(
    jet: &FieldJet,
    stiffness: &StiffnessTensor,
    geometry: &ShellGeometry,
    points: usize,
) -> f64 {
    let (nodes, weights) = gauss_legendre(points);
    let eps = geometry.eps;
    nodes
        .iter()
        .zip(&weights)
        .map(|(&xi, &wt)| {
            let zeta = eps * xi;
            let s = stiffness.apply(&strain_components(jet, geometry, zeta).to_tensor());
            eps * wt * (geometry.rho0 + zeta).powi(2) * s[1][0]
        })
        .sum::<f64>()
        * 2.0
        * std::f64::consts::PI
}
