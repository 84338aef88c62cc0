//! Orthotropic shell stiffness and its rotation to arbitrary chirality.
//!
//! The zigzag shell carries the orthotropic tensor
//!
//! ```text
//! ℂ = Δ⁻¹ (E1 W1⊗W1 + E2 W2⊗W2 + η (W1⊗W2 + W2⊗W1)) + 2G W3⊗W3
//! ```
//!
//! with `W1 = e1⊗e1`, `W2 = e2⊗e2`, `W3 = (e1⊗e2 + e2⊗e1)/√2`. Components are
//! stored Cartesian, so the shear block reads `C1212 = C1221 = C2112 = C2121 = G`.
//! The stiffness of a `(n, m)` shell is the orthogonal conjugate
//! `C̃_ijhk = Q_li Q_mj Q_nh Q_pk C_lmnp` with `Q` the rotation by ψ(n, m)
//! about the normal `e3`.

use serde::{Deserialize, Serialize};

use crate::error::{Result, ShellError};
use crate::geometry::ChiralIndices;

/// Tolerated relative mismatch between `E1 ν21` and `E2 ν12`.
pub const RECIPROCITY_TOLERANCE: f64 = 0.02;

pub type Tensor2 = [[f64; 3]; 3];
type Tensor4 = [[[[f64; 3]; 3]; 3]; 3];

/// Engineering constants of the orthotropic zigzag shell [GPa].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ElasticModuli {
    e1: f64,
    e2: f64,
    g: f64,
    nu12: f64,
    nu21: f64,
}

impl Default for ElasticModuli {
    /// Reference moduli: E1 = 784, E2 = 832, G = 424 GPa, ν12 = 0.242, ν21 = 0.260.
    fn default() -> Self {
        Self {
            e1: 784.0,
            e2: 832.0,
            g: 424.0,
            nu12: 0.242,
            nu21: 0.260,
        }
    }
}

impl ElasticModuli {
    pub fn new(e1: f64, e2: f64, g: f64, nu12: f64, nu21: f64) -> Result<Self> {
        let m = Self {
            e1,
            e2,
            g,
            nu12,
            nu21,
        };
        m.validate()?;
        Ok(m)
    }

    /// Isotropic moduli with `G = E / (2 (1 + ν))`.
    pub fn isotropic(e: f64, nu: f64) -> Result<Self> {
        Self::new(e, e, e / (2.0 * (1.0 + nu)), nu, nu)
    }

    fn validate(&self) -> Result<()> {
        let fields = [
            ("E1", self.e1),
            ("E2", self.e2),
            ("G", self.g),
            ("nu12", self.nu12),
            ("nu21", self.nu21),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(ShellError::InvalidModuli(format!("{name} is not finite")));
            }
        }
        for (name, v) in &fields[..3] {
            if *v <= 0.0 {
                return Err(ShellError::InvalidModuli(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if self.delta() <= 0.0 {
            return Err(ShellError::InvalidModuli(format!(
                "1 - nu12 nu21 = {} must be positive",
                self.delta()
            )));
        }
        let mismatch = self.reciprocity_mismatch();
        if mismatch > RECIPROCITY_TOLERANCE {
            return Err(ShellError::InvalidModuli(format!(
                "E1 nu21 and E2 nu12 differ by {:.2}% (limit {:.0}%)",
                100.0 * mismatch,
                100.0 * RECIPROCITY_TOLERANCE
            )));
        }
        let eta = self.eta();
        if self.e1 * self.e2 - eta * eta <= 0.0 {
            return Err(ShellError::InvalidModuli(
                "in-plane stiffness block is not positive definite (E1 E2 <= eta^2)".into(),
            ));
        }
        Ok(())
    }

    pub fn e1(&self) -> f64 {
        self.e1
    }

    pub fn e2(&self) -> f64 {
        self.e2
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn nu12(&self) -> f64 {
        self.nu12
    }

    pub fn nu21(&self) -> f64 {
        self.nu21
    }

    /// Coupling modulus η, the symmetric mean of `E1 ν21` and `E2 ν12`
    /// (the two agree for exactly reciprocal constants).
    pub fn eta(&self) -> f64 {
        0.5 * (self.e1 * self.nu21 + self.e2 * self.nu12)
    }

    /// `Δ = 1 − ν12 ν21`.
    pub fn delta(&self) -> f64 {
        1.0 - self.nu12 * self.nu21
    }

    /// `|E1 ν21 − E2 ν12| / η`.
    pub fn reciprocity_mismatch(&self) -> f64 {
        let (a, b) = (self.e1 * self.nu21, self.e2 * self.nu12);
        if a == b {
            0.0
        } else {
            (a - b).abs() / self.eta().abs()
        }
    }
}

/// Rotation about the shell normal `e3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation {
    q: Tensor2,
}

impl Rotation {
    /// `Q(ψ) = cos ψ (e1⊗e1 + e2⊗e2) − sin ψ (e1⊗e2 − e2⊗e1) + e3⊗e3`.
    ///
    /// `ψ = π/2` yields the exact quarter turn `e2⊗e1 − e1⊗e2 + e3⊗e3`.
    pub fn about_normal(psi: f64) -> Self {
        let (s, c) = if psi == std::f64::consts::FRAC_PI_2 {
            (1.0, 0.0)
        } else {
            psi.sin_cos()
        };
        Self {
            q: [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]],
        }
    }

    pub fn matrix(&self) -> &Tensor2 {
        &self.q
    }

    pub fn transpose(&self) -> Self {
        let mut q = [[0.0; 3]; 3];
        for (i, row) in q.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.q[j][i];
            }
        }
        Self { q }
    }

    pub fn compose(&self, other: &Rotation) -> Self {
        Self {
            q: matmul(&self.q, &other.q),
        }
    }

    pub fn det(&self) -> f64 {
        let q = &self.q;
        q[0][0] * (q[1][1] * q[2][2] - q[1][2] * q[2][1])
            - q[0][1] * (q[1][0] * q[2][2] - q[1][2] * q[2][0])
            + q[0][2] * (q[1][0] * q[2][1] - q[1][1] * q[2][0])
    }

    pub fn apply(&self, v: [f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..3).map(|j| self.q[i][j] * v[j]).sum();
        }
        out
    }

    /// `Qᵀ A Q`, the components of `A` in the rotated frame `(Q e1, Q e2, e3)`.
    pub fn pull_back(&self, a: &Tensor2) -> Tensor2 {
        matmul(&self.transpose().q, &matmul(a, &self.q))
    }
}

pub fn matmul(a: &Tensor2, b: &Tensor2) -> Tensor2 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

/// Index pairs in Voigt order 11, 22, 33, 23, 13, 12 (zero based).
pub const VOIGT_PAIRS: [(usize, usize); 6] = [(0, 0), (1, 1), (2, 2), (1, 2), (0, 2), (0, 1)];

/// Fourth-order elasticity tensor with Cartesian components [GPa].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StiffnessTensor {
    c: Tensor4,
}

impl StiffnessTensor {
    pub fn zeros() -> Self {
        Self {
            c: [[[[0.0; 3]; 3]; 3]; 3],
        }
    }

    /// Orthotropic tensor of the zigzag shell.
    pub fn orthotropic(moduli: &ElasticModuli) -> Self {
        let d = moduli.delta();
        let mut t = Self::zeros();
        t.c[0][0][0][0] = moduli.e1() / d;
        t.c[1][1][1][1] = moduli.e2() / d;
        t.c[0][0][1][1] = moduli.eta() / d;
        t.c[1][1][0][0] = moduli.eta() / d;
        let g = moduli.g();
        t.c[0][1][0][1] = g;
        t.c[0][1][1][0] = g;
        t.c[1][0][0][1] = g;
        t.c[1][0][1][0] = g;
        t
    }

    /// Stiffness of the shell associated with a chirality.
    pub fn for_chirality(moduli: &ElasticModuli, chirality: ChiralIndices) -> Self {
        Self::orthotropic(moduli).conjugate(&Rotation::about_normal(chirality.rotation_angle()))
    }

    /// Component `C_ijhk` (zero-based indices).
    pub fn get(&self, i: usize, j: usize, h: usize, k: usize) -> f64 {
        self.c[i][j][h][k]
    }

    /// Orthogonal conjugate `C̃_ijhk = Q_li Q_mj Q_nh Q_pk C_lmnp`.
    pub fn conjugate(&self, rotation: &Rotation) -> Self {
        let q = rotation.matrix();
        let mut a = self.c;
        let mut b = [[[[0.0; 3]; 3]; 3]; 3];
        // one index at a time: 4 · 3⁵ multiplies instead of 3⁸
        for i in 0..3 {
            for m in 0..3 {
                for n in 0..3 {
                    for p in 0..3 {
                        b[i][m][n][p] = (0..3).map(|l| q[l][i] * a[l][m][n][p]).sum();
                    }
                }
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                for n in 0..3 {
                    for p in 0..3 {
                        a[i][j][n][p] = (0..3).map(|m| q[m][j] * b[i][m][n][p]).sum();
                    }
                }
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                for h in 0..3 {
                    for p in 0..3 {
                        b[i][j][h][p] = (0..3).map(|n| q[n][h] * a[i][j][n][p]).sum();
                    }
                }
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                for h in 0..3 {
                    for k in 0..3 {
                        a[i][j][h][k] = (0..3).map(|p| q[p][k] * b[i][j][h][p]).sum();
                    }
                }
            }
        }
        Self { c: a }
    }

    /// `C[E]`, i.e. `S_ij = C_ijhk E_hk`.
    pub fn apply(&self, e: &Tensor2) -> Tensor2 {
        let mut s = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = 0.0;
                for h in 0..3 {
                    for k in 0..3 {
                        acc += self.c[i][j][h][k] * e[h][k];
                    }
                }
                s[i][j] = acc;
            }
        }
        s
    }

    /// Strain energy per unit volume `½ E · C[E]`.
    pub fn energy_density(&self, e: &Tensor2) -> f64 {
        let s = self.apply(e);
        let mut acc = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                acc += s[i][j] * e[i][j];
            }
        }
        0.5 * acc
    }

    /// Largest violation of the minor and major symmetries.
    pub fn symmetry_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                for h in 0..3 {
                    for k in 0..3 {
                        let v = self.c[i][j][h][k];
                        worst = worst
                            .max((v - self.c[j][i][h][k]).abs())
                            .max((v - self.c[i][j][k][h]).abs())
                            .max((v - self.c[h][k][i][j]).abs());
                    }
                }
            }
        }
        worst
    }

    /// Symmetric 6×6 (Mandel) representation; its eigenvalues are the
    /// eigen-stiffnesses and are invariant under conjugation.
    pub fn mandel_matrix(&self) -> [[f64; 6]; 6] {
        let w = |a: usize| if a < 3 { 1.0 } else { std::f64::consts::SQRT_2 };
        let mut out = [[0.0; 6]; 6];
        for (a, &(i, j)) in VOIGT_PAIRS.iter().enumerate() {
            for (b, &(h, k)) in VOIGT_PAIRS.iter().enumerate() {
                out[a][b] = w(a) * w(b) * self.c[i][j][h][k];
            }
        }
        out
    }

    /// The 21 independent components, keyed `c{ijhk}` with one-based indices,
    /// upper triangle of the Voigt matrix in the order 11, 22, 33, 23, 13, 12.
    pub fn independent_components(&self) -> Vec<(String, f64)> {
        let mut out = Vec::with_capacity(21);
        for (a, &(i, j)) in VOIGT_PAIRS.iter().enumerate() {
            for &(h, k) in &VOIGT_PAIRS[a..] {
                out.push((
                    format!("c{}{}{}{}", i + 1, j + 1, h + 1, k + 1),
                    self.c[i][j][h][k],
                ));
            }
        }
        out
    }

    pub fn max_abs_difference(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                for h in 0..3 {
                    for k in 0..3 {
                        worst = worst.max((self.c[i][j][h][k] - other.c[i][j][h][k]).abs());
                    }
                }
            }
        }
        worst
    }

    pub fn max_abs_component(&self) -> f64 {
        self.c
            .iter()
            .flatten()
            .flatten()
            .flatten()
            .fold(0.0_f64, |acc, v| acc.max(v.abs()))
    }
}

/// In-plane (Kirchhoff–Love) strain: `E e3 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct MembraneStrain {
    pub e11: f64,
    pub e22: f64,
    pub e12: f64,
}

impl MembraneStrain {
    pub fn to_tensor(&self) -> Tensor2 {
        [
            [self.e11, self.e12, 0.0],
            [self.e12, self.e22, 0.0],
            [0.0, 0.0, 0.0],
        ]
    }
}

/// Strain energy density `½ E · C[E]` of a membrane strain [GPa].
pub fn strain_energy_density(c: &StiffnessTensor, strain: &MembraneStrain) -> f64 {
    c.energy_density(&strain.to_tensor())
}

/// Coefficients of the axisymmetric stress law
/// `S_ij = a_ij E11 + b_ij E22 + c_ij E12` [GPa].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneCoefficients {
    pub a11: f64,
    pub a22: f64,
    pub a12: f64,
    pub b11: f64,
    pub b22: f64,
    pub b12: f64,
    pub c11: f64,
    pub c22: f64,
    pub c12: f64,
}

impl PlaneCoefficients {
    /// `a_ij = C̃_ij11`, `b_ij = C̃_ij22`, `c_ij = 2 C̃_ij12`.
    pub fn from_tensor(c: &StiffnessTensor) -> Self {
        Self {
            a11: c.get(0, 0, 0, 0),
            a22: c.get(1, 1, 0, 0),
            a12: c.get(0, 1, 0, 0),
            b11: c.get(0, 0, 1, 1),
            b22: c.get(1, 1, 1, 1),
            b12: c.get(0, 1, 1, 1),
            c11: 2.0 * c.get(0, 0, 0, 1),
            c22: 2.0 * c.get(1, 1, 0, 1),
            c12: 2.0 * c.get(0, 1, 0, 1),
        }
    }

    pub fn for_chirality(moduli: &ElasticModuli, chirality: ChiralIndices) -> Self {
        Self::from_tensor(&StiffnessTensor::for_chirality(moduli, chirality))
    }

    /// `(S11, S22, S12)` for the membrane strain `(E11, E22, E12)`.
    pub fn stress(&self, e: &MembraneStrain) -> (f64, f64, f64) {
        (
            self.a11 * e.e11 + self.b11 * e.e22 + self.c11 * e.e12,
            self.a22 * e.e11 + self.b22 * e.e22 + self.c22 * e.e12,
            self.a12 * e.e11 + self.b12 * e.e22 + self.c12 * e.e12,
        )
    }

    /// Named values in the order a11, a22, a12, b11, b22, b12, c11, c22, c12.
    pub fn named(&self) -> [(&'static str, f64); 9] {
        [
            ("a11", self.a11),
            ("a22", self.a22),
            ("a12", self.a12),
            ("b11", self.b11),
            ("b22", self.b22),
            ("b12", self.b12),
            ("c11", self.c11),
            ("c22", self.c22),
            ("c12", self.c12),
        ]
    }
}
