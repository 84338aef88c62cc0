//! Chirality bookkeeping and shell geometry.
//!
//! Graphene lattice vectors follow the usual 60° convention
//! `a1 = √3 s (1, 0)`, `a2 = √3 s (1/2, √3/2)` with `s` the C–C bond length.
//! A chirality `(n, m)` with `0 <= m <= n` selects the chiral vector
//! `χ = n a1 + m a2` that wraps the circumference.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Result, ShellError};

/// Default C–C bond length [nm].
pub const DEFAULT_BOND_LENGTH: f64 = 0.142;
/// Default effective half-thickness ε [nm].
pub const DEFAULT_HALF_THICKNESS: f64 = 0.194;
/// Default slenderness ρo / l.
pub const DEFAULT_SLENDERNESS: f64 = 0.25;

/// Chirality indices `(n, m)` with `n >= 1` and `0 <= m <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChiralIndices {
    n: u32,
    m: u32,
}

impl ChiralIndices {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        if n == 0 || m > n {
            return Err(ShellError::InvalidChirality { n, m });
        }
        Ok(Self { n, m })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn is_zigzag(&self) -> bool {
        self.m == 0
    }

    pub fn is_armchair(&self) -> bool {
        self.m == self.n
    }

    pub fn is_achiral(&self) -> bool {
        self.is_zigzag() || self.is_armchair()
    }

    /// Chiral angle φ = arctan(√3 m / (2n + m)), in `[0, π/6]`.
    pub fn chiral_angle(&self) -> f64 {
        let (n, m) = (self.n as f64, self.m as f64);
        (3f64.sqrt() * m / (2.0 * n + m)).atan()
    }

    /// Angle ψ by which the zigzag stiffness is rotated to obtain the stiffness
    /// of this chirality: 0 for zigzag tubes, π/3 + φ otherwise.
    ///
    /// Armchair tubes return exactly `π/2` so that downstream rotations are the
    /// exact quarter turn.
    pub fn rotation_angle(&self) -> f64 {
        if self.is_zigzag() {
            0.0
        } else if self.is_armchair() {
            FRAC_PI_2
        } else {
            FRAC_PI_3 + self.chiral_angle()
        }
    }

    /// Integer components `(t1, t2)` of the axial (translation) vector
    /// `τ = t1 a1 + t2 a2`, orthogonal to the chiral vector.
    pub fn axial_vector(&self) -> (i64, i64) {
        let (n, m) = (self.n as i64, self.m as i64);
        let d = gcd(2 * n + m, n + 2 * m);
        ((n + 2 * m) / d, -(2 * n + m) / d)
    }

    /// Chiral vector in Cartesian components [nm].
    pub fn chiral_vector(&self, lattice: &LatticeGeometry) -> [f64; 2] {
        lattice.combine(self.n as i64, self.m as i64)
    }

    /// Radius of the cylinder through the atom centres after an ideal roll-up:
    /// `ρ0 = (√3 / 2π) n √(1 + m/n + (m/n)²) s`.
    pub fn nominal_radius(&self, lattice: &LatticeGeometry) -> f64 {
        let n = self.n as f64;
        let r = self.m as f64 / n;
        3f64.sqrt() / (2.0 * PI) * n * (1.0 + r + r * r).sqrt() * lattice.bond_length()
    }
}

impl std::fmt::Display for ChiralIndices {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.n, self.m)
    }
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// Graphene lattice described by its bond length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeGeometry {
    bond_length: f64,
}

impl Default for LatticeGeometry {
    fn default() -> Self {
        Self {
            bond_length: DEFAULT_BOND_LENGTH,
        }
    }
}

impl LatticeGeometry {
    pub fn new(bond_length: f64) -> Result<Self> {
        if !(bond_length > 0.0 && bond_length.is_finite()) {
            return Err(ShellError::InvalidGeometry(format!(
                "bond length must be positive, got {bond_length}"
            )));
        }
        Ok(Self { bond_length })
    }

    pub fn bond_length(&self) -> f64 {
        self.bond_length
    }

    /// Lattice vector length √3 s.
    pub fn lattice_constant(&self) -> f64 {
        3f64.sqrt() * self.bond_length
    }

    pub fn a1(&self) -> [f64; 2] {
        [self.lattice_constant(), 0.0]
    }

    pub fn a2(&self) -> [f64; 2] {
        let a = self.lattice_constant();
        [0.5 * a, 0.5 * 3f64.sqrt() * a]
    }

    /// Cartesian components of `i a1 + j a2`.
    pub fn combine(&self, i: i64, j: i64) -> [f64; 2] {
        let (a1, a2) = (self.a1(), self.a2());
        let (i, j) = (i as f64, j as f64);
        [i * a1[0] + j * a2[0], i * a1[1] + j * a2[1]]
    }
}

/// Effective shell geometry: mid-surface radius, half-thickness and half-length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShellGeometry {
    pub rho0: f64,
    pub eps: f64,
    pub l: f64,
}

impl ShellGeometry {
    pub fn new(rho0: f64, eps: f64, l: f64) -> Result<Self> {
        for (name, v) in [("rho0", rho0), ("eps", eps), ("l", l)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(ShellError::InvalidGeometry(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        if eps >= rho0 {
            return Err(ShellError::ThickShell { eps, rho0 });
        }
        Ok(Self { rho0, eps, l })
    }

    /// Effective geometry of the shell associated with a chirality: the radius
    /// is the nominal radius, the half-thickness is chirality independent.
    pub fn effective(
        chirality: ChiralIndices,
        lattice: &LatticeGeometry,
        eps: f64,
        l: f64,
    ) -> Result<Self> {
        Self::new(chirality.nominal_radius(lattice), eps, l)
    }

    /// Same as [`ShellGeometry::effective`] with the half-length fixed by the
    /// slenderness `ρo / l`.
    pub fn with_slenderness(
        chirality: ChiralIndices,
        lattice: &LatticeGeometry,
        eps: f64,
        slenderness: f64,
    ) -> Result<Self> {
        if !(slenderness > 0.0 && slenderness.is_finite()) {
            return Err(ShellError::InvalidGeometry(format!(
                "slenderness must be positive, got {slenderness}"
            )));
        }
        let rho0 = chirality.nominal_radius(lattice);
        Self::new(rho0, eps, rho0 / slenderness)
    }

    pub fn eps_ratio(&self) -> f64 {
        self.eps / self.rho0
    }

    /// Logarithmic thickness factor `Λ = (ρo / 2ε) log((1 + ε/ρo) / (1 − ε/ρo))`.
    pub fn log_factor(&self) -> f64 {
        log_factor(self.eps_ratio())
    }
}

/// `atanh(x) / x`, the thickness factor Λ as a function of `x = ε/ρo`.
pub fn log_factor(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        // series keeps full precision where atanh(x)/x loses the x² term
        let x2 = x * x;
        1.0 + x2 / 3.0 + x2 * x2 / 5.0
    } else {
        x.atanh() / x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_6;

    fn dot(u: [f64; 2], v: [f64; 2]) -> f64 {
        u[0] * v[0] + u[1] * v[1]
    }

    #[test]
    fn rejects_bad_indices() {
        assert!(ChiralIndices::new(0, 0).is_err());
        assert!(ChiralIndices::new(3, 4).is_err());
        assert!(ChiralIndices::new(3, 3).is_ok());
    }

    #[test]
    fn chiral_angle_limits() {
        let z = ChiralIndices::new(7, 0).unwrap();
        let a = ChiralIndices::new(7, 7).unwrap();
        assert_eq!(z.chiral_angle(), 0.0);
        assert!((a.chiral_angle() - FRAC_PI_6).abs() < 1e-15);
    }

    #[test]
    fn chiral_angle_matches_lattice_vectors() {
        let lat = LatticeGeometry::default();
        let c = ChiralIndices::new(2, 1).unwrap();
        let chi = c.chiral_vector(&lat);
        let a1 = lat.a1();
        let cos = dot(chi, a1) / (dot(chi, chi).sqrt() * dot(a1, a1).sqrt());
        let from_vectors = cos.acos();
        assert!((c.chiral_angle() - from_vectors).abs() < 1e-14);
        assert!((c.chiral_angle() - 0.333_473).abs() < 1e-6);
    }

    #[test]
    fn rotation_angle_branches() {
        assert_eq!(ChiralIndices::new(5, 0).unwrap().rotation_angle(), 0.0);
        assert_eq!(
            ChiralIndices::new(5, 5).unwrap().rotation_angle(),
            FRAC_PI_2
        );
        let psi = ChiralIndices::new(2, 1).unwrap().rotation_angle();
        assert!((psi - (3.0 * 3f64.sqrt()).atan()).abs() < 1e-15);
        assert!((psi - 1.380_671).abs() < 1e-6);
        // armchair branch of the arctan form: π/3 + π/6
        assert!((FRAC_PI_3 + FRAC_PI_6 - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn axial_vector_examples() {
        assert_eq!(ChiralIndices::new(2, 1).unwrap().axial_vector(), (4, -5));
        assert_eq!(ChiralIndices::new(9, 9).unwrap().axial_vector(), (1, -1));
        assert_eq!(ChiralIndices::new(8, 0).unwrap().axial_vector(), (1, -2));
    }

    #[test]
    fn nominal_radius_examples() {
        let lat = LatticeGeometry::default();
        let z = ChiralIndices::new(6, 0).unwrap();
        let expected = 3f64.sqrt() / (2.0 * PI) * 6.0 * 0.142;
        assert!((z.nominal_radius(&lat) - expected).abs() < 1e-15);
        let a = ChiralIndices::new(10, 10).unwrap();
        assert!((a.nominal_radius(&lat) - 30.0 * 0.142 / (2.0 * PI)).abs() < 1e-14);
        assert!((a.nominal_radius(&lat) - 0.6780).abs() < 1e-4);
        // ρ0 is |χ| / 2π
        let c = ChiralIndices::new(7, 3).unwrap();
        let chi = c.chiral_vector(&lat);
        let len = (chi[0] * chi[0] + chi[1] * chi[1]).sqrt();
        assert!((c.nominal_radius(&lat) - len / (2.0 * PI)).abs() < 1e-14);
    }

    #[test]
    fn effective_geometry_example() {
        let lat = LatticeGeometry::default();
        let c = ChiralIndices::new(6, 3).unwrap();
        let g = ShellGeometry::with_slenderness(c, &lat, 0.194, 0.25).unwrap();
        let rho = 3f64.sqrt() / (2.0 * PI) * 6.0 * 1.75f64.sqrt() * 0.142;
        assert!((g.rho0 - rho).abs() < 1e-15);
        assert!((g.rho0 - 0.3107).abs() < 1e-4);
        assert!((g.l - rho / 0.25).abs() < 1e-14);
        assert_eq!(g.eps, 0.194);
    }

    #[test]
    fn effective_geometry_rejects_thick_shell() {
        let lat = LatticeGeometry::default();
        let c = ChiralIndices::new(6, 0).unwrap();
        let rho = c.nominal_radius(&lat);
        assert!(matches!(
            ShellGeometry::effective(c, &lat, rho, 1.0),
            Err(ShellError::ThickShell { .. })
        ));
        assert!(ShellGeometry::new(1.0, 0.1, 0.0).is_err());
    }

    #[test]
    fn eps_is_chirality_independent() {
        let lat = LatticeGeometry::default();
        let z =
            ShellGeometry::with_slenderness(ChiralIndices::new(12, 0).unwrap(), &lat, 0.194, 0.25);
        let a =
            ShellGeometry::with_slenderness(ChiralIndices::new(12, 12).unwrap(), &lat, 0.194, 0.25);
        assert_eq!(z.unwrap().eps, a.unwrap().eps);
    }

    #[test]
    fn log_factor_thin_limit() {
        assert!((log_factor(1e-6) - 1.0).abs() < 1e-12);
        let x: f64 = 0.3;
        let direct = 0.5 / x * ((1.0 + x) / (1.0 - x)).ln();
        assert!((log_factor(x) - direct).abs() < 1e-15);
        // both branches agree at the switch
        let s = 1e-4 * 0.999_999;
        assert!((log_factor(s) - s.atanh() / s).abs() < 1e-15);
    }
}
