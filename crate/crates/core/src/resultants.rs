//! Axisymmetric Kirchhoff–Love kinematics and through-thickness resultants.
//!
//! The displacement of an axisymmetric shell is `u = (a1 − ζ w′) c1 + a2 c2 + w c3`
//! with `a1, a2, w` functions of the axial coordinate `x1` only. Membrane and
//! bending resultants depend on the field through `a1′, a2′, w, w″` alone, so
//! they are computed from a [`KinematicState`] and inherit its linearity.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::elasticity::{MembraneStrain, PlaneCoefficients};
use crate::error::{Result, ShellError};
use crate::geometry::{log_factor, ShellGeometry};

/// Values and derivatives of `(a1, a2, w)` at one axial station.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FieldJet {
    pub a1: f64,
    pub a1_d1: f64,
    pub a1_d2: f64,
    pub a2: f64,
    pub a2_d1: f64,
    pub a2_d2: f64,
    pub w: f64,
    pub w_d1: f64,
    pub w_d2: f64,
    pub w_d3: f64,
    pub w_d4: f64,
}

impl FieldJet {
    /// The inputs the resultants depend on.
    pub fn kinematics(&self) -> KinematicState {
        KinematicState {
            a1_d1: self.a1_d1,
            a2_d1: self.a2_d1,
            w: self.w,
            w_d2: self.w_d2,
        }
    }
}

/// Axisymmetric displacement field `(a1, a2, w)` on `[−l, l]`.
pub trait AxisymmetricField {
    fn jet(&self, x1: f64) -> FieldJet;
}

impl<F: AxisymmetricField + ?Sized> AxisymmetricField for &F {
    fn jet(&self, x1: f64) -> FieldJet {
        (**self).jet(x1)
    }
}

/// Field with polynomial components; coefficients are in increasing powers of `x1`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PolynomialField {
    pub a1: Vec<f64>,
    pub a2: Vec<f64>,
    pub w: Vec<f64>,
}

fn poly_derivatives<const K: usize>(c: &[f64], x: f64) -> [f64; K] {
    let mut out = [0.0; K];
    for (d, o) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for (p, &cp) in c.iter().enumerate().skip(d).rev() {
            let falling: f64 = ((p - d + 1)..=p).map(|v| v as f64).product();
            acc = acc * x + cp * falling;
        }
        *o = acc;
    }
    out
}

impl AxisymmetricField for PolynomialField {
    fn jet(&self, x1: f64) -> FieldJet {
        let a1: [f64; 3] = poly_derivatives(&self.a1, x1);
        let a2: [f64; 3] = poly_derivatives(&self.a2, x1);
        let w: [f64; 5] = poly_derivatives(&self.w, x1);
        FieldJet {
            a1: a1[0],
            a1_d1: a1[1],
            a1_d2: a1[2],
            a2: a2[0],
            a2_d1: a2[1],
            a2_d2: a2[2],
            w: w[0],
            w_d1: w[1],
            w_d2: w[2],
            w_d3: w[3],
            w_d4: w[4],
        }
    }
}

/// The four quantities `(a1′, a2′, w, w″)` entering the resultants.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct KinematicState {
    pub a1_d1: f64,
    pub a2_d1: f64,
    pub w: f64,
    pub w_d2: f64,
}

/// Strain at depth `ζ`: `E11 = a1′ − ζ w″`, `E22 = w / (ρo + ζ)`,
/// `E12 = ½ (1 + ζ/ρo) a2′`.
pub fn strain_components(jet: &FieldJet, geometry: &ShellGeometry, zeta: f64) -> MembraneStrain {
    let alpha = 1.0 + zeta / geometry.rho0;
    MembraneStrain {
        e11: jet.a1_d1 - zeta * jet.w_d2,
        e22: jet.w / (geometry.rho0 * alpha),
        e12: 0.5 * alpha * jet.a2_d1,
    }
}

/// Force resultants `F_αβ` [nN/nm] and moment resultants `M_αβ` [nN].
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ResultantState {
    pub f11: f64,
    pub f22: f64,
    pub f12: f64,
    pub f21: f64,
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
}

impl ResultantState {
    pub const NAMES: [&'static str; 8] = ["F11", "F22", "F12", "F21", "M11", "M12", "M21", "M22"];

    pub fn to_array(&self) -> [f64; 8] {
        [
            self.f11, self.f22, self.f12, self.f21, self.m11, self.m12, self.m21, self.m22,
        ]
    }

    pub fn from_array(v: [f64; 8]) -> Self {
        Self {
            f11: v[0],
            f22: v[1],
            f12: v[2],
            f21: v[3],
            m11: v[4],
            m12: v[5],
            m21: v[6],
            m22: v[7],
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.to_array().iter().fold(0.0_f64, |a, v| a.max(v.abs()))
    }

    fn zip(self, rhs: Self, f: impl Fn(f64, f64) -> f64) -> Self {
        let (a, b) = (self.to_array(), rhs.to_array());
        Self::from_array(std::array::from_fn(|i| f(a[i], b[i])))
    }
}

impl Add for ResultantState {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for ResultantState {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Mul<f64> for ResultantState {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        Self::from_array(self.to_array().map(|v| v * k))
    }
}

impl Neg for ResultantState {
    type Output = Self;
    fn neg(self) -> Self {
        self * -1.0
    }
}

/// Shell cross-section: stress-law coefficients plus geometry, with the
/// logarithmic thickness factor `Λ = atanh(ε/ρo) / (ε/ρo)` cached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellSection {
    plane: PlaneCoefficients,
    geometry: ShellGeometry,
    lambda: f64,
}

impl ShellSection {
    pub fn new(plane: PlaneCoefficients, geometry: ShellGeometry) -> Result<Self> {
        if !(geometry.eps < geometry.rho0) {
            return Err(ShellError::ThickShell {
                eps: geometry.eps,
                rho0: geometry.rho0,
            });
        }
        Ok(Self {
            plane,
            geometry,
            lambda: log_factor(geometry.eps / geometry.rho0),
        })
    }

    pub fn plane(&self) -> &PlaneCoefficients {
        &self.plane
    }

    pub fn geometry(&self) -> &ShellGeometry {
        &self.geometry
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Closed-form resultants. `F22` and `F12` carry `ε c_i2 a2′`, the value of
    /// `∫ S_i2 dζ` with `E12 = ½ α a2′`.
    pub fn resultants(&self, k: &KinematicState) -> ResultantState {
        let PlaneCoefficients {
            a11,
            a22,
            a12,
            b11,
            b22,
            b12,
            c11,
            c22,
            c12,
        } = self.plane;
        let (e, r, lam) = (self.geometry.eps, self.geometry.rho0, self.lambda);
        let e3 = e * e * e;
        let p = 1.0 + e * e / (3.0 * r * r);
        let KinematicState {
            a1_d1: a1p,
            a2_d1: a2p,
            w,
            w_d2: w2,
        } = *k;
        ResultantState {
            f11: -2.0 / 3.0 * e3 / r * a11 * w2
                + 2.0 * e / r * b11 * w
                + 2.0 * e * a11 * a1p
                + e * p * c11 * a2p,
            f22: 2.0 * e * a22 * a1p + 2.0 * e / r * lam * b22 * w + e * c22 * a2p,
            f12: 2.0 * e * a12 * a1p + 2.0 * e / r * lam * b12 * w + e * c12 * a2p,
            f21: 2.0 * e * a12 * (a1p - e * e / (3.0 * r) * w2)
                + 2.0 * e / r * b12 * w
                + e * p * c12 * a2p,
            m11: -2.0 / 3.0 * e3 / r * (a11 * (r * w2 - a1p) - c11 * a2p),
            m12: -2.0 / 3.0 * e3 * a12 * w2
                + 2.0 * e * (1.0 - lam) * b12 * w
                + e3 / (3.0 * r) * c12 * a2p,
            m21: -2.0 / 3.0 * e3 / r * (a12 * (r * w2 - a1p) - c12 * a2p),
            m22: -2.0 / 3.0 * e3 * a22 * w2
                + 2.0 * e * (1.0 - lam) * b22 * w
                + e3 / (3.0 * r) * c22 * a2p,
        }
    }

    pub fn resultants_at(&self, field: &impl AxisymmetricField, x1: f64) -> ResultantState {
        self.resultants(&field.jet(x1).kinematics())
    }

    /// `F21 + M21/ρo`, the resultant balancing the end torque density.
    pub fn torque_resultant(&self, r: &ResultantState) -> f64 {
        r.f21 + r.m21 / self.geometry.rho0
    }
}

/// Distributed loads `(qo1, qo2, qo3)` and couples `(ro1, ro2)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Loads {
    pub qo1: f64,
    pub qo2: f64,
    pub qo3: f64,
    pub ro1: f64,
    pub ro2: f64,
}

/// Relative step of the finite differences used for residuals.
pub const RESIDUAL_STEP: f64 = 1e-4;

fn d1_5pt(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}

fn d2_5pt(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (-f(x - 2.0 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2.0 * h))
        / (12.0 * h * h)
}

/// Left-hand sides of the axisymmetric field equations at `x1`:
/// `F11′ + qo1`, `(F21 + M21/ρo)′ + qo2 + ro2/ρo`, `M11″ − F22/ρo + qo3`.
pub fn equilibrium_residual(
    section: &ShellSection,
    field: &impl AxisymmetricField,
    loads: &Loads,
    x1: f64,
) -> [f64; 3] {
    let h = RESIDUAL_STEP * section.geometry.l;
    let rho = section.geometry.rho0;
    let at = |x: f64| section.resultants_at(field, x);
    let r0 = at(x1);
    [
        d1_5pt(|x| at(x).f11, x1, h) + loads.qo1,
        d1_5pt(|x| section.torque_resultant(&at(x)), x1, h) + loads.qo2 + loads.ro2 / rho,
        d2_5pt(|x| at(x).m11, x1, h) - r0.f22 / rho + loads.qo3,
    ]
}

/// Boundary residual at the end `x1 = l`:
/// `(F11, M11, M11′, F21 + M21/ρo − t)`.
pub fn boundary_residual(
    section: &ShellSection,
    field: &impl AxisymmetricField,
    t: f64,
    l: f64,
) -> [f64; 4] {
    let h = RESIDUAL_STEP * section.geometry.l;
    let r = section.resultants_at(field, l);
    [
        r.f11,
        r.m11,
        d1_5pt(|x| section.resultants_at(field, x).m11, l, h),
        section.torque_resultant(&r) - t,
    ]
}
