//! Closed-form solution of the end-torque problem.
//!
//! The ends `x1 = ±l` carry a line torque density `t`, equivalent to the
//! torque `T = 2πρo² t`. Imposing `F11 = 0` and `F21 + M21/ρo = t` everywhere
//! expresses the slopes as
//!
//! ```text
//! a1′ = A1 w″ + B1 w + C1 t,    a2′ = A2 w″ + B2 w + C2 t,
//! ```
//!
//! and the remaining field equation `M11″ − F22/ρo = 0` becomes
//! `c1 w″″ + c2 w″ + c3 w + c4 t = 0`. All coefficients are obtained by
//! evaluating the closed-form resultants on unit inputs, so they follow the
//! resultant expressions without separate transcription.
//!
//! The even solution is `w = Σ K_i cosh(α_i x1)/cosh(α_i l) + w_p` with
//! `α_i² ` the roots of `c1 z² + c2 z + c3 = 0` and `w_p = −c4 t / c3`; the
//! amplitudes follow from `M11(l) = M11′(l) = 0`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::elasticity::{ElasticModuli, PlaneCoefficients};
use crate::error::{Result, ShellError};
use crate::geometry::{
    ChiralIndices, LatticeGeometry, ShellGeometry, DEFAULT_HALF_THICKNESS, DEFAULT_SLENDERNESS,
};
use crate::resultants::{
    boundary_residual, equilibrium_residual, AxisymmetricField, FieldJet, KinematicState, Loads,
    ShellSection,
};

/// Reference line torque density [nN/nm].
pub const DEFAULT_LOAD: f64 = 0.1;

/// Largest admissible imaginary part of an assembled field, relative to the
/// magnitude of its terms.
pub const IMAGINARY_TOLERANCE: f64 = 1e-10;

/// Condition estimate above which the amplitude system is rejected.
pub const CONDITION_LIMIT: f64 = 1e13;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorsionProblem {
    pub chirality: ChiralIndices,
    pub moduli: ElasticModuli,
    pub geometry: ShellGeometry,
    /// Line torque density at the ends [nN/nm].
    pub t: f64,
}

impl TorsionProblem {
    pub fn new(
        chirality: ChiralIndices,
        moduli: ElasticModuli,
        geometry: ShellGeometry,
        t: f64,
    ) -> Result<Self> {
        if !t.is_finite() {
            return Err(ShellError::InvalidGeometry(format!(
                "load t = {t} is not finite"
            )));
        }
        ShellGeometry::new(geometry.rho0, geometry.eps, geometry.l)?;
        Ok(Self {
            chirality,
            moduli,
            geometry,
            t,
        })
    }

    /// Reference moduli, bond length, half-thickness, slenderness and load.
    pub fn reference(chirality: ChiralIndices) -> Result<Self> {
        SweepTemplate::default().problem(chirality)
    }

    pub fn with_load(&self, t: f64) -> Self {
        Self { t, ..*self }
    }

    /// End torque `T = 2πρo² t` [nN·nm].
    pub fn torque(&self) -> f64 {
        2.0 * PI * self.geometry.rho0.powi(2) * self.t
    }

    pub fn plane(&self) -> PlaneCoefficients {
        PlaneCoefficients::for_chirality(&self.moduli, self.chirality)
    }

    pub fn section(&self) -> Result<ShellSection> {
        ShellSection::new(self.plane(), self.geometry)
    }

    /// The linear theory presumes `t = O(ε)`; returns a warning when `|t|`
    /// exceeds ten times the half-thickness (in the working units).
    pub fn load_advisory(&self) -> Option<String> {
        (self.t.abs() > 10.0 * self.geometry.eps).then(|| {
            format!(
                "load t = {} nN/nm is large compared with eps = {} nm; linear theory presumes t = O(eps)",
                self.t, self.geometry.eps
            )
        })
    }
}

/// Coefficients of `c1 w″″ + c2 w″ + c3 w + c4 t = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OdeCoefficients {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
}

/// Slope relations `aα′ = Aα w″ + Bα w + Cα t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct BcCoefficients {
    pub A1: f64,
    pub B1: f64,
    pub C1: f64,
    pub A2: f64,
    pub B2: f64,
    pub C2: f64,
}

impl BcCoefficients {
    /// `(a1′, a2′)` for given `w″`, `w`, `t`.
    pub fn slopes(&self, w_d2: f64, w: f64, t: f64) -> (f64, f64) {
        (
            self.A1 * w_d2 + self.B1 * w + self.C1 * t,
            self.A2 * w_d2 + self.B2 * w + self.C2 * t,
        )
    }
}

/// End condition `a11(ρo w″ − a1′) − c11 a2′ = 0` with the slopes eliminated,
/// i.e. `p w″ − r w = s t`; its derivative reads `p w‴ − r w′ = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EndCondition {
    pub p: f64,
    pub r: f64,
    pub s: f64,
}

impl EndCondition {
    pub fn new(plane: &PlaneCoefficients, geometry: &ShellGeometry, bc: &BcCoefficients) -> Self {
        let (a11, c11) = (plane.a11, plane.c11);
        Self {
            p: a11 * (geometry.rho0 - bc.A1) - c11 * bc.A2,
            r: a11 * bc.B1 + c11 * bc.B2,
            s: a11 * bc.C1 + c11 * bc.C2,
        }
    }
}

fn unit(a1_d1: f64, a2_d1: f64, w: f64, w_d2: f64) -> KinematicState {
    KinematicState {
        a1_d1,
        a2_d1,
        w,
        w_d2,
    }
}

/// Eliminates the slopes and reads off the ODE coefficients for a section.
pub fn eliminate(section: &ShellSection) -> Result<(OdeCoefficients, BcCoefficients)> {
    let rho = section.geometry().rho0;
    let plane = section.plane();
    let scale = plane
        .named()
        .iter()
        .fold(0.0_f64, |acc, (_, v)| acc.max(v.abs()));
    if plane.c12.abs() <= 1e-14 * scale {
        return Err(ShellError::ZeroCoefficient { name: "c12" });
    }

    let f11 = |k: KinematicState| section.resultants(&k).f11;
    let torque = |k: KinematicState| section.torque_resultant(&section.resultants(&k));

    let (f_a1, f_a2, f_w, f_w2) = (
        f11(unit(1.0, 0.0, 0.0, 0.0)),
        f11(unit(0.0, 1.0, 0.0, 0.0)),
        f11(unit(0.0, 0.0, 1.0, 0.0)),
        f11(unit(0.0, 0.0, 0.0, 1.0)),
    );
    let (q_a1, q_a2, q_w, q_w2) = (
        torque(unit(1.0, 0.0, 0.0, 0.0)),
        torque(unit(0.0, 1.0, 0.0, 0.0)),
        torque(unit(0.0, 0.0, 1.0, 0.0)),
        torque(unit(0.0, 0.0, 0.0, 1.0)),
    );

    // a2′ = (t − q_w2 w″ − q_w w − q_a1 a1′) / q_a2, then F11 = 0 fixes a1′
    let ratio = f_a2 / q_a2;
    let pivot = f_a1 - ratio * q_a1;
    if pivot.abs() <= 1e-12 * f_a1.abs() {
        return Err(ShellError::DegeneratePivot {
            pivot: pivot / (2.0 * section.geometry().eps),
        });
    }
    let a1 = (ratio * q_w2 - f_w2) / pivot;
    let b1 = (ratio * q_w - f_w) / pivot;
    let c1 = -ratio / pivot;
    let bc = BcCoefficients {
        A1: a1,
        B1: b1,
        C1: c1,
        A2: -(q_w2 + q_a1 * a1) / q_a2,
        B2: -(q_w + q_a1 * b1) / q_a2,
        C2: (1.0 - q_a1 * c1) / q_a2,
    };

    // M11″ − F22/ρo on the basis (w″″, w″, w, t)
    let field_eq = |d4: f64, d2: f64, d0: f64, t: f64| {
        let (s1, s2) = bc.slopes(d2, d0, t);
        let shifted = unit(bc.A1 * d4 + bc.B1 * d2, bc.A2 * d4 + bc.B2 * d2, d2, d4);
        section.resultants(&shifted).m11 - section.resultants(&unit(s1, s2, d0, d2)).f22 / rho
    };
    let ode = OdeCoefficients {
        c1: field_eq(1.0, 0.0, 0.0, 0.0),
        c2: field_eq(0.0, 1.0, 0.0, 0.0),
        c3: field_eq(0.0, 0.0, 1.0, 0.0),
        c4: field_eq(0.0, 0.0, 0.0, 1.0),
    };
    Ok((ode, bc))
}

pub fn derive_coefficients(problem: &TorsionProblem) -> Result<(OdeCoefficients, BcCoefficients)> {
    eliminate(&problem.section()?)
}

/// Roots `α1², α2²` of `c1 z² + c2 z + c3 = 0` and their principal square roots.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacteristicRoots {
    pub z: [Complex64; 2],
    pub alpha: [Complex64; 2],
    pub discriminant: f64,
}

impl CharacteristicRoots {
    pub fn is_complex(&self) -> bool {
        self.discriminant < 0.0
    }
}

pub fn characteristic_roots(ode: &OdeCoefficients) -> Result<CharacteristicRoots> {
    let OdeCoefficients { c1, c2, c3, .. } = *ode;
    if c1 == 0.0 || !c1.is_finite() {
        return Err(ShellError::ZeroCoefficient { name: "c1" });
    }
    if c3 == 0.0 {
        return Err(ShellError::ZeroCoefficient { name: "c3" });
    }
    let disc = c2 * c2 - 4.0 * c1 * c3;
    let sq = Complex64::new(disc, 0.0).sqrt();
    // cancellation-free form: z1 = q / c1, z2 = c3 / q
    let q = if c2 >= 0.0 {
        -0.5 * (c2 + sq)
    } else {
        -0.5 * (c2 - sq)
    };
    let z = [q / c1, Complex64::new(c3, 0.0) / q];
    Ok(CharacteristicRoots {
        z,
        alpha: [z[0].sqrt(), z[1].sqrt()],
        discriminant: disc,
    })
}

/// `cosh(αx)/cosh(αl)` and `sinh(αx)/cosh(αl)` without overflow.
fn hyperbolic_ratios(alpha: Complex64, x: f64, l: f64) -> (Complex64, Complex64) {
    let ax = x.abs();
    let one = Complex64::new(1.0, 0.0);
    let lead = (alpha * (ax - l)).exp() / (one + (-2.0 * alpha * l).exp());
    let tail = (-2.0 * alpha * ax).exp();
    let sign = if x < 0.0 { -1.0 } else { 1.0 };
    (lead * (one + tail), lead * (one - tail) * sign)
}

fn tanh_stable(z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let e = (-2.0 * z).exp();
    (one - e) / (one + e)
}

/// Torsion descriptors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorsionDescriptors {
    /// Twist per unit length `aT = t C2 / ρo` [rad/nm].
    pub torsion_angle: f64,
    /// `sT = T / aT = 2πρo³ / C2` [nN·nm²].
    pub torsion_stiffness: f64,
    /// `t C1` [–].
    pub axial_strain: f64,
    /// `B1 w_p + C1 t`, the slope of `a1` away from the end layers [–].
    pub far_field_axial_strain: f64,
    /// `T = 2πρo² t` [nN·nm].
    pub torque: f64,
}

/// Scaled residual maxima of a solved problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    /// Largest field-equation residual over the grid, scaled by `|t|/l`.
    pub equilibrium: f64,
    /// `(F11, M11, M11′, F21 + M21/ρo − t)` at `x1 = l`, scaled by `|t|`,
    /// `|t| l`, `|t|`, `|t|`.
    pub boundary: [f64; 4],
}

impl ResidualReport {
    pub fn max(&self) -> f64 {
        self.boundary
            .iter()
            .fold(self.equilibrium, |acc, v| acc.max(v.abs()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TorsionSolution {
    pub problem: TorsionProblem,
    section: ShellSection,
    pub ode: OdeCoefficients,
    pub bc: BcCoefficients,
    pub end: EndCondition,
    pub roots: CharacteristicRoots,
    /// Amplitudes of `cosh(α_i x1)/cosh(α_i l)`.
    pub amplitudes: [Complex64; 2],
    /// Particular solution `w_p = −c4 t / c3` [nm].
    pub wp: f64,
    /// Condition estimate of the amplitude system.
    pub condition: f64,
    pub descriptors: TorsionDescriptors,
}

pub fn solve(problem: &TorsionProblem) -> Result<TorsionSolution> {
    let section = problem.section()?;
    let (ode, bc) = eliminate(&section)?;
    let roots = characteristic_roots(&ode)?;
    let end = EndCondition::new(section.plane(), &problem.geometry, &bc);
    let (t, l, rho) = (problem.t, problem.geometry.l, problem.geometry.rho0);
    let wp = -ode.c4 * t / ode.c3;

    let [al1, al2] = roots.alpha;
    let row = |a: Complex64| end.p * a * a - end.r;
    let m = [
        [row(al1), row(al2)],
        [
            al1 * tanh_stable(al1 * l) * row(al1),
            al2 * tanh_stable(al2 * l) * row(al2),
        ],
    ];
    let rhs = [
        Complex64::new(end.r * wp + end.s * t, 0.0),
        Complex64::new(0.0, 0.0),
    ];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let norm = |a: [[Complex64; 2]; 2]| {
        (a[0][0].norm() + a[0][1].norm()).max(a[1][0].norm() + a[1][1].norm())
    };
    let inv = [
        [m[1][1] / det, -m[0][1] / det],
        [-m[1][0] / det, m[0][0] / det],
    ];
    let condition = if det.norm() == 0.0 {
        f64::INFINITY
    } else {
        norm(m) * norm(inv)
    };
    if !(condition < CONDITION_LIMIT) {
        return Err(ShellError::SingularSystem { condition });
    }
    let amplitudes = [
        inv[0][0] * rhs[0] + inv[0][1] * rhs[1],
        inv[1][0] * rhs[0] + inv[1][1] * rhs[1],
    ];

    let descriptors = TorsionDescriptors {
        torsion_angle: t * bc.C2 / rho,
        torsion_stiffness: 2.0 * PI * rho.powi(3) / bc.C2,
        axial_strain: t * bc.C1,
        far_field_axial_strain: bc.B1 * wp + bc.C1 * t,
        torque: problem.torque(),
    };
    let sol = TorsionSolution {
        problem: *problem,
        section,
        ode,
        bc,
        end,
        roots,
        amplitudes,
        wp,
        condition,
        descriptors,
    };
    sol.check_real()?;
    Ok(sol)
}

/// Even/odd derivative sums of the homogeneous part at `x`, as complex
/// values together with the sum of term magnitudes.
struct Homogeneous {
    /// `w_h, w_h′, w_h″, w_h‴, w_h″″, ∫₀ˣ w_h`
    values: [Complex64; 6],
    magnitude: [f64; 6],
}

impl TorsionSolution {
    pub fn section(&self) -> &ShellSection {
        &self.section
    }

    /// Coefficients of `2cosh(α_i x1)` in `w`.
    pub fn k(&self) -> [Complex64; 2] {
        let l = self.problem.geometry.l;
        let one = Complex64::new(1.0, 0.0);
        std::array::from_fn(|i| self.amplitudes[i] / (2.0 * (self.roots.alpha[i] * l).cosh() * one))
    }

    fn homogeneous(&self, x: f64) -> Homogeneous {
        let l = self.problem.geometry.l;
        let mut values = [Complex64::new(0.0, 0.0); 6];
        let mut magnitude = [0.0; 6];
        for (k, a) in self.amplitudes.iter().zip(self.roots.alpha) {
            let (c, s) = hyperbolic_ratios(a, x, l);
            let terms = [
                k * c,
                k * a * s,
                k * a * a * c,
                k * a * a * a * s,
                k * a * a * a * a * c,
                if a.norm() == 0.0 { k * x } else { k * s / a },
            ];
            for i in 0..6 {
                values[i] += terms[i];
                magnitude[i] += terms[i].norm();
            }
        }
        Homogeneous { values, magnitude }
    }

    fn check_real(&self) -> Result<()> {
        let l = self.problem.geometry.l;
        let mut worst: f64 = 0.0;
        for k in 0..=8 {
            let h = self.homogeneous(l * k as f64 / 8.0);
            for i in 0..6 {
                let scale = h.magnitude[i] + self.wp.abs();
                if scale > 0.0 {
                    worst = worst.max(h.values[i].im.abs() / scale);
                }
            }
        }
        if worst > IMAGINARY_TOLERANCE {
            return Err(ShellError::ComplexField { relative: worst });
        }
        Ok(())
    }

    pub fn w(&self, x1: f64) -> f64 {
        self.jet(x1).w
    }

    pub fn a1(&self, x1: f64) -> f64 {
        self.jet(x1).a1
    }

    pub fn a2(&self, x1: f64) -> f64 {
        self.jet(x1).a2
    }

    /// `(x1, w, a1, a2)` at `points` equispaced stations on `[−l, l]`.
    pub fn sample(&self, points: usize) -> Vec<[f64; 4]> {
        let l = self.problem.geometry.l;
        let n = points.max(2);
        (0..n)
            .map(|i| {
                let x = -l + 2.0 * l * i as f64 / (n - 1) as f64;
                let j = self.jet(x);
                [x, j.w, j.a1, j.a2]
            })
            .collect()
    }

    /// Equilibrium residuals on `points` equispaced stations and the boundary
    /// residual at `x1 = l`, all scaled by the load.
    pub fn residuals(&self, points: usize) -> ResidualReport {
        let (t, l) = (self.problem.t, self.problem.geometry.l);
        let ts = if t == 0.0 { 1.0 } else { t.abs() };
        let n = points.max(2);
        let loads = Loads::default();
        let equilibrium = (0..n)
            .map(|i| -l + 2.0 * l * i as f64 / (n - 1) as f64)
            .flat_map(|x| equilibrium_residual(&self.section, self, &loads, x))
            .fold(0.0_f64, |acc, r| acc.max(r.abs()))
            / (ts / l);
        let b = boundary_residual(&self.section, self, t, l);
        ResidualReport {
            equilibrium,
            boundary: [b[0] / ts, b[1] / (ts * l), b[2] / ts, b[3] / ts],
        }
    }
}

impl AxisymmetricField for TorsionSolution {
    fn jet(&self, x1: f64) -> FieldJet {
        let h = self.homogeneous(x1);
        let [w, w1, w2, w3, w4, wi] = h.values.map(|v| v.re);
        let t = self.problem.t;
        let w0 = w + self.wp;
        let bc = &self.bc;
        let (a1_d1, a2_d1) = bc.slopes(w2, w0, t);
        let integral = wi + self.wp * x1;
        FieldJet {
            a1: bc.A1 * w1 + bc.B1 * integral + bc.C1 * t * x1,
            a1_d1,
            a1_d2: bc.A1 * w3 + bc.B1 * w1,
            a2: bc.A2 * w1 + bc.B2 * integral + bc.C2 * t * x1,
            a2_d1,
            a2_d2: bc.A2 * w3 + bc.B2 * w1,
            w: w0,
            w_d1: w1,
            w_d2: w2,
            w_d3: w3,
            w_d4: w4,
        }
    }
}

/// Everything but the chirality: moduli, lattice, half-thickness,
/// slenderness `ρo/l` and load.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepTemplate {
    pub moduli: ElasticModuli,
    pub lattice: LatticeGeometry,
    pub eps: f64,
    pub slenderness: f64,
    pub t: f64,
}

impl Default for SweepTemplate {
    fn default() -> Self {
        Self {
            moduli: ElasticModuli::default(),
            lattice: LatticeGeometry::default(),
            eps: DEFAULT_HALF_THICKNESS,
            slenderness: DEFAULT_SLENDERNESS,
            t: DEFAULT_LOAD,
        }
    }
}

impl SweepTemplate {
    /// Problem for one chirality; `ρo` is the nominal radius and `l = ρo / slenderness`.
    pub fn problem(&self, chirality: ChiralIndices) -> Result<TorsionProblem> {
        let geometry =
            ShellGeometry::with_slenderness(chirality, &self.lattice, self.eps, self.slenderness)?;
        TorsionProblem::new(chirality, self.moduli, geometry, self.t)
    }
}

/// Descriptors of one sweep row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepValues {
    pub psi: f64,
    pub rho0: f64,
    pub torsion_angle: f64,
    pub torsion_stiffness: f64,
    pub axial_strain: f64,
    #[serde(rename = "C1")]
    pub coupling_c1: f64,
    #[serde(rename = "C2")]
    pub coupling_c2: f64,
}

impl SweepValues {
    pub fn from_solution(sol: &TorsionSolution) -> Self {
        Self {
            psi: sol.problem.chirality.rotation_angle(),
            rho0: sol.problem.geometry.rho0,
            torsion_angle: sol.descriptors.torsion_angle,
            torsion_stiffness: sol.descriptors.torsion_stiffness,
            axial_strain: sol.descriptors.axial_strain,
            coupling_c1: sol.bc.C1,
            coupling_c2: sol.bc.C2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub n: u32,
    pub m: u32,
    pub result: Result<SweepValues>,
}

/// Solves `(n, m)` for every `m` in `m_list`; rows run in parallel and are
/// returned in input order, each carrying its own error.
pub fn sweep(n: u32, m_list: &[u32], template: &SweepTemplate) -> Vec<SweepRecord> {
    m_list
        .par_iter()
        .map(|&m| SweepRecord {
            n,
            m,
            result: ChiralIndices::new(n, m)
                .and_then(|c| template.problem(c))
                .and_then(|p| solve(&p))
                .map(|s| SweepValues::from_solution(&s)),
        })
        .collect()
}
