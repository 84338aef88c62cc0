//! Linearly elastic shell model for single-wall carbon nanotubes of arbitrary
//! chirality.
//!
//! The crate is organised bottom-up:
//!
//! - [`geometry`]: chirality bookkeeping (chiral/axial vectors, chiral angle,
//!   rotation angle ψ, nominal radius) and the effective shell geometry.
//! - [`elasticity`]: the orthotropic stiffness of the zigzag shell, its
//!   conjugation by a rotation about the shell normal, and the nine plane
//!   coefficients entering the axisymmetric stress law.
//! - [`resultants`]: axisymmetric Kirchhoff–Love kinematics, closed-form
//!   force/moment resultants and equilibrium/boundary residuals.
//! - [`torsion`]: the closed-form solution of the end-torque problem and
//!   chirality sweeps.
//! - [`oracle`]: an independent finite-difference boundary-value solver and
//!   a through-thickness quadrature of the resultants.
//!
//! Units throughout: lengths in nm, forces in nN, moduli and stresses in GPa
//! (1 GPa = 1 nN/nm²), line loads in nN/nm.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod elasticity;
pub mod error;
pub mod geometry;
pub mod oracle;
pub mod resultants;
pub mod torsion;

pub use elasticity::{ElasticModuli, PlaneCoefficients, Rotation, StiffnessTensor};
pub use error::{Result, ShellError};
pub use geometry::{ChiralIndices, LatticeGeometry, ShellGeometry};
pub use num_complex::Complex64;
pub use resultants::{AxisymmetricField, FieldJet, ResultantState, ShellSection};
pub use torsion::{
    BcCoefficients, OdeCoefficients, SweepRecord, SweepTemplate, TorsionProblem, TorsionSolution,
};
