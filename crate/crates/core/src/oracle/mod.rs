//! Independent checks of the closed forms: a finite-difference solver for the
//! torsion boundary-value problem and a thickness quadrature of the resultants.
//!
//! The fourth-order equation `c1 w″″ + c2 w″ + c3 w = f` is discretized in
//! factored form with `v = w″` as a second unknown, so both equations use the
//! three-point second difference (eliminating `v` recovers the five-point
//! stencil for `w″″`). End conditions `p w″ − r w = g` and `p w‴ − r w′ = d`
//! use `v` directly and a one-sided fourth-order first difference.

mod banded;
pub mod quadrature;

pub use banded::BandedMatrix;
pub use quadrature::{gauss_legendre, quadrature_resultants, quadrature_torque, QuadratureSample};

use serde::{Deserialize, Serialize};

use crate::elasticity::PlaneCoefficients;
use crate::error::{Result, ShellError};
use crate::geometry::ShellGeometry;
use crate::torsion::{BcCoefficients, EndCondition, OdeCoefficients, TorsionSolution};

/// Smallest accepted node count.
pub const MIN_NODES: usize = 201;

/// Uniform grid on `[−l, l]` with an odd number of nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    nodes: usize,
    l: f64,
}

impl Grid {
    pub fn new(nodes: usize, l: f64) -> Result<Self> {
        if nodes < MIN_NODES || nodes.is_multiple_of(2) {
            return Err(ShellError::InvalidGrid(format!(
                "node count must be odd and at least {MIN_NODES}, got {nodes}"
            )));
        }
        if !(l > 0.0 && l.is_finite()) {
            return Err(ShellError::InvalidGrid(format!(
                "half-length must be positive, got {l}"
            )));
        }
        Ok(Self { nodes, l })
    }

    pub fn len(&self) -> usize {
        self.nodes
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn h(&self) -> f64 {
        2.0 * self.l / (self.nodes - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        // symmetric construction keeps x(N−1−i) = −x(i) exactly
        let c = (self.nodes - 1) / 2;
        let k = i as f64 - c as f64;
        self.l * k / c as f64
    }

    pub fn center(&self) -> usize {
        (self.nodes - 1) / 2
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.nodes).map(|i| self.x(i)).collect()
    }
}

/// `c1 w″″ + c2 w″ + c3 w = f(x)` on `[−l, l]` with `p w″ − r w = g` and
/// `p w‴ − r w′ = d` imposed at each end.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourthOrderBvp {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub p: f64,
    pub r: f64,
    /// `(g, d)` at `x = −l`.
    pub left: (f64, f64),
    /// `(g, d)` at `x = l`.
    pub right: (f64, f64),
}

/// Sampled `w` and `v = w″`.
#[derive(Debug, Clone, PartialEq)]
pub struct BvpSolution {
    pub w: Vec<f64>,
    pub v: Vec<f64>,
    pub condition: f64,
}

/// One-sided fourth-order first difference (scaled by `1/h`).
const D1_FORWARD: [f64; 5] = [-25.0 / 12.0, 4.0, -3.0, 4.0 / 3.0, -0.25];

/// Pivot-ratio limit above which the discrete system is rejected.
const CONDITION_LIMIT: f64 = 1e15;

impl FourthOrderBvp {
    pub fn solve(&self, grid: &Grid, source: impl Fn(f64) -> f64) -> Result<BvpSolution> {
        let n = grid.len();
        let h = grid.h();
        let h2 = h * h;
        let (wi, vi) = (|i: usize| 2 * i, |i: usize| 2 * i + 1);
        let mut a = BandedMatrix::zeros(2 * n, 9, 8);
        let mut b = vec![0.0; 2 * n];
        for i in 1..n - 1 {
            let (row_a, row_b) = (2 * i, 2 * i + 1);
            for (d, cf) in [(-1isize, 1.0), (0, -2.0), (1, 1.0)] {
                let j = (i as isize + d) as usize;
                a.add(row_a, vi(j), self.c1 * cf / h2);
                a.add(row_b, wi(j), cf / h2);
            }
            a.add(row_a, vi(i), self.c2);
            a.add(row_a, wi(i), self.c3);
            b[row_a] = source(grid.x(i));
            a.add(row_b, vi(i), -1.0);
        }
        let last = n - 1;
        a.add(0, vi(0), self.p);
        a.add(0, wi(0), -self.r);
        b[0] = self.left.0;
        a.add(2 * last, vi(last), self.p);
        a.add(2 * last, wi(last), -self.r);
        b[2 * last] = self.right.0;
        for (k, cf) in D1_FORWARD.iter().enumerate() {
            let c = cf / h;
            a.add(1, vi(k), self.p * c);
            a.add(1, wi(k), -self.r * c);
            a.add(2 * last + 1, vi(last - k), -self.p * c);
            a.add(2 * last + 1, wi(last - k), self.r * c);
        }
        b[1] = self.left.1;
        b[2 * last + 1] = self.right.1;

        let (x, condition) = a.solve(b)?;
        if !(condition < CONDITION_LIMIT) {
            return Err(ShellError::SingularSystem { condition });
        }
        Ok(BvpSolution {
            w: x.iter().step_by(2).copied().collect(),
            v: x.iter().skip(1).step_by(2).copied().collect(),
            condition,
        })
    }
}

/// Finite-difference torsion fields on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FdSolution {
    pub x: Vec<f64>,
    pub w: Vec<f64>,
    pub a1: Vec<f64>,
    pub a2: Vec<f64>,
    pub condition: f64,
}

/// Trapezoid integral of nodal slopes with zero value at the centre node.
fn integrate_from_center(slope: &[f64], h: f64, center: usize) -> Vec<f64> {
    let mut out = vec![0.0; slope.len()];
    for i in center + 1..slope.len() {
        out[i] = out[i - 1] + 0.5 * h * (slope[i - 1] + slope[i]);
    }
    for i in (0..center).rev() {
        out[i] = out[i + 1] - 0.5 * h * (slope[i] + slope[i + 1]);
    }
    out
}

/// Solves the torsion equation by finite differences with the end conditions
/// `a11(ρo w″ − a1′) − c11 a2′ = 0` and its derivative at `x = ±l`.
pub fn fd_solve(
    ode: &OdeCoefficients,
    bc: &BcCoefficients,
    plane: &PlaneCoefficients,
    geometry: &ShellGeometry,
    t: f64,
    grid: &Grid,
) -> Result<FdSolution> {
    let end = EndCondition::new(plane, geometry, bc);
    let bvp = FourthOrderBvp {
        c1: ode.c1,
        c2: ode.c2,
        c3: ode.c3,
        p: end.p,
        r: end.r,
        left: (end.s * t, 0.0),
        right: (end.s * t, 0.0),
    };
    let forcing = -ode.c4 * t;
    let sol = bvp.solve(grid, |_| forcing)?;
    let slopes: Vec<(f64, f64)> = sol
        .w
        .iter()
        .zip(&sol.v)
        .map(|(&w, &v)| bc.slopes(v, w, t))
        .collect();
    let s1: Vec<f64> = slopes.iter().map(|s| s.0).collect();
    let s2: Vec<f64> = slopes.iter().map(|s| s.1).collect();
    Ok(FdSolution {
        x: grid.nodes(),
        a1: integrate_from_center(&s1, grid.h(), grid.center()),
        a2: integrate_from_center(&s2, grid.h(), grid.center()),
        w: sol.w,
        condition: sol.condition,
    })
}

/// Finite-difference solution of a solved problem's equation on `nodes` points.
pub fn fd_solve_for(solution: &TorsionSolution, nodes: usize) -> Result<FdSolution> {
    let p = &solution.problem;
    fd_solve(
        &solution.ode,
        &solution.bc,
        solution.section().plane(),
        &p.geometry,
        p.t,
        &Grid::new(nodes, p.geometry.l)?,
    )
}

/// `max |a − b| / max |b|`; the absolute deviation when `b` vanishes.
pub fn relative_linf(a: &[f64], b: &[f64]) -> f64 {
    let dev = a
        .iter()
        .zip(b)
        .fold(0.0_f64, |acc, (x, y)| acc.max((x - y).abs()));
    let scale = b.iter().fold(0.0_f64, |acc, y| acc.max(y.abs()));
    if scale == 0.0 {
        dev
    } else {
        dev / scale
    }
}

/// Observed order from errors on successively halved steps.
pub fn observed_order(coarse: f64, fine: f64) -> f64 {
    (coarse / fine).log2()
}

/// Relative L∞ deviations of the oracle fields from the closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldDeviation {
    pub w: f64,
    pub a1: f64,
    pub a2: f64,
}

impl FieldDeviation {
    pub fn max(&self) -> f64 {
        self.w.max(self.a1).max(self.a2)
    }
}

pub fn closed_form_deviation(solution: &TorsionSolution, fd: &FdSolution) -> FieldDeviation {
    let samples: Vec<[f64; 3]> =
        fd.x.iter()
            .map(|&x| [solution.w(x), solution.a1(x), solution.a2(x)])
            .collect();
    let col = |k: usize| samples.iter().map(|s| s[k]).collect::<Vec<_>>();
    FieldDeviation {
        w: relative_linf(&fd.w, &col(0)),
        a1: relative_linf(&fd.a1, &col(1)),
        a2: relative_linf(&fd.a2, &col(2)),
    }
}
