//! Fixtures shared by the benchmarks.

use nanoshell_core::{ChiralIndices, SweepTemplate, TorsionProblem, TorsionSolution};

/// Chiral indices used across the benchmarks.
pub const FAMILY_N: u32 = 6;

/// Reference problem for `(FAMILY_N, m)`.
pub fn problem(m: u32) -> TorsionProblem {
    TorsionProblem::reference(ChiralIndices::new(FAMILY_N, m).expect("valid indices"))
        .expect("thin shell")
}

/// Solved reference problem for `(FAMILY_N, m)`.
pub fn solution(m: u32) -> TorsionSolution {
    nanoshell_core::torsion::solve(&problem(m)).expect("solvable")
}

/// Default sweep template and the `m` values `0..=n`.
pub fn sweep_input(n: u32) -> (SweepTemplate, Vec<u32>) {
    (SweepTemplate::default(), (0..=n).collect())
}
