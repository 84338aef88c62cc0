use std::f64::consts::PI;

use nanoshell_core::elasticity::{
    matmul, strain_energy_density, MembraneStrain, PlaneCoefficients, Rotation, StiffnessTensor,
};
use nanoshell_core::geometry::{ChiralIndices, LatticeGeometry, ShellGeometry};
use nanoshell_core::resultants::{
    AxisymmetricField, KinematicState, PolynomialField, ShellSection,
};
use nanoshell_core::torsion::{solve, sweep, SweepTemplate, SweepValues, TorsionProblem};
use nanoshell_core::ElasticModuli;
use proptest::prelude::*;

fn moduli() -> impl Strategy<Value = ElasticModuli> {
    (
        300.0..1200.0f64,
        0.8..1.25f64,
        100.0..600.0f64,
        0.05..0.4f64,
    )
        .prop_map(|(e1, ratio, g, nu21)| {
            let e2 = e1 * ratio;
            ElasticModuli::new(e1, e2, g, e1 * nu21 / e2, nu21).unwrap()
        })
}

fn chirality() -> impl Strategy<Value = ChiralIndices> {
    (6u32..=16)
        .prop_flat_map(|n| (Just(n), 0..=n))
        .prop_map(|(n, m)| ChiralIndices::new(n, m).unwrap())
}

fn kinematics() -> impl Strategy<Value = KinematicState> {
    prop::array::uniform4(-1e-2..1e-2f64).prop_map(|v| KinematicState {
        a1_d1: v[0],
        a2_d1: v[1],
        w: v[2],
        w_d2: v[3],
    })
}

fn sorted_mandel_eigenvalues(c: &StiffnessTensor) -> Vec<f64> {
    let m = c.mandel_matrix();
    let mat = nalgebra::Matrix6::from_fn(|i, j| m[i][j]);
    let mut ev: Vec<f64> = nalgebra::SymmetricEigen::new(mat)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(f64::total_cmp);
    ev
}

fn section(c: ChiralIndices, m: &ElasticModuli) -> ShellSection {
    let g = ShellGeometry::with_slenderness(c, &LatticeGeometry::default(), 0.194, 0.25).unwrap();
    ShellSection::new(PlaneCoefficients::for_chirality(m, c), g).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_keeps_symmetries_and_eigenvalues(m in moduli(), psi in -PI..PI) {
        let c = StiffnessTensor::orthotropic(&m);
        let ct = c.conjugate(&Rotation::about_normal(psi));
        prop_assert!(ct.symmetry_defect() <= 1e-12 * c.max_abs_component());
        let (a, b) = (sorted_mandel_eigenvalues(&c), sorted_mandel_eigenvalues(&ct));
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() <= 1e-12 * a[5]);
        }
    }

    #[test]
    fn conjugation_composes(m in moduli(), p1 in -PI..PI, p2 in -PI..PI) {
        let c = StiffnessTensor::orthotropic(&m);
        let twice = c.conjugate(&Rotation::about_normal(p1)).conjugate(&Rotation::about_normal(p2));
        let once = c.conjugate(&Rotation::about_normal(p1 + p2));
        prop_assert!(twice.max_abs_difference(&once) <= 1e-11 * c.max_abs_component());
    }

    #[test]
    fn energy_is_frame_indifferent(
        m in moduli(),
        psi in -PI..PI,
        e in prop::array::uniform3(-1e-2..1e-2f64),
    ) {
        let q = Rotation::about_normal(psi);
        let c = StiffnessTensor::orthotropic(&m);
        let strain = MembraneStrain { e11: e[0], e22: e[1], e12: e[2] };
        let rotated = q.transpose().pull_back(&strain.to_tensor());
        let lhs = strain_energy_density(&c.conjugate(&q), &strain);
        let rhs = c.energy_density(&rotated);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1e-300));
        prop_assert!(lhs >= 0.0);
        // Q Qᵀ = I
        let qqt = matmul(q.matrix(), q.transpose().matrix());
        prop_assert!((qqt[0][0] - 1.0).abs() < 1e-15 && qqt[0][1].abs() < 1e-15);
    }

    #[test]
    fn plane_coefficients_reproduce_tensor_stress(
        m in moduli(),
        c in chirality(),
        e in prop::array::uniform3(-1e-2..1e-2f64),
    ) {
        let t = StiffnessTensor::for_chirality(&m, c);
        let p = PlaneCoefficients::from_tensor(&t);
        let strain = MembraneStrain { e11: e[0], e22: e[1], e12: e[2] };
        let s = t.apply(&strain.to_tensor());
        let (s11, s22, s12) = p.stress(&strain);
        let scale = 1e-12 * t.max_abs_component() * 1e-2;
        prop_assert!((s[0][0] - s11).abs() <= scale);
        prop_assert!((s[1][1] - s22).abs() <= scale);
        prop_assert!((s[0][1] - s12).abs() <= scale);
        prop_assert!((p.a12 - 0.5 * p.c11).abs() <= 1e-12 * t.max_abs_component());
        prop_assert!((p.b12 - 0.5 * p.c22).abs() <= 1e-12 * t.max_abs_component());
    }

    #[test]
    fn resultants_are_linear(
        c in chirality(),
        u in kinematics(),
        v in kinematics(),
        alpha in -3.0..3.0f64,
        beta in -3.0..3.0f64,
    ) {
        let s = section(c, &ElasticModuli::default());
        let combo = KinematicState {
            a1_d1: alpha * u.a1_d1 + beta * v.a1_d1,
            a2_d1: alpha * u.a2_d1 + beta * v.a2_d1,
            w: alpha * u.w + beta * v.w,
            w_d2: alpha * u.w_d2 + beta * v.w_d2,
        };
        let lhs = s.resultants(&combo);
        let rhs = s.resultants(&u) * alpha + s.resultants(&v) * beta;
        let scale = s.resultants(&u).max_abs() * alpha.abs() + s.resultants(&v).max_abs() * beta.abs();
        prop_assert!((lhs - rhs).max_abs() <= 1e-13 * scale.max(1e-300));
    }

    #[test]
    fn solve_is_linear_in_load(c in chirality(), t in 0.001..1.0f64, k in -4.0..4.0f64) {
        let base = TorsionProblem::reference(c).unwrap().with_load(t);
        let s1 = solve(&base).unwrap();
        let s2 = solve(&base.with_load(k * t)).unwrap();
        let l = base.geometry.l;
        for x in [-l, -0.3 * l, 0.0, 0.7 * l, l] {
            let (a, b) = (s1.jet(x), s2.jet(x));
            for (p, q) in [(a.w, b.w), (a.a1, b.a1), (a.a2, b.a2), (a.w_d2, b.w_d2)] {
                prop_assert!((k * p - q).abs() <= 1e-12 * q.abs().max((k * p).abs()).max(1e-300));
            }
        }
        prop_assert!(
            (k * s1.descriptors.torsion_angle - s2.descriptors.torsion_angle).abs()
                <= 1e-14 * s2.descriptors.torsion_angle.abs()
        );
    }

    #[test]
    fn solution_is_even_odd_and_residual_free(c in chirality(), m in moduli()) {
        let template = SweepTemplate { moduli: m, ..Default::default() };
        let p = template.problem(c).unwrap();
        let s = solve(&p).unwrap();
        let l = p.geometry.l;
        for f in [0.13, 0.5, 0.91] {
            let (a, b) = (s.jet(f * l), s.jet(-f * l));
            prop_assert!((a.w - b.w).abs() <= 1e-13 * a.w.abs().max(1e-300));
            prop_assert!((a.a1 + b.a1).abs() <= 1e-13 * a.a1.abs().max(1e-300));
            prop_assert!((a.a2 + b.a2).abs() <= 1e-13 * a.a2.abs().max(1e-300));
        }
        prop_assert_eq!(s.a1(0.0), 0.0);
        prop_assert_eq!(s.a2(0.0), 0.0);
        let r = s.residuals(41);
        prop_assert!(r.max() <= 1e-8, "{:?}", r);
        let d = s.descriptors;
        let torque = 2.0 * PI * p.geometry.rho0.powi(2) * p.t;
        prop_assert!((d.torsion_angle * d.torsion_stiffness - torque).abs() <= 1e-12 * torque);
    }

    #[test]
    fn achiral_shells_do_not_couple(n in 6u32..=20, armchair in any::<bool>(), m in moduli()) {
        let c = ChiralIndices::new(n, if armchair { n } else { 0 }).unwrap();
        let template = SweepTemplate { moduli: m, ..Default::default() };
        let s = solve(&template.problem(c).unwrap()).unwrap();
        prop_assert_eq!(s.descriptors.axial_strain, 0.0);
        prop_assert_eq!(s.ode.c4, 0.0);
        for x in [0.0, 0.4, 1.3] {
            prop_assert_eq!(s.w(x), 0.0);
            prop_assert_eq!(s.a1(x), 0.0);
        }
    }

    #[test]
    fn isotropic_shells_do_not_couple(c in chirality(), e in 200.0..1500.0f64, nu in 0.0..0.45f64) {
        let template = SweepTemplate {
            moduli: ElasticModuli::isotropic(e, nu).unwrap(),
            ..Default::default()
        };
        let s = solve(&template.problem(c).unwrap()).unwrap();
        prop_assert!(s.descriptors.axial_strain.abs() <= 1e-12);
    }

    #[test]
    fn single_row_sweep_equals_solve(c in chirality()) {
        let rows = sweep(c.n(), &[c.m()], &SweepTemplate::default());
        let direct = SweepValues::from_solution(&solve(&TorsionProblem::reference(c).unwrap()).unwrap());
        prop_assert_eq!(rows.len(), 1);
        prop_assert_eq!(rows[0].result.as_ref().unwrap(), &direct);
    }

    #[test]
    fn axial_vector_is_orthogonal_and_primitive(n in 1u32..=200, frac in 0.0..=1.0f64) {
        let m = ((n as f64) * frac).floor() as u32;
        let c = ChiralIndices::new(n, m).unwrap();
        let (t1, t2) = c.axial_vector();
        let (n, m) = (n as i64, m as i64);
        prop_assert_eq!(2 * n * t1 + n * t2 + m * t1 + 2 * m * t2, 0);
        let g = {
            let (mut a, mut b) = (t1.abs(), t2.abs());
            while b != 0 { (a, b) = (b, a % b); }
            a
        };
        prop_assert_eq!(g, 1);
    }
}

#[test]
fn polynomial_field_resultants_match_kinematics() {
    let s = section(ChiralIndices::new(6, 3).unwrap(), &ElasticModuli::default());
    let f = PolynomialField {
        a1: vec![0.0, 1e-3, 2e-4],
        a2: vec![0.0, -1e-3],
        w: vec![2e-3, 0.0, 1e-3],
    };
    let direct = s.resultants(&KinematicState {
        a1_d1: 1e-3 + 4e-4 * 0.5,
        a2_d1: -1e-3,
        w: 2e-3 + 1e-3 * 0.25,
        w_d2: 2e-3,
    });
    assert!((s.resultants_at(&f, 0.5) - direct).max_abs() < 1e-15);
}
