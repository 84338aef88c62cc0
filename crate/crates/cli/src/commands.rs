//! The three subcommands.

use std::io::Write;
use std::path::Path;

use nanoshell_core::elasticity::{PlaneCoefficients, StiffnessTensor};
use nanoshell_core::oracle::{closed_form_deviation, fd_solve_for};
use nanoshell_core::torsion::{self, SweepRecord, TorsionSolution};
use nanoshell_core::{ChiralIndices, Complex64};
use serde_json::{json, Map, Value};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::format::{clean, csv_field, general};
use crate::svg::{self, Series};

pub enum Kind {
    Tensor,
    Torsion,
    Sweep,
}

/// Exact header of the sweep CSV.
pub const SWEEP_HEADER: &str =
    "n,m,psi_rad,rho0_nm,torsion_angle_rad_per_nm,torsion_stiffness_nN_nm2,axial_strain";

const DIGITS: usize = 12;

fn emit(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, content)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(content.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

fn single_chirality(cfg: &RunConfig) -> Result<ChiralIndices, CliError> {
    let n = cfg.n.expect("validated");
    let m = cfg.m.expect("validated");
    let m = m
        .single()
        .ok_or_else(|| CliError::Config(format!("expected a single m, got the range {m}")))?;
    Ok(ChiralIndices::new(n, m)?)
}

fn to_json(v: &Map<String, Value>) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn complex(z: Complex64) -> Value {
    json!({ "re": clean(z.re), "im": clean(z.im) })
}

pub fn tensor(cfg: &RunConfig) -> Result<(), CliError> {
    let chirality = single_chirality(cfg)?;
    let moduli = cfg.moduli()?;
    let lattice = cfg.template()?.lattice;
    let c = StiffnessTensor::for_chirality(&moduli, chirality);
    let plane = PlaneCoefficients::from_tensor(&c);
    let mut doc = Map::new();
    doc.insert("n".into(), json!(chirality.n()));
    doc.insert("m".into(), json!(chirality.m()));
    doc.insert("psi".into(), json!(clean(chirality.rotation_angle())));
    doc.insert(
        "chiral_angle".into(),
        json!(clean(chirality.chiral_angle())),
    );
    doc.insert("rho0".into(), json!(chirality.nominal_radius(&lattice)));
    let stiffness: Map<String, Value> = c
        .independent_components()
        .into_iter()
        .map(|(k, v)| (k, json!(clean(v))))
        .collect();
    doc.insert("stiffness".into(), Value::Object(stiffness));
    for (name, v) in plane.named() {
        doc.insert(format!("{name}_coeff"), json!(clean(v)));
    }
    emit(cfg.out.as_deref(), &to_json(&doc))
}

fn solution_json(sol: &TorsionSolution, residuals: &torsion::ResidualReport) -> Map<String, Value> {
    let p = &sol.problem;
    let d = &sol.descriptors;
    let mut doc = Map::new();
    doc.insert("n".into(), json!(p.chirality.n()));
    doc.insert("m".into(), json!(p.chirality.m()));
    doc.insert("psi".into(), json!(clean(p.chirality.rotation_angle())));
    doc.insert("rho0".into(), json!(p.geometry.rho0));
    doc.insert("eps".into(), json!(p.geometry.eps));
    doc.insert("l".into(), json!(p.geometry.l));
    doc.insert("t".into(), json!(p.t));
    doc.insert("torque".into(), json!(clean(d.torque)));
    doc.insert("torsion_angle".into(), json!(clean(d.torsion_angle)));
    doc.insert(
        "torsion_stiffness".into(),
        json!(clean(d.torsion_stiffness)),
    );
    doc.insert("axial_strain".into(), json!(clean(d.axial_strain)));
    doc.insert(
        "far_field_axial_strain".into(),
        json!(clean(d.far_field_axial_strain)),
    );
    doc.insert("wp".into(), json!(clean(sol.wp)));
    let o = &sol.ode;
    doc.insert(
        "ode".into(),
        json!({ "c1": clean(o.c1), "c2": clean(o.c2), "c3": clean(o.c3), "c4": clean(o.c4) }),
    );
    let b = &sol.bc;
    doc.insert(
        "bc".into(),
        json!({
            "A1": clean(b.A1), "B1": clean(b.B1), "C1": clean(b.C1),
            "A2": clean(b.A2), "B2": clean(b.B2), "C2": clean(b.C2),
        }),
    );
    doc.insert(
        "roots".into(),
        json!({
            "discriminant": sol.roots.discriminant,
            "complex": sol.roots.is_complex(),
            "alpha_squared": sol.roots.z.iter().map(|z| complex(*z)).collect::<Vec<_>>(),
            "alpha": sol.roots.alpha.iter().map(|z| complex(*z)).collect::<Vec<_>>(),
        }),
    );
    doc.insert(
        "k".into(),
        Value::Array(sol.k().iter().map(|z| complex(*z)).collect()),
    );
    doc.insert("amplitude_condition".into(), json!(sol.condition));
    doc.insert(
        "residuals".into(),
        json!({
            "equilibrium_max": residuals.equilibrium,
            "boundary": residuals.boundary.map(clean),
            "max": residuals.max(),
        }),
    );
    doc
}

struct Verification {
    json: Value,
    failure: Option<String>,
}

fn verify(
    sol: &TorsionSolution,
    cfg: &RunConfig,
    residual_max: f64,
) -> Result<Verification, CliError> {
    let fd = fd_solve_for(sol, cfg.grid_points)?;
    let dev = closed_form_deviation(sol, &fd);
    let mut failure = None;
    if residual_max > cfg.residual_tol {
        failure = Some(format!(
            "({},{}) residual {residual_max:e} exceeds {:e}",
            sol.problem.chirality.n(),
            sol.problem.chirality.m(),
            cfg.residual_tol
        ));
    } else if dev.max() > cfg.oracle_tol {
        failure = Some(format!(
            "({},{}) oracle deviation {:e} exceeds {:e}",
            sol.problem.chirality.n(),
            sol.problem.chirality.m(),
            dev.max(),
            cfg.oracle_tol
        ));
    }
    Ok(Verification {
        json: json!({
            "grid_points": cfg.grid_points,
            "w": dev.w,
            "a1": dev.a1,
            "a2": dev.a2,
            "max": dev.max(),
            "condition": fd.condition,
            "oracle_tolerance": cfg.oracle_tol,
            "residual_tolerance": cfg.residual_tol,
            "passed": failure.is_none(),
        }),
        failure,
    })
}

pub fn torsion(cfg: &RunConfig, check: bool) -> Result<(), CliError> {
    let chirality = single_chirality(cfg)?;
    let problem = cfg.template()?.problem(chirality)?;
    let advisory = problem.load_advisory();
    if let Some(a) = &advisory {
        eprintln!("nanoshell: warning: {a}");
    }
    let sol = torsion::solve(&problem)?;
    let residuals = sol.residuals(101);
    let mut doc = solution_json(&sol, &residuals);
    let mut failure = None;
    if check {
        let v = verify(&sol, cfg, residuals.max())?;
        doc.insert("verification".into(), v.json);
        failure = v.failure;
    } else {
        doc.insert("verification".into(), Value::Null);
    }
    doc.insert("advisory".into(), json!(advisory));
    emit(cfg.out.as_deref(), &to_json(&doc))?;
    if let Some(path) = &cfg.fields {
        let mut csv = String::from("x1_nm,w_nm,a1_nm,a2_nm\n");
        for [x, w, a1, a2] in sol.sample(cfg.field_points) {
            let row: Vec<String> = [x, w, a1, a2].iter().map(|v| general(*v, DIGITS)).collect();
            csv.push_str(&row.join(","));
            csv.push('\n');
        }
        std::fs::write(path, csv)?;
    }
    match failure {
        Some(f) => Err(CliError::Verification(f)),
        None => Ok(()),
    }
}

fn sweep_csv(records: &[SweepRecord]) -> String {
    let failed = records.iter().any(|r| r.result.is_err());
    let mut out = String::from(SWEEP_HEADER);
    if failed {
        out.push_str(",error");
    }
    out.push('\n');
    for r in records {
        let mut fields = vec![r.n.to_string(), r.m.to_string()];
        match &r.result {
            Ok(v) => {
                fields.extend(
                    [
                        v.psi,
                        v.rho0,
                        v.torsion_angle,
                        v.torsion_stiffness,
                        v.axial_strain,
                    ]
                    .iter()
                    .map(|x| general(*x, DIGITS)),
                );
                if failed {
                    fields.push(String::new());
                }
            }
            Err(e) => {
                fields.extend(std::iter::repeat_n(String::new(), 5));
                fields.push(csv_field(&e.to_string()));
            }
        }
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn sweep(cfg: &RunConfig, check: bool) -> Result<(), CliError> {
    let n = cfg.n.expect("validated");
    let ms = cfg.m.expect("validated").values();
    let template = cfg.template()?;
    let records = torsion::sweep(n, &ms, &template);
    emit(cfg.out.as_deref(), &sweep_csv(&records))?;

    if let Some(path) = &cfg.svg {
        let ok: Vec<_> = records
            .iter()
            .filter_map(|r| r.result.as_ref().ok().map(|v| (r.m as f64, v)))
            .collect();
        let series = [
            ("Torsion angle per unit length [rad/nm]", 0),
            ("Torsion stiffness [nN nm^2]", 1),
            ("Axial strain [-]", 2),
        ]
        .map(|(title, k)| Series {
            title,
            x_label: "m",
            points: ok
                .iter()
                .map(|(m, v)| {
                    (
                        *m,
                        [v.torsion_angle, v.torsion_stiffness, v.axial_strain][k],
                    )
                })
                .collect(),
        });
        std::fs::write(path, svg::render(&series))?;
    }

    if let Some(r) = records.iter().find(|r| r.result.is_err()) {
        let e = r.result.clone().unwrap_err();
        return Err(CliError::Solver(e));
    }
    if check {
        for &m in &ms {
            let problem = template.problem(ChiralIndices::new(n, m)?)?;
            let sol = torsion::solve(&problem)?;
            let v = verify(&sol, cfg, sol.residuals(101).max())?;
            if let Some(f) = v.failure {
                return Err(CliError::Verification(f));
            }
        }
    }
    Ok(())
}
