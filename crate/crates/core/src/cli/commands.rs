use std::f64::consts::{FRAC_PI_4, FRAC_PI_6, PI};
use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::brachistochrone;
use crate::dynamics::{make_trajectory, propagate_analytic, DensityMatrix, Trajectory};
use crate::error::Result;
use crate::geometry::{
    bures_distance_normalized, bures_speed, fidelity_of_separability, geometry_sample,
    hs_rate_from_concurrence, hs_speed_from_concurrence,
};
use crate::model::{spectrum, t_of_eta, ModelParams};
use crate::phase::{
    paper_closed_form_phase, phases_agree, tong_phase_series, wrap_phase, DEFAULT_EPS_P,
};

use super::config::{Quantity, SweepSpec, DEFAULT_PHASE_POINTS};
use super::csv::{field, format_g, Table};
use super::CliError;

pub const SCAN_HEADER: [&str; 12] = [
    "eta", "alpha", "J", "gamma", "B", "C", "L_HS", "V_HS", "F_sep", "L_B", "V_B", "Phi_g",
];
pub const PHASE_HEADER: [&str; 5] = [
    "eta",
    "Phi_g_tong",
    "Phi_g_closed_form",
    "delta",
    "converged",
];

fn fmt_c(z: C64) -> String {
    if z.im == 0.0 {
        format_g(z.re)
    } else if z.re == 0.0 {
        format!("{}i", format_g(z.im))
    } else {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        format!("{}{sign}{}i", format_g(z.re), format_g(z.im.abs()))
    }
}

pub fn spectrum_report(j: f64, gamma: f64, b: f64) -> std::result::Result<String, CliError> {
    let p = ModelParams::new(j, gamma, b, 0.0).map_err(|e| CliError::Usage(e.to_string()))?;
    let s = spectrum(&p);
    let mut out = String::from("# energy, state components on |uu>, |ud>, |du>, |dd>\n");
    for (e, v) in s.energies.iter().zip(&s.states) {
        let comps: Vec<String> = v.iter().map(|&z| fmt_c(z)).collect();
        let _ = writeln!(out, "{}\t({})", format_g(*e), comps.join(", "));
    }
    Ok(out)
}

/// Every density-matrix entry along the trajectory for each α.
pub fn evolve_table(spec: &SweepSpec) -> Result<Table> {
    let mut header = vec!["eta".to_string(), "t".to_string(), "alpha".to_string()];
    for i in 0..4 {
        for j in 0..4 {
            header.push(format!("d{i}{j}_re"));
            header.push(format!("d{i}{j}_im"));
        }
    }
    let mut table = Table {
        header,
        rows: Vec::new(),
    };
    let trajs = trajectories(spec, spec.n_points)?;
    for (alpha, traj) in spec.alphas.iter().zip(&trajs) {
        for (eta, d) in traj.etas.iter().zip(&traj.states) {
            let mut row = vec![
                format_g(*eta),
                format_g(t_of_eta(&traj.params, *eta)?),
                format_g(*alpha),
            ];
            for z in d.mat().entries() {
                row.push(format_g(z.re));
                row.push(format_g(z.im));
            }
            table.push(row);
        }
    }
    Ok(table)
}

fn trajectories(spec: &SweepSpec, n_points: usize) -> Result<Vec<Trajectory>> {
    spec.alphas
        .par_iter()
        .map(|&a| make_trajectory(&spec.params_for(a), spec.eta_max, n_points, spec.method))
        .collect()
}

fn scan_row(p: &ModelParams, eta: f64, values: [Option<f64>; 7]) -> Vec<String> {
    let mut row = vec![
        format_g(eta),
        format_g(p.noise_alpha),
        format_g(p.coupling_j),
        format_g(p.anisotropy_gamma),
        format_g(p.field_b),
    ];
    row.extend(values.iter().map(|v| field(*v)));
    row
}

/// One row per (α, η) in grid order.
pub fn scan_table(spec: &SweepSpec) -> Result<Table> {
    let mut table = Table::new(&SCAN_HEADER);
    let trajs = trajectories(spec, spec.n_points)?;
    let blocks: Vec<Vec<Vec<String>>> = trajs
        .par_iter()
        .map(|traj| {
            let phases = if spec.wants(Quantity::Phi) {
                Some(tong_phase_series(traj, DEFAULT_EPS_P)?)
            } else {
                None
            };
            traj.etas
                .par_iter()
                .zip(&traj.states)
                .enumerate()
                .map(|(k, (&eta, d))| {
                    let g = geometry_sample(&traj.params, eta, d)?;
                    let pick = |q: Quantity, v: f64| spec.wants(q).then_some(v);
                    let values = [
                        pick(Quantity::C, g.concurrence),
                        pick(Quantity::Lhs, g.hs_rate),
                        pick(Quantity::Vhs, g.hs_speed),
                        pick(Quantity::F, g.fidelity_sep),
                        pick(Quantity::Lb, g.bures_distance),
                        pick(Quantity::Vb, g.bures_speed),
                        phases.as_ref().map(|s| s[k].phase),
                    ];
                    Ok(scan_row(&traj.params, eta, values))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    for rows in blocks {
        rows.into_iter().for_each(|r| table.push(r));
    }
    Ok(table)
}

pub fn brachistochrone_report(p: &ModelParams) -> Result<String> {
    let r = brachistochrone::solve(p)?;
    let propagated = propagate_analytic(p, &DensityMatrix::initial(), r.t_min)?;
    let mut out = String::new();
    let _ = writeln!(out, "J                {}", format_g(p.coupling_j));
    let _ = writeln!(out, "alpha            {}", format_g(p.noise_alpha));
    let _ = writeln!(out, "v_hs_max         {:.6}", r.v_hs_max);
    let _ = writeln!(out, "l_hs_at_c1       {:.6}", r.l_hs_at_c1);
    let _ = writeln!(out, "t_min            {:.6}", r.t_min);
    let _ = writeln!(out, "eta(t_min)       {:.6}", r.eta_at_t_min);
    let _ = writeln!(out, "milburn_residual {:.3e}", r.milburn_residual);
    let _ = writeln!(
        out,
        "scan sup V_HS    {:.6} at eta = {:.6}",
        r.scan_sup_v_hs, r.scan_sup_eta
    );
    let matrix = |out: &mut String, title: &str, d: &DensityMatrix| {
        let _ = writeln!(out, "{title}");
        for i in 0..4 {
            let row: Vec<String> = (0..4)
                .map(|j| format!("{:>22}", fmt_c(d.mat().get(i, j))))
                .collect();
            let _ = writeln!(out, "  {}", row.join(" "));
        }
    };
    matrix(&mut out, "optimal state (printed form):", &r.optimal_state);
    matrix(&mut out, "propagated state at t_min:", &propagated);
    Ok(out)
}

/// Phase rows for one α: `Φ_g` on `n_points`, checked against the grid with
/// half the spacing.
pub fn geomphase_rows(
    p: &ModelParams,
    eta_max: f64,
    n_points: usize,
    closed_form: bool,
) -> Result<Vec<Vec<String>>> {
    let coarse = make_trajectory(p, eta_max, n_points, crate::dynamics::Method::Analytic)?;
    let fine = make_trajectory(
        p,
        eta_max,
        2 * n_points - 1,
        crate::dynamics::Method::Analytic,
    )?;
    let (a, b) = rayon::join(
        || tong_phase_series(&coarse, DEFAULT_EPS_P),
        || tong_phase_series(&fine, DEFAULT_EPS_P),
    );
    let (a, b) = (a?, b?);
    Ok(a.iter()
        .enumerate()
        .map(|(k, r)| {
            let (cf, delta) = if closed_form {
                let cf = paper_closed_form_phase(p, r.eta_end);
                (Some(cf), Some(wrap_phase(r.phase - cf)))
            } else {
                (None, None)
            };
            vec![
                format_g(r.eta_end),
                format_g(r.phase),
                field(cf),
                field(delta),
                phases_agree(r, &b[2 * k]).to_string(),
            ]
        })
        .collect())
}

pub fn geomphase_table(spec: &SweepSpec, closed_form: bool) -> Result<Table> {
    let mut t = Table::new(&PHASE_HEADER);
    for row in geomphase_rows(&spec.params_base, spec.eta_max, spec.n_points, closed_form)? {
        t.push(row);
    }
    Ok(t)
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| {
            if k + 1 == n {
                hi
            } else {
                lo + (hi - lo) * k as f64 / (n - 1) as f64
            }
        })
        .collect()
}

/// Rows of a concurrence sweep at fixed `(p, η)`: the rate and speed use
/// their concurrence forms, the rest depend on `C` alone.
fn concurrence_sweep(p: &ModelParams, eta: f64, n: usize) -> Result<Table> {
    let mut t = Table::new(&SCAN_HEADER);
    for c in linspace(0.0, 1.0, n) {
        let values = [
            Some(c),
            Some(hs_rate_from_concurrence(p, c, eta)),
            Some(hs_speed_from_concurrence(p, c, eta)),
            Some(fidelity_of_separability(c)?),
            Some(bures_distance_normalized(c)?),
            Some(bures_speed(c)?),
            None,
        ];
        t.push(scan_row(p, eta, values));
    }
    Ok(t)
}

/// Rows of a noise sweep at fixed `(J, η)` using the evolved state.
fn alpha_sweep(base: &ModelParams, eta: f64, alphas: &[f64]) -> Result<Table> {
    let mut t = Table::new(&SCAN_HEADER);
    let rows: Vec<Vec<String>> = alphas
        .par_iter()
        .map(|&a| {
            let p = base.with_alpha(a);
            let d = crate::dynamics::evolved_state_closed_form(&p, eta);
            let g = geometry_sample(&p, eta, &d)?;
            Ok(scan_row(
                &p,
                eta,
                [
                    Some(g.concurrence),
                    Some(g.hs_rate),
                    Some(g.hs_speed),
                    Some(g.fidelity_sep),
                    Some(g.bures_distance),
                    Some(g.bures_speed),
                    None,
                ],
            ))
        })
        .collect::<Result<_>>()?;
    rows.into_iter().for_each(|r| t.push(r));
    Ok(t)
}

fn eta_scan(j: f64, alphas: &[f64]) -> Result<Table> {
    let spec = SweepSpec {
        params_base: ModelParams::new(j, 1.0, 0.5, alphas[0])?,
        alphas: alphas.to_vec(),
        eta_max: 2.0 * PI,
        n_points: super::config::DEFAULT_SCAN_POINTS,
        quantities: Quantity::default_set(),
        method: crate::dynamics::Method::Analytic,
        seed: 0,
    };
    scan_table(&spec)
}

/// All figure panels as `(file name, table)`, in a fixed order.
pub fn figure_tables() -> Result<Vec<(&'static str, Table)>> {
    let at = |j: f64, a: f64| ModelParams::new(j, 1.0, 0.5, a);
    let noise_axis = linspace(0.0, 1.0, 1001);

    let mut fig9 = Table::new(&[
        "eta",
        "alpha",
        "Phi_g_tong",
        "Phi_g_closed_form",
        "delta",
        "converged",
    ]);
    let phase_rows: Vec<(f64, Vec<Vec<String>>)> = [0.0, 0.01, 0.06, 0.1]
        .par_iter()
        .map(|&a| {
            Ok((
                a,
                geomphase_rows(&at(0.09, a)?, 2.0 * PI, DEFAULT_PHASE_POINTS, true)?,
            ))
        })
        .collect::<Result<_>>()?;
    for (a, rows) in phase_rows {
        for mut r in rows {
            r.insert(1, format_g(a));
            fig9.push(r);
        }
    }

    Ok(vec![
        ("fig3.csv", eta_scan(0.3, &[0.0, 0.01, 0.03, 0.06, 0.1])?),
        (
            "fig4a.csv",
            concurrence_sweep(&at(0.3, 0.08)?, FRAC_PI_6, 1001)?,
        ),
        ("fig4b.csv", alpha_sweep(&at(0.3, 0.0)?, 1.5, &noise_axis)?),
        ("fig6a.csv", concurrence_sweep(&at(0.8, 0.0)?, 1.0, 1001)?),
        ("fig6b.csv", alpha_sweep(&at(0.8, 0.0)?, 1.0, &noise_axis)?),
        ("fig7a.csv", concurrence_sweep(&at(0.8, 0.0)?, 16.0, 1001)?),
        ("fig7b.csv", alpha_sweep(&at(0.8, 0.0)?, 16.0, &noise_axis)?),
        ("fig8a.csv", eta_scan(0.5, &[0.01, 0.05, 0.1])?),
        ("fig8b.csv", eta_scan(0.5, &[0.01, 0.05, 0.1])?),
        (
            "fig8-speeds.csv",
            concurrence_sweep(&at(0.65, 0.2)?, FRAC_PI_4, 1001)?,
        ),
        ("fig9.csv", fig9),
    ])
}

pub fn write_output(path: Option<&Path>, text: &str) -> std::result::Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            use std::io::Write;
            match std::io::stdout().write_all(text.as_bytes()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(CliError::Io(format!("cannot write to stdout: {e}")))
                }
                _ => Ok(()),
            }
        }
    }
}

pub fn write_figures(dir: &Path) -> std::result::Result<Vec<String>, CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
    let tables = figure_tables()?;
    let mut names = Vec::new();
    for (name, t) in tables {
        write_output(Some(&dir.join(name)), &t.render())?;
        names.push(name.to_string());
    }
    Ok(names)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::config::Overrides;

    fn spec(o: Overrides, n: usize) -> SweepSpec {
        SweepSpec::resolve(o, n).unwrap()
    }

    #[test]
    fn spectrum_lines() {
        let s = spectrum_report(0.3, 1.0, 0.5).unwrap();
        let energies: Vec<&str> = s
            .lines()
            .skip(1)
            .map(|l| l.split('\t').next().unwrap())
            .collect();
        assert_eq!(energies, vec!["2", "-0.4", "-1.6", "0"]);
        let zero = spectrum_report(0.0, 0.0, 0.0).unwrap();
        assert!(zero.lines().skip(1).all(|l| l.starts_with("0\t")));
    }

    #[test]
    fn two_point_scan_has_two_rows_per_alpha() {
        let o = Overrides {
            alphas: Some(vec![0.0, 0.1]),
            n_points: Some(2),
            quantities: Some(Quantity::ALL.to_vec()),
            ..Default::default()
        };
        let t = scan_table(&spec(o, 2)).unwrap();
        assert_eq!(t.rows.len(), 4);
        assert_eq!(t.header.join(","), SCAN_HEADER.join(","));
    }

    #[test]
    fn absent_quantities_are_empty() {
        let o = Overrides {
            quantities: Some(vec![Quantity::C]),
            n_points: Some(5),
            ..Default::default()
        };
        let t = scan_table(&spec(o, 5)).unwrap();
        for r in &t.rows {
            assert!(!r[5].is_empty());
            assert!(r[6..].iter().all(String::is_empty));
        }
    }

    #[test]
    fn evolve_rows_are_unit_trace() {
        let o = Overrides {
            n_points: Some(7),
            ..Default::default()
        };
        let t = evolve_table(&spec(o, 7)).unwrap();
        assert_eq!(t.header.len(), 35);
        for r in &t.rows {
            let tr: f64 = [3, 13, 23, 33]
                .iter()
                .map(|&c| r[c].parse::<f64>().unwrap())
                .sum();
            assert!((tr - 1.0).abs() < 1e-11);
        }
    }

    #[test]
    fn phase_rows_without_closed_form() {
        let p = ModelParams::new(0.3, 1.0, 0.5, 0.0).unwrap();
        let rows = geomphase_rows(&p, 3.0, 301, false).unwrap();
        assert_eq!(rows.len(), 301);
        assert!(rows.iter().all(|r| r[2].is_empty() && r[3].is_empty()));
        assert!(rows.iter().all(|r| r[4] == "true"));
    }

    #[test]
    fn brachistochrone_text() {
        let p = ModelParams::new(0.65, 1.0, 0.5, 0.2).unwrap();
        let s = brachistochrone_report(&p).unwrap();
        assert!(s.contains("t_min            1.923077"));
        assert!(brachistochrone_report(&p.with_alpha(0.0)).is_err());
    }
}
