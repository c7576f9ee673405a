use std::path::Path;
use std::process::{Command, Output};

use xxzgeom::cli::csv::Table;

fn xxzgeom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xxzgeom"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn table(o: &Output) -> Table {
    Table::parse(&stdout(o)).unwrap()
}

fn num(t: &Table, row: usize, col: &str) -> f64 {
    t.rows[row][t.column(col).unwrap()].parse().unwrap()
}

#[test]
fn spectrum_lists_four_levels() {
    let o = xxzgeom(&["spectrum", "--J", "0.5", "--gamma", "1", "--B", "0.2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let energies: Vec<f64> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split('\t').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(energies, vec![1.4, 0.0, -2.0, 0.6]);
}

#[test]
fn missing_required_parameter_is_usage_error() {
    let o = xxzgeom(&["spectrum", "--gamma", "1", "--B", "0.2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_subcommand_is_usage_error() {
    assert_eq!(xxzgeom(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn scan_with_two_points_gives_endpoints() {
    let o = xxzgeom(&["scan", "--J", "0.3", "--alpha", "0.1", "--steps", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let t = table(&o);
    assert_eq!(
        t.header.join(","),
        "eta,alpha,J,gamma,B,C,L_HS,V_HS,F_sep,L_B,V_B,Phi_g"
    );
    assert_eq!(t.rows.len(), 2);
    assert_eq!(num(&t, 0, "eta"), 0.0);
    assert!((num(&t, 1, "eta") - 2.0 * std::f64::consts::PI).abs() < 1e-10);
    assert_eq!(num(&t, 0, "F_sep"), 1.0);
    assert!(t.rows[0][t.column("Phi_g").unwrap()].is_empty());
}

#[test]
fn scan_alphas_stack_in_order() {
    let o = xxzgeom(&[
        "scan",
        "--J",
        "0.3",
        "--alphas",
        "0.01,0.1",
        "--steps",
        "41",
        "--quantities",
        "C,Phi",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let t = table(&o);
    assert_eq!(t.rows.len(), 82);
    assert_eq!(num(&t, 0, "alpha"), 0.01);
    assert_eq!(num(&t, 81, "alpha"), 0.1);
    assert!(t.rows[0][t.column("L_HS").unwrap()].is_empty());
    assert!(!t.rows[3][t.column("Phi_g").unwrap()].is_empty());
}

#[test]
fn phase_on_too_coarse_grid_is_domain_error() {
    let o = xxzgeom(&[
        "scan",
        "--J",
        "0.3",
        "--alpha",
        "0.1",
        "--steps",
        "5",
        "--quantities",
        "Phi",
    ]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("grid too coarse"));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# sweep\nJ = 0.5\nalpha = 0.2\nn_points = 3\n").unwrap();
    let o = xxzgeom(&["scan", "--config", cfg.to_str().unwrap(), "--alpha", "0.05"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let t = table(&o);
    assert_eq!(t.rows.len(), 3);
    assert_eq!(num(&t, 0, "J"), 0.5);
    assert_eq!(num(&t, 0, "alpha"), 0.05);
}

#[test]
fn config_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let unknown = dir.path().join("a.cfg");
    std::fs::write(&unknown, "J = 0.3\n\nwobble = 1\n").unwrap();
    let o = xxzgeom(&["scan", "--config", unknown.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let bad = dir.path().join("b.cfg");
    std::fs::write(&bad, "J = 0.3x\n").unwrap();
    let o = xxzgeom(&["scan", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1"), "{}", stderr(&o));
}

#[test]
fn missing_config_file_is_io_error() {
    let o = xxzgeom(&["scan", "--config", "/nonexistent/run.cfg"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn unwritable_output_is_io_error() {
    let o = xxzgeom(&[
        "scan",
        "--J",
        "0.3",
        "--steps",
        "3",
        "--out",
        "/nonexistent/dir/out.csv",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn out_flag_writes_the_same_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let args = ["scan", "--J", "0.3", "--alpha", "0.1", "--steps", "7"];
    let direct = stdout(&xxzgeom(&args));
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    assert_eq!(xxzgeom(&with_out).status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), direct);
}

#[test]
fn brachistochrone_requires_noise() {
    let o = xxzgeom(&["brachistochrone", "--J", "0.65", "--alpha", "0"]);
    assert_eq!(o.status.code(), Some(4));
    let o = xxzgeom(&["brachistochrone", "--J", "0.65", "--alpha", "0.2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1.923077"));
}

#[test]
fn negative_alpha_is_rejected() {
    let o = xxzgeom(&["scan", "--J", "0.3", "--alpha", "-0.1"]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn evolve_rows_are_unit_trace() {
    let o = xxzgeom(&[
        "evolve", "--J", "0.3", "--alpha", "0.1", "--steps", "11", "--method", "rk4",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let t = table(&o);
    assert_eq!(t.header.len(), 35);
    assert_eq!(t.rows.len(), 11);
    for r in 0..t.rows.len() {
        let tr: f64 = (0..4).map(|i| num(&t, r, &format!("d{i}{i}_re"))).sum();
        assert!((tr - 1.0).abs() < 1e-10);
    }
}

#[test]
fn geomphase_closed_form_column_on_request() {
    let base = [
        "geomphase",
        "--J",
        "0.3",
        "--alpha",
        "0.1",
        "--steps",
        "101",
        "--eta-max",
        "2",
    ];
    let t = table(&xxzgeom(&base));
    assert_eq!(
        t.header.join(","),
        "eta,Phi_g_tong,Phi_g_closed_form,delta,converged"
    );
    assert_eq!(t.rows.len(), 101);
    assert!(t.rows[50][2].is_empty());

    let mut with = base.to_vec();
    with.push("--closed-form");
    let t = table(&xxzgeom(&with));
    assert!(!t.rows[50][2].is_empty());
    assert!(!t.rows[50][3].is_empty());
}

#[test]
fn geomphase_rejects_several_alphas() {
    let o = xxzgeom(&["geomphase", "--J", "0.3", "--alphas", "0.1,0.2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tolerance_flag_only_for_verify() {
    let o = xxzgeom(&["scan", "--J", "0.3", "--tol-route-rk4", "1e-6"]);
    assert_eq!(o.status.code(), Some(2));
    let o = xxzgeom(&["verify", "--tol-no-such-check", "1e-6"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn figures_write_parseable_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("figs");
    let o = xxzgeom(&["figures", "--out-dir", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for name in ["fig3.csv", "fig4a.csv", "fig9.csv", "fig8-speeds.csv"] {
        let text = std::fs::read_to_string(Path::new(&out).join(name)).unwrap();
        let t = Table::parse(&text).unwrap();
        assert!(!t.rows.is_empty(), "{name}");
        assert!(t.rows.iter().all(|r| r.len() == t.header.len()), "{name}");
    }
    let fig9 = Table::parse(&std::fs::read_to_string(out.join("fig9.csv")).unwrap()).unwrap();
    let conv = fig9.column("converged").unwrap();
    assert!(fig9.rows.iter().all(|r| r[conv] == "true"));
}

#[test]
fn scan_is_deterministic_across_thread_counts() {
    let args = [
        "scan",
        "--J",
        "0.3",
        "--alphas",
        "0,0.05,0.1",
        "--steps",
        "51",
        "--quantities",
        "C,Phi,Lb",
    ];
    let one = Command::new(env!("CARGO_BIN_EXE_xxzgeom"))
        .args(args)
        .env("XXZGEOM_THREADS", "1")
        .output()
        .unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_xxzgeom"))
        .args(args)
        .env("XXZGEOM_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
}
