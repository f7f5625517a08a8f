use std::f64::consts::FRAC_PI_4;
use std::path::Path;
use std::process::{Command, Output};

use nonrecip_core::plate::toy_force_shape;
use serde_json::{json, Value};
use tempfile::TempDir;

fn insb(omega_b_per_tesla: f64, field: f64) -> Value {
    json!({"type": "drude_magneto", "eps_inf": 15.7, "omega_p": 7.4e14, "omega_tau": 6.3e12,
           "omega_B_per_T": omega_b_per_tesla, "B": field})
}

fn crystal() -> Value {
    json!({"type": "uniaxial_lorentz",
           "ordinary": {"C1": 2.0, "omega1": 1e14, "gamma1": 2e12},
           "extraordinary": {"C1": 3.5, "omega1": 1.2e14, "gamma1": 2e12}})
}

fn two_particle(m1: Value, m2: Value, position: Value) -> Value {
    json!({
        "particle1": {"material": m1, "R": 1e-8, "T": 300.0},
        "particle2": {"material": m2, "R": 1e-8, "T": 300.0, "position": position}
    })
}

fn persistent_scene(field: f64) -> Value {
    two_particle(
        insb(2.2e12, field),
        crystal(),
        json!({"r": 1e-7, "phi": 0.3, "x": 5e-8}),
    )
}

fn plate_scene() -> Value {
    json!({
        "plate": {"type": "lorentz", "C1": 2.0, "omega1": 1.15e14, "gamma1": 7e10},
        "particle": {"material": insb(2.2e12, 10.0), "R": 1e-8},
        "d": 1e-7, "T1": 300.0, "T2": 10.0, "Tenv": 0.0
    })
}

struct Run {
    output: Output,
    data: Vec<u8>,
}

impl Run {
    fn code(&self) -> i32 {
        self.output.status.code().expect("exit code")
    }

    fn stderr(&self) -> String {
        String::from_utf8_lossy(&self.output.stderr).into_owned()
    }

    fn json(&self) -> Value {
        serde_json::from_slice(&self.data).expect("JSON dataset")
    }

    /// Column `name` of a JSON dataset as floats.
    fn column(&self, name: &str) -> Vec<f64> {
        let v = self.json();
        let i = v["columns"]
            .as_array()
            .unwrap()
            .iter()
            .position(|c| c == name)
            .unwrap_or_else(|| panic!("no column {name}"));
        v["rows"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r[i].as_f64().unwrap())
            .collect()
    }
}

fn run(dir: &Path, command: &str, config: &Value, extra: &[&str]) -> Run {
    let config_path = dir.join(format!("{command}.json"));
    let out_path = dir.join(format!("{command}.out"));
    std::fs::write(&config_path, serde_json::to_vec(config).unwrap()).unwrap();
    let output = Command::new(env!("CARGO_BIN_EXE_nonrecip"))
        .arg(command)
        .arg("--config")
        .arg(&config_path)
        .arg("--out")
        .arg(&out_path)
        .args(extra)
        .output()
        .expect("spawn nonrecip");
    let data = std::fs::read(&out_path).unwrap_or_default();
    Run { output, data }
}

#[test]
fn unknown_field_is_a_config_error_with_its_path() {
    let dir = TempDir::new().unwrap();
    let config = json!({"scene": persistent_scene(1.0), "swapp": true});
    let r = run(dir.path(), "persistent", &config, &[]);
    assert_eq!(r.code(), 2, "{}", r.stderr());
    assert!(r.stderr().contains("swapp"), "{}", r.stderr());
}

#[test]
fn non_physical_sweep_value_is_a_config_error() {
    let dir = TempDir::new().unwrap();
    let config = json!({"scene": persistent_scene(1.0), "sweep": {"variable": "d", "values": [1e-7, -1e-7]}});
    let r = run(dir.path(), "persistent", &config, &[]);
    assert_eq!(r.code(), 2);
    assert!(r.stderr().contains("sweep.values[1]"), "{}", r.stderr());
}

#[test]
fn invalid_scene_is_a_config_error() {
    let dir = TempDir::new().unwrap();
    let mut scene = persistent_scene(1.0);
    scene["particle2"]["position"] = json!({"r": 0.0, "phi": 0.0, "x": 1e-8});
    let r = run(dir.path(), "emission", &json!({"scene": scene}), &[]);
    assert_eq!(r.code(), 2, "{}", r.stderr());
}

#[test]
fn missing_config_file_is_a_config_error() {
    let output = Command::new(env!("CARGO_BIN_EXE_nonrecip"))
        .args(["selftest", "--config", "/nonexistent/run.json"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn phi_sweep_over_a_plate_is_rejected() {
    let dir = TempDir::new().unwrap();
    let config = json!({"scene": plate_scene(), "sweep": {"variable": "phi", "values": [0.0]}});
    let r = run(dir.path(), "force", &config, &[]);
    assert_eq!(r.code(), 2);
}

#[test]
fn unconverged_quadrature_exits_with_three() {
    let dir = TempDir::new().unwrap();
    let config = json!({
        "scene": persistent_scene(5.0),
        "quadrature": {"rel_tol": 1e-15, "max_subdivisions": 1}
    });
    let r = run(dir.path(), "emission", &config, &[]);
    assert_eq!(r.code(), 3, "{}", r.stderr());
}

#[test]
fn output_is_bitwise_identical_across_job_counts() {
    let dir = TempDir::new().unwrap();
    let config = json!({
        "scene": two_particle(insb(2.2e13, 10.0), insb(2.2e13, 10.0), json!({"r": 0.0, "phi": 0.0, "x": 1e-7})),
        "sweep": {"variable": "d", "values": {"from": 5e-8, "to": 5e-5, "points": 6, "scale": "log"}}
    });
    let one = run(dir.path(), "emission", &config, &["--jobs", "1"]).data;
    let four = run(dir.path(), "emission", &config, &["--jobs", "4"]).data;
    let again = run(dir.path(), "emission", &config, &["--jobs", "4"]).data;
    assert!(!one.is_empty());
    assert_eq!(one, four);
    assert_eq!(four, again);
}

#[test]
fn json_and_csv_carry_the_same_numbers() {
    let dir = TempDir::new().unwrap();
    let config = json!({"scene": persistent_scene(5.0),
                        "sweep": {"variable": "phi", "values": {"from": 0.0, "to": 3.0, "points": 4}}});
    let csv = run(dir.path(), "persistent", &config, &["--format", "csv"]);
    let js = run(dir.path(), "persistent", &config, &["--format", "json"]).json();
    let text = String::from_utf8(csv.data).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let columns: Vec<&str> = js["columns"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap())
        .collect();
    assert_eq!(header, columns);
    for (line, row) in lines.zip(js["rows"].as_array().unwrap()) {
        for (cell, value) in line.split(',').zip(row.as_array().unwrap()) {
            assert_eq!(cell.parse::<f64>().unwrap(), value.as_f64().unwrap());
        }
    }
}

#[test]
fn output_format_falls_back_to_the_config_block() {
    let dir = TempDir::new().unwrap();
    let config = json!({"mode": "toy", "x": [1.0], "output": {"format": "json"}});
    let r = run(dir.path(), "force", &config, &[]);
    assert_eq!(r.json()["columns"][0], "x [1]");
}

#[test]
fn swapping_the_particles_negates_the_persistent_current() {
    let dir = TempDir::new().unwrap();
    let mut config = json!({"scene": persistent_scene(5.0),
                            "sweep": {"variable": "phi", "values": [0.0, 0.3, 1.0, 2.0]}});
    let forward = run(dir.path(), "persistent", &config, &["--format", "json"]);
    config["swap"] = json!(true);
    let backward = run(dir.path(), "persistent", &config, &["--format", "json"]);
    for (f, b) in forward
        .column("H_1to2_general [W]")
        .iter()
        .zip(backward.column("H_1to2_general [W]"))
    {
        assert!((f + b).abs() <= 1e-10 * f.abs(), "{f} vs {b}");
    }
}

#[test]
fn phi_sweep_vanishes_at_odd_quarter_turns() {
    let dir = TempDir::new().unwrap();
    let phis: Vec<f64> = (0..8).map(|k| k as f64 * FRAC_PI_4).collect();
    let config = json!({"scene": persistent_scene(5.0), "sweep": {"variable": "phi", "values": phis}});
    let r = run(dir.path(), "persistent", &config, &["--format", "json"]);
    let h = r.column("H_1to2_general [W]");
    let peak = h.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    for (k, v) in h.iter().enumerate() {
        let expected = h[0] * (2.0 * k as f64 * FRAC_PI_4).cos();
        assert!((v - expected).abs() <= 1e-9 * peak, "phi = {k}·π/4: {v} vs {expected}");
        if k % 2 == 1 {
            assert!(v.abs() <= 1e-12 * peak);
        }
    }
    for gap in r.column("relative_gap [1]") {
        assert!(gap <= 1e-6);
    }
}

#[test]
fn small_field_sweep_is_linear() {
    let dir = TempDir::new().unwrap();
    let config = json!({"scene": persistent_scene(0.0),
                        "sweep": {"variable": "B", "values": {"from": -0.05, "to": 0.05, "points": 11}}});
    let r = run(dir.path(), "persistent", &config, &["--format", "json"]);
    let b = r.column("B [T]");
    let h = r.column("H_1to2_general [W]");
    let n = b.len() as f64;
    let (mb, mh) = (b.iter().sum::<f64>() / n, h.iter().sum::<f64>() / n);
    let sxy: f64 = b.iter().zip(&h).map(|(x, y)| (x - mb) * (y - mh)).sum();
    let sxx: f64 = b.iter().map(|x| (x - mb).powi(2)).sum();
    let syy: f64 = h.iter().map(|y| (y - mh).powi(2)).sum();
    let r_squared = sxy * sxy / (sxx * syy);
    assert!(r_squared > 0.9999, "R² = {r_squared}");
    assert!(sxy != 0.0);
}

#[test]
fn toy_table_peaks_near_one_and_a_quarter() {
    let dir = TempDir::new().unwrap();
    let config = json!({"mode": "toy", "x": {"from": 0.01, "to": 20.0, "points": 2000},
                        "toy": {"alpha0": 1e-30, "omega0": 1e14, "T": 300.0}});
    let r = run(dir.path(), "force", &config, &["--format", "json"]);
    let x = r.column("x [1]");
    let f = r.column("f(x) [1]");
    let i = (0..f.len()).max_by(|&a, &b| f[a].abs().total_cmp(&f[b].abs())).unwrap();
    assert!((x[i] - 1.25).abs() < 0.05, "argmax at {}", x[i]);
    for (xi, fi) in x.iter().zip(&f) {
        assert_eq!(*fi, toy_force_shape(*xi));
    }
    let d = r.column("d [m]");
    assert!((d[0] - 0.01 * 299_792_458.0 / 1e14).abs() < 1e-20);
    assert_eq!(r.column("F_toy [N]").len(), x.len());
}

#[test]
fn plate_force_sweep_reports_weight_ratio() {
    let dir = TempDir::new().unwrap();
    let config = json!({"scene": plate_scene(), "sweep": {"variable": "B", "values": [-10.0, 10.0]}});
    let r = run(dir.path(), "force", &config, &["--format", "json"]);
    assert_eq!(r.code(), 0, "{}", r.stderr());
    let total = r.column("F_total [N]");
    let ratio = r.column("F_total/F_g [1]");
    let near = r.column("F_nearfield_closed [N]");
    assert!((total[0] + total[1]).abs() <= 1e-9 * total[1].abs());
    assert!(ratio[1].abs() > 1.0);
    assert!((total[1] - near[1]).abs() < 0.15 * near[1].abs());
}

#[test]
fn perfect_conductor_leaves_the_near_field_column_empty() {
    let dir = TempDir::new().unwrap();
    let mut scene = plate_scene();
    scene["plate"] = json!({"type": "perfect_conductor"});
    let r = run(dir.path(), "force", &json!({"scene": scene}), &[]);
    assert_eq!(r.code(), 0, "{}", r.stderr());
    let text = String::from_utf8(r.data).unwrap();
    let row = text.lines().nth(1).unwrap();
    assert!(row.ends_with(','), "{row}");
}

#[test]
fn bound_holds_for_the_near_field_scene() {
    let dir = TempDir::new().unwrap();
    let mut scene = plate_scene();
    scene["d"] = json!(1e-8);
    scene["particle"]["R"] = json!(1e-9);
    let r = run(dir.path(), "bound", &json!({"scene": scene}), &["--format", "json"]);
    assert_eq!(r.code(), 0, "{}", r.stderr());
    let rows = r.json()["rows"].as_array().unwrap().clone();
    assert!(rows.iter().any(|row| row[0] == "self_force"));
    assert!(rows.iter().any(|row| row[0] == "interaction"));
    assert!(rows.iter().all(|row| row[5] == false));
}

#[test]
fn selftest_passes_and_lists_every_check() {
    let dir = TempDir::new().unwrap();
    let r = run(
        dir.path(),
        "selftest",
        &json!({"options": {"seed": 7}}),
        &["--format", "json"],
    );
    assert_eq!(r.code(), 0, "{}", r.stderr());
    let rows = r.json()["rows"].as_array().unwrap().clone();
    assert_eq!(rows.len(), 12);
    assert!(rows.iter().all(|row| row[1] == "pass"));
    assert!(r.stderr().contains("PASS"));
}

#[test]
fn emission_b0_curve_converges_to_isolation() {
    let dir = TempDir::new().unwrap();
    let config = json!({
        "scene": two_particle(insb(2.2e13, 10.0), insb(2.2e13, 10.0), json!({"r": 0.0, "phi": 0.0, "x": 5e-5})),
        "curves": ["b0"]
    });
    let r = run(dir.path(), "emission", &config, &["--format", "json"]);
    let normalized = r.column("H_normalized [1]");
    assert!((normalized[0] - 1.0).abs() < 0.02, "{normalized:?}");
}
