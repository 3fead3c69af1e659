use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn mixbgk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mixbgk")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn small_run(scenario: &str, out: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["run", scenario, "--out", out.to_str().unwrap(), "--threads", "1"];
    args.extend_from_slice(extra);
    mixbgk(&args)
}

#[test]
fn lists_the_builtin_scenarios() {
    let o = mixbgk(&["list-scenarios"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for name in ["discrepancy-4gas", "ns-global-4gas", "ns-multi-4gas", "he-ar-shock", "ne-ar-stationary-shock"] {
        assert!(text.contains(name), "{name} missing");
    }
}

#[test]
fn unknown_scenario_fails_before_running() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = small_run("no-such-scenario", &out, &[]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("no-such-scenario"));
    assert!(!out.exists());
}

#[test]
fn bad_override_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let o = small_run("discrepancy-4gas", dir.path(), &["--eps", "-1"]);
    assert!(!o.status.success());
}

#[test]
fn validate_echoes_a_loadable_config() {
    let o = mixbgk(&["validate", "ne-ar-stationary-shock"]);
    assert!(o.status.success());
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("copy.toml");
    fs::write(&p, stdout(&o)).unwrap();
    let again = mixbgk(&["validate", p.to_str().unwrap()]);
    assert!(again.status.success());
    assert_eq!(stdout(&again), stdout(&o));
}

#[test]
fn discrepancy_run_writes_scaling_tables_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let o = small_run("discrepancy-4gas", dir.path(), &["--eps", "1e-2,1e-3", "--nx", "20", "--nv", "24", "--t-end", "0.008"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("slope"));
    let scaling = fs::read_to_string(dir.path().join("scaling_aap-bbgsp.csv")).unwrap();
    let mut lines = scaling.lines();
    assert_eq!(lines.next().unwrap(), "eps,t,distance_species_1,distance_species_2,distance_species_3,distance_species_4");
    // two ε values, snapshots at 0, 0.004 and 0.008
    assert_eq!(lines.count(), 6);
    let manifest = fs::read_to_string(dir.path().join("manifest.json")).unwrap();
    for key in ["\"scenario\"", "\"config-echo\"", "\"solver\"", "\"conservation-ledger\"", "\"wall-time\""] {
        assert!(manifest.contains(key), "{key} missing");
    }
}

#[test]
fn single_threaded_runs_are_bitwise_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["--eps", "1e-2", "--nx", "24", "--t-end", "0.01", "--fluid-nx", "24"];
    assert!(small_run("ns-multi-4gas", a.path(), &args).status.success());
    assert!(small_run("ns-multi-4gas", b.path(), &args).status.success());
    let mut names: Vec<_> = fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    let mut checked = 0;
    for n in names.iter().filter(|n| n.to_string_lossy().ends_with(".csv")) {
        assert_eq!(fs::read(a.path().join(n)).unwrap(), fs::read(b.path().join(n)).unwrap(), "{n:?}");
        checked += 1;
    }
    assert!(checked > 10);

    let f = names.iter().find(|n| n.to_string_lossy().ends_with("_rho_mix.csv")).unwrap();
    let p = a.path().join(f);
    let o = mixbgk(&["compare", p.to_str().unwrap(), p.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim().parse::<f64>().unwrap(), 0.0);
}
