use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn isochart(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isochart"))
        .current_dir(dir)
        .env_remove("ISOCHART_DATA_DIR")
        .args(args)
        .output()
        .expect("spawn isochart")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn ext_origin_is_one_row() {
    let dir = tempfile::tempdir().unwrap();
    let o = isochart(dir.path(), &["ext", "0", "0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "s\tt\tdim\tlabels\n0\t0\t1\tx0_0_0\n");
}

#[test]
fn oracle_flag_reports_agreement() {
    let dir = tempfile::tempdir().unwrap();
    let o = isochart(dir.path(), &["ext", "4", "10", "--oracle"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("PASS\tresolution agrees with cobar complex"));
}

#[test]
fn budget_interrupt_then_resume_matches_clean_run() {
    let dir = tempfile::tempdir().unwrap();
    let full = isochart(dir.path(), &["--checkpoint-dir", "clean", "ext", "8", "24"]);
    assert!(full.status.success());

    let part = isochart(dir.path(), &["ext", "8", "24", "--budget", "20"]);
    assert_eq!(part.status.code(), Some(3));
    assert!(stdout(&part).starts_with("# frontier\t"));
    assert!(stderr(&part).contains("budget exceeded"));

    let resumed = isochart(dir.path(), &["ext", "8", "24", "--resume"]);
    assert!(resumed.status.success());
    assert_eq!(stdout(&resumed), stdout(&full));
    assert_eq!(
        fs::read(dir.path().join(".isochart/resolution.ckpt")).unwrap(),
        fs::read(dir.path().join("clean/resolution.ckpt")).unwrap()
    );
}

#[test]
fn crho_svg_is_well_formed() {
    let dir = tempfile::tempdir().unwrap();
    let o = isochart(dir.path(), &["crho", "6", "16", "--svg", "-o", "c.svg"]);
    assert!(o.status.success());
    let text = fs::read_to_string(dir.path().join("c.svg")).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    assert_eq!(doc.root_element().tag_name().name(), "svg");
    let titles: Vec<&str> = doc
        .descendants()
        .filter(|n| n.has_tag_name("title"))
        .filter_map(|n| n.text())
        .collect();
    assert!(titles.contains(&"x0_0_0 (0,0)"));
    assert!(titles.contains(&"h1 (3,2)"));
}

#[test]
fn json_format_lists_rows() {
    let dir = tempfile::tempdir().unwrap();
    let o = isochart(dir.path(), &["--format", "json", "ext", "1", "2"]);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 3);
    assert_eq!(rows[2]["labels"][0], "h1");
}

#[test]
fn assemble_bundled_and_empty() {
    let dir = tempfile::tempdir().unwrap();
    let o = isochart(dir.path(), &["assemble", "bundled", "20"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let towers = stdout(&o);
    assert!(towers.starts_with("p\tq\tlength\tlabel\n"));
    // d2(h4) = h0 h3^2 leaves a single rho-torsion class on the target
    assert!(towers.lines().any(|l| l.ends_with("\t1\tx3_17_0")));

    fs::write(dir.path().join("none.txt"), "# nothing\n").unwrap();
    let o = isochart(dir.path(), &["assemble", "none.txt", "8"]);
    assert!(o.status.success());
    assert!(!stdout(&o).lines().skip(1).any(|l| !l.contains("\tinf\t")));
}

#[test]
fn malformed_differentials_exit_2_with_line() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("dup.txt"), "2 h4 x3_17_0\n\n2 h4 x3_17_0\n").unwrap();
    let o = isochart(dir.path(), &["assemble", "dup.txt", "20"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    fs::write(dir.path().join("off.txt"), "2 h4 x4_17_0\n").unwrap();
    let o = isochart(dir.path(), &["assemble", "off.txt", "20"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn data_dir_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty");
    fs::create_dir(&empty).unwrap();
    // a data dir without the table is an input error
    let o = isochart(dir.path(), &["--data-dir", "empty", "verify", "fibers"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("adams_differentials.txt"));

    // env var beats the config file, the flag beats both
    fs::write(dir.path().join("cfg"), "data_dir = nowhere\nmax_s = 6\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_isochart"))
        .current_dir(dir.path())
        .env("ISOCHART_DATA_DIR", "empty")
        .args(["--config", "cfg", "verify", "fibers"])
        .output()
        .unwrap();
    assert!(stderr(&o).contains("empty"), "{}", stderr(&o));

    let data = dir.path().join("data");
    fs::create_dir(&data).unwrap();
    fs::write(data.join("adams_differentials.txt"), isochart::data::ADAMS_DIFFERENTIALS).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_isochart"))
        .current_dir(dir.path())
        .env("ISOCHART_DATA_DIR", "empty")
        .args(["--config", "cfg", "--data-dir", "data", "verify", "fibers"])
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn bad_config_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("cfg"), "max_s = 3\nworkers = zero\n").unwrap();
    let o = isochart(dir.path(), &["--config", "cfg", "ext"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}

#[test]
fn verify_suites_pass() {
    let dir = tempfile::tempdir().unwrap();
    for suite in [
        &["verify", "presentations", "--window", "12", "--samples", "200"][..],
        &["verify", "smash", "--n", "3"],
        &["verify", "bpbp", "--dump", "bp.json"],
        &["verify", "fibers", "--max-stem", "12"],
    ] {
        let o = isochart(dir.path(), suite);
        assert!(o.status.success(), "{suite:?}: {}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
    let dump: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("bp.json")).unwrap()).unwrap();
    assert_eq!(dump["coproduct"]["t1"], "t1' + t1''");
}
