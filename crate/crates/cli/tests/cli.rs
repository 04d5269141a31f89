use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_listnerve")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rows<'a>(text: &'a str, table: &str) -> Vec<Vec<&'a str>> {
    let prefix = format!("row\t{table}\t");
    text.lines().filter_map(|l| l.strip_prefix(prefix.as_str())).map(|l| l.split('\t').collect()).collect()
}

#[test]
fn factor_emits_the_five_element_middle() {
    let o = run(&["factor", "--input", &data("intro_listing.json"), "--format", "machine"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("#listnerve-report\t1\ncommand\tfactor\n"));
    assert!(text.contains("param\tmiddle\t5\n"));
    assert_eq!(rows(&text, "middle").len(), 5);
    assert!(text.ends_with("verdict\tpass\n"));
}

#[test]
fn homology_of_the_two_level_nerve() {
    let o = run(&["homology", "--input", &data("two_level.json"), "--D", "4", "--format", "machine"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let h = rows(&text, "homology");
    assert_eq!(h[0], ["0", "2", "-", "Z^2"]);
    assert!(h[1..].iter().all(|r| r[1] == "0" && r[2] == "-"));
    assert!(text.contains("param\tD\t4\n") && text.contains("param\tB\t2\n"));
    let rel = stdout(&run(&["homology", "--input", &data("two_level.json"), "--relative-representable", "--format", "machine"]));
    assert!(rows(&rel, "homology").iter().all(|r| r[3] == "0"));
}

#[test]
fn check_quasi_reports_unique_fillers() {
    let o = run(&["check-quasi", "--input", &data("two_level.json")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("all inner horns uniquely filled"));
}

#[test]
fn nerve_output_feeds_realize_and_homology() {
    let dir = std::env::temp_dir().join(format!("listnerve-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let slist = dir.join("nerve.json");
    let operad = dir.join("operad.json");
    assert!(run(&["nerve", "--input", &data("two_level.json"), "--out", slist.to_str().unwrap()]).status.success());
    let o = run(&["realize", "--input", slist.to_str().unwrap(), "--out", operad.to_str().unwrap(), "--format", "machine"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("param\toperations\t11\n"));
    let h = stdout(&run(&["homology", "--input", slist.to_str().unwrap(), "--format", "machine"]));
    assert_eq!(rows(&h, "homology")[0][1], "2");
    let sub = stdout(&run(&["homology", "--input", slist.to_str().unwrap(), "--relative", slist.to_str().unwrap(), "--format", "machine"]));
    assert!(rows(&sub, "homology").iter().all(|r| r[3] == "0"));
    let again = run(&["free-operad", "--input", operad.to_str().unwrap(), "--format", "machine"]);
    assert!(stdout(&again).contains("param\toperations\t11\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sampled_checks_print_size_and_seed() {
    let o = run(&["verify-contraction", "--of", "rooted", "--samples", "50", "--seed", "9", "--format", "machine"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("param\tsamples\t50\n") && text.contains("param\tseed\t9\n"));
}

#[test]
fn every_command_runs() {
    let shape = data("two_level.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["shapes", "--D", "2", "--B", "2"],
        vec!["shapes", "--D", "1", "--B", "2", "--all"],
        vec!["upsilon", "--input", &shape, "--D", "1", "--compose", "0"],
        vec!["free-operad", "--input", &shape],
        vec!["check-envelope", "--input", &shape, "--D", "2", "--maxlen", "2"],
        vec!["thicken", "--shape", &shape, "--K", "1", "--M", "1", "--check-aug"],
        vec!["verify-contraction", "--of", "nerve", "--input", &shape, "--D", "3"],
        vec!["verify-contraction", "--of", "thick", "--input", &shape],
        vec!["verify-contraction", "--of", "point"],
    ];
    for args in cases {
        let o = run(&args);
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&run(&args)) == stdout(&o));
    }
}

#[test]
fn failures_have_distinct_exit_codes() {
    let dir = std::env::temp_dir().join(format!("listnerve-err-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"kind\": \"shape\",\n \"version\": 1,\n \"levels\": [1, 1],\n \"maps\": [[0], ]}").unwrap();
    let o = run(&["nerve", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4 column"));

    std::fs::write(&bad, "{\"kind\": \"shape\", \"version\": 1, \"levels\": [2, 1], \"maps\": [[1, 0]]}").unwrap();
    assert_eq!(run(&["nerve", "--input", bad.to_str().unwrap()]).status.code(), Some(4));

    assert_eq!(run(&["nerve", "--D", "x"]).status.code(), Some(2));
    assert_eq!(run(&["factor", "--input", &data("two_level.json")]).status.code(), Some(3));

    // the representable is not a nerve: realize fails with a located horn
    let u = dir.join("u.json");
    std::fs::write(&u, u_alpha_document()).unwrap();
    let o = run(&["realize", "--input", u.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("missing inner filler"));
    std::fs::remove_dir_all(&dir).unwrap();
}

fn u_alpha_document() -> String {
    use listnerve::delta::LeveledShape;
    use listnerve::format::{Document, SListDoc};
    let alpha = LeveledShape::from_values(vec![2, 2, 1], vec![vec![0, 1], vec![0, 0]]).unwrap();
    Document::Slist(SListDoc::of(&listnerve::slist::build_u_alpha(&alpha, 3).slist)).to_json()
}
