use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn choicest(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_choicest"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_on(command: &str, file: &Path, extra: &[&str]) -> Output {
    let mut args = vec![command, "--input", file.to_str().unwrap()];
    args.extend_from_slice(extra);
    choicest(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Writes `text` to a scratch file unique to this test.
fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("choicest-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn regret_survivors() {
    let o = run_on("rationalize", &fixture("game_regret.toml"), &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("survivors: i: u | j: l\n"), "{}", stdout(&o));
    let o = run_on(
        "rationalize",
        &fixture("game_regret.toml"),
        &["--format", "machine"],
    );
    assert!(stdout(&o).ends_with("survivors\ti: u | j: l\n"));
}

#[test]
fn eu_and_maxmin_survivors() {
    let o = run_on("rationalize", &fixture("game_eu.toml"), &[]);
    assert!(stdout(&o).contains("survivors: i: u | j: l\n"));
    let o = run_on("rationalize", &fixture("game_maxmin.toml"), &[]);
    assert!(stdout(&o).contains("survivors: i: u,c,d | j: l,r\n"));
}

#[test]
fn example_is_non_redundant_with_the_expected_separator() {
    let o = run_on("nonred", &fixture("example1.toml"), &[]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("verdict: NonRedundant"), "{text}");
    assert!(text.contains("K={f_l,f_r} L={f_l}"), "{text}");
}

#[test]
fn duplicate_is_redundant_with_its_pair_as_witness() {
    let o = run_on("nonred", &fixture("duplicate.toml"), &["--format", "machine"]);
    assert!(
        stdout(&o).contains("verdict\tverdict=Redundant\twitness=j:t_Mm~t_Mm2\n"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn tight_bounds_give_an_inconclusive_verdict() {
    let text = std::fs::read_to_string(fixture("example1.toml"))
        .unwrap()
        .replace(
            "type = \"t_EU\"\ncriterion = \"eu\"\nover = \"actions\"\nbelief = [[\"1/2\", \"0\", \"0\", \"1/2\"]]\nlisted = [{ menu = [\"l\", \"r\"], choice = [\"l\", \"r\"] }]",
            "type = \"t_EU\"\ncriterion = \"eu\"\nover = \"actions\"\nbelief = [[\"1\", \"0\", \"0\", \"0\"]]",
        );
    let path = scratch("inconclusive.toml", &text);
    let o = run_on("nonred", &path, &["--act-cap", "1", "--samples", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: Inconclusive"), "{}", stdout(&o));
    let o = run_on("nonred", &path, &[]);
    assert!(stdout(&o).contains("verdict: NonRedundant"), "{}", stdout(&o));
}

#[test]
fn choice_tables_with_tie_notes() {
    let o = run_on("choice-eval", &fixture("example1.toml"), &[]);
    let text = stdout(&o);
    for line in [
        "{f_u,f_m,f_c,f_d} -> {f_u,f_m,f_c}",
        "{f_u,f_m,f_d} -> {f_u,f_m}",
        "{f_m,f_c,f_d} -> {f_c}",
        "{f_m,f_d} -> {f_d}",
        "{f_c,f_d} -> {f_c}",
        "{f_u,f_m} -> {f_u}",
        "{f_u,f_d} -> {f_u}",
        "{f_u,f_c} -> {f_u,f_c}",
        "{f_m,f_c} -> {f_c}",
        "{f_l,f_r} -> {f_l}",
        "{f_l,f_r} -> {f_l,f_r}",
        "note: listed {f_u,f_m}, computed {f_u,f_m,f_c}",
        "note: listed {f_u}, computed {f_u,f_c}",
    ] {
        assert!(text.contains(line), "missing `{line}` in\n{text}");
    }
    assert_eq!(text.matches("note:").count(), 2);
}

#[test]
fn hierarchy_reports_coherence() {
    let o = run_on("hierarchy", &fixture("example1.toml"), &["--levels", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("coherence: ok (levels 1..2)"), "{text}");
    assert!(
        text.contains("level 2, player i: base 4 points, opponent types {t_Mm} {t_EU}"),
        "{text}"
    );
}

#[test]
fn embed_reports_injectivity() {
    let o = run_on("embed", &fixture("preference.toml"), &[]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.contains("injectivity i: t_safe, t_bold differ on {f_u,f_m}"),
        "{text}"
    );
    assert!(
        text.contains("injectivity j: t_left, t_open differ on {f_l,f_r}"),
        "{text}"
    );
}

#[test]
fn output_is_byte_identical_across_runs() {
    for (cmd, file) in [
        ("nonred", "example1.toml"),
        ("hierarchy", "duplicate.toml"),
        ("choice-eval", "example1.toml"),
        ("rationalize", "game_regret.toml"),
    ] {
        for format in ["table", "machine"] {
            let args = ["--seed", "7", "--act-cap", "8", "--format", format];
            let a = run_on(cmd, &fixture(file), &args);
            let b = run_on(cmd, &fixture(file), &args);
            assert_eq!(a.stdout, b.stdout, "{cmd} {format}");
            assert!(!a.stdout.is_empty());
        }
    }
}

#[test]
fn machine_records_are_tab_separated() {
    let o = run_on("choice-eval", &fixture("example1.toml"), &["--format", "machine"]);
    let text = stdout(&o);
    let first = text.lines().next().unwrap();
    assert_eq!(
        first,
        "choice\tplayer=i\ttype=t_i\tmenu={f_u,f_m,f_c,f_d}\tchoice={f_u,f_m,f_c}\tvalues=f_u=3,f_m=3,f_c=3,f_d=13/4"
    );
}

#[test]
fn input_errors_exit_with_two() {
    let game = std::fs::read_to_string(fixture("game_eu.toml")).unwrap();
    let decimal = scratch("decimal.toml", &game.replace("\"3;2\"", "\"0.25;2\""));
    let o = run_on("rationalize", &decimal, &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("line 6: payoffs row 2 (m), column 1 (l)"),
        "{}",
        stderr(&o)
    );

    let short = scratch("short.toml", &game.replace("[\"1;1\", \"3;0\"]", "[\"1;1\"]"));
    let o = run_on("rationalize", &short, &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("payoffs row 3 (c): expected 2 entries"),
        "{}",
        stderr(&o)
    );

    let o = run_on("embed", &fixture("example1.toml"), &[]);
    assert_eq!(o.status.code(), Some(2));
    let o = run_on("nonred", Path::new("/no/such/file.toml"), &[]);
    assert_eq!(o.status.code(), Some(2));
    let o = run_on("nonred", &fixture("example1.toml"), &["--act-cap", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = choicest(&["nonred"]);
    assert_eq!(o.status.code(), Some(2));
    let o = choicest(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn structure_errors_name_the_problem() {
    let pref = std::fs::read_to_string(fixture("preference.toml")).unwrap();
    let cycle = scratch(
        "cycle.toml",
        &pref.replace(
            "prefers = [[\"l\", \"r\"]]",
            "prefers = [[\"l\", \"r\"], [\"r\", \"l\"]]",
        ),
    );
    let o = run_on("embed", &cycle, &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("anti-symmetric"), "{}", stderr(&o));

    let table = pref.replace("kind = \"preference\"\n", "").replace(
        "prefers = [[\"l\", \"r\"]]",
        "choices = [{ menu = [\"l\", \"r\"], choice = [\"u\"] }]",
    );
    let o = run_on("choice-eval", &scratch("dangling.toml", &table), &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown action `u`"), "{}", stderr(&o));
}

#[test]
fn verify_passes_on_the_shipped_fixtures() {
    let files = [
        "example1.toml",
        "duplicate.toml",
        "preference.toml",
        "game_eu.toml",
        "game_maxmin.toml",
        "game_regret.toml",
    ];
    let mut args = vec!["verify".to_string()];
    for f in files {
        args.push("--input".into());
        args.push(fixture(f).to_str().unwrap().to_string());
    }
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    let o = choicest(&args);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
    let text = stdout(&o);
    assert!(!text.contains("FAIL"));
    assert_eq!(text.matches("fixture ").count(), files.len());
}
