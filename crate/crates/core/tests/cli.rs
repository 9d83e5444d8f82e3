use std::path::PathBuf;
use std::process::{Command, Output};

use mukai_walls::cli::run;
use mukai_walls::report::AtlasReport;
use proptest::prelude::*;

const BIN: &str = env!("CARGO_BIN_EXE_mukai-walls");

fn cli(args: &[&str], env_bound: Option<&str>) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args).env_remove("MUKAI_WALLS_BOUND");
    if let Some(b) = env_bound {
        cmd.env("MUKAI_WALLS_BOUND", b);
    }
    cmd.output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mukai-walls-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn report(out: &Output) -> AtlasReport {
    AtlasReport::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap()
}

const WALLS_52: [&str; 7] = ["walls", "--n", "1", "--v", "2,1,-2", "--window", "-2.2:3.2,0.1:2"];

#[test]
fn reference_atlas_json_round_trips() {
    let out = cli(&WALLS_52, None);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let rep = report(&out);
    assert_eq!(rep.to_json(), text);
    let walls = rep.walls.unwrap();
    assert_eq!(walls.len(), 7);
    assert!(walls.iter().any(|w| w.pqr == ["0", "2", "-1"]));
    assert_eq!(rep.chambers.unwrap().order.len(), 7);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| cli(args, None).status.code();
    assert_eq!(code(&["walls", "--n", "1", "--v", "2,1,-2"]), Some(2), "missing window");
    assert_eq!(code(&["walls", "--n", "1", "--v", "2,1", "--window", "0:1,1:2"]), Some(2), "short vector");
    assert_eq!(code(&["walls", "--n", "1", "--v", "2,1,-2", "--window", "1:0,1:2"]), Some(2), "empty window");
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["cones", "--n", "1", "--v", "2,2,4", "--require-primitive"]), Some(3));
    assert_eq!(code(&["cones", "--n", "1", "--v", "1,0,1"]), Some(3), "negative square");
    let undecided = ["walls", "--n", "11", "--v", "3,1,3", "--window", "0:1,1:2", "--bound", "2"];
    let out = cli(&undecided, None);
    assert_eq!(out.status.code(), Some(4));
    // the report is still written
    assert!(report(&out).certificates.walls_exist.unwrap().starts_with("UndecidedUpTo"));
    assert_eq!(code(&undecided[..undecided.len() - 2]), Some(0));
}

#[test]
fn bound_precedence_is_flag_then_file_then_environment() {
    let job = scratch("bound.toml");
    std::fs::write(&job, "vector = [3, 1, 3]\nwindow = \"0:1,1:2\"\n[surface]\nn = 11\n[bounds]\nwalls = 7\n").unwrap();
    let bound = |args: &[&str], env: Option<&str>| report(&cli(args, env)).input.bound;
    let base = ["walls", "--n", "11", "--v", "3,1,3", "--window", "0:1,1:2"];
    let with_file = ["walls", "--config", job.to_str().unwrap()];
    assert_eq!(bound(&base, None), None);
    assert_eq!(bound(&base, Some("5")), Some("5".into()));
    assert_eq!(bound(&with_file, Some("5")), Some("7".into()));
    let flagged: Vec<&str> = with_file.iter().copied().chain(["--bound", "9"]).collect();
    assert_eq!(bound(&flagged, Some("5")), Some("9".into()));
}

#[test]
fn job_file_matches_flags() {
    let job = scratch("ref.toml");
    std::fs::write(
        &job,
        "vector = [2, 1, -2]\nwindow = \"-2.2:3.2,0.1:2\"\n[surface]\nn = 1\n[output]\nformat = \"json\"\n",
    )
    .unwrap();
    let from_file = cli(&["walls", "--config", job.to_str().unwrap()], None);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(from_file.stdout, cli(&WALLS_52, None).stdout);
    let bad = scratch("bad.toml");
    std::fs::write(&bad, "vectr = [2, 1, -2]\n").unwrap();
    assert_eq!(cli(&["walls", "--config", bad.to_str().unwrap()], None).status.code(), Some(2));
}

#[test]
fn both_formats_write_two_files() {
    let out = scratch("atlas");
    let args: Vec<&str> = WALLS_52.iter().copied().chain(["--format", "both", "--out", out.to_str().unwrap()]).collect();
    assert_eq!(cli(&args, None).status.code(), Some(0));
    let json = std::fs::read(out.with_extension("json")).unwrap();
    let svg = std::fs::read(out.with_extension("svg")).unwrap();
    assert_eq!(json, cli(&WALLS_52, None).stdout);
    let svg_args: Vec<&str> = WALLS_52.iter().copied().chain(["--format", "svg"]).collect();
    assert_eq!(svg, cli(&svg_args, None).stdout);
    let no_out: Vec<&str> = WALLS_52.iter().copied().chain(["--format", "both"]).collect();
    assert_eq!(cli(&no_out, None).status.code(), Some(2));
}

#[test]
fn long_stabilizer_period_stays_fast() {
    // nℓ = 1677 has a large Pell solution, so the chamber search spans a long stretch
    let start = std::time::Instant::now();
    let out = cli(&["walls", "--n", "39", "--v", "2,1,-2", "--window", "0:1,1:2"], None);
    assert_eq!(out.status.code(), Some(0));
    let ch = report(&out).chambers.unwrap();
    assert!(ch.error.is_none());
    assert!(start.elapsed().as_secs() < 30, "{:?}", start.elapsed());
}

#[test]
fn other_subcommands() {
    let rep = report(&cli(&["cones", "--n", "1", "--v", "2,1,-2"], None));
    let cones = rep.cones.unwrap();
    assert_eq!(cones.trichotomy.unwrap().case, "2");
    assert_eq!(rep.certificates.hilbert_birational.unwrap().answer, false);
    let rep = report(&cli(&["stab", "--n", "1", "--v", "2,1,-2"], None));
    assert_eq!(rep.certificates.stabilizer.unwrap().generator.as_deref(), Some("((5,8),(8,13))"));
    let rep = report(&cli(&["classify-exceptional", "--n", "1", "--v", "1,0,-3", "--e", "1,0,3"], None));
    let m = rep.certificates.markman.unwrap();
    assert_eq!(m.len(), 1);
    assert_eq!(m[0].case, "1");
}

fn has_float_literal(text: &str) -> bool {
    let b = text.as_bytes();
    (1..b.len().saturating_sub(1)).any(|i| b[i] == b'.' && b[i - 1].is_ascii_digit() && b[i + 1].is_ascii_digit())
}

fn run_in_process(args: &[String]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("mukai-walls".to_string()).chain(args.iter().cloned());
    let code = run(argv, &mut out, &mut err);
    (code, out)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn reports_are_deterministic_exact_and_round_trip(
        n in 1i64..=4,
        v in prop::array::uniform3(-4i64..=4),
        s in -20i64..=20,
        w in 1i64..=20,
        t in 1i64..=10,
        svg in any::<bool>(),
    ) {
        use num_integer::Integer;
        prop_assume!(v[0].gcd(&v[1]).gcd(&v[2]) == 1 && n * v[1] * v[1] - v[0] * v[2] > 0);
        let args: Vec<String> = [
            "walls".into(), "--n".into(), n.to_string(),
            "--v".into(), format!("{},{},{}", v[0], v[1], v[2]),
            "--window".into(), format!("{}:{},{}:{}", s as f64 / 4.0, (s + w) as f64 / 4.0, t as f64 / 10.0, 2 + t),
            "--format".into(), if svg { "svg".into() } else { "json".into() },
        ].to_vec();
        let (code, first) = run_in_process(&args);
        prop_assert!(code == 0 || code == 4, "exit {}", code);
        let (_, second) = run_in_process(&args);
        prop_assert_eq!(&first, &second);
        let text = String::from_utf8(first).unwrap();
        if svg {
            prop_assert!(text.contains("<svg") && text.trim_end().ends_with("</svg>"));
        } else {
            prop_assert!(!has_float_literal(&text));
            let rep = AtlasReport::from_json(&text).unwrap();
            prop_assert_eq!(rep.to_json(), text);
        }
    }
}
