use std::path::Path;
use std::process::{Command, Output};

use omniversal::construct::{self, LStarParams};
use omniversal::report::{WitnessFile, REPORT_SCHEMA};
use omniversal::{LatinSquare, SpectrumReport};

mod common;

fn run(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_omniversal"))
        .args(args)
        .env("OMNIVERSAL_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn validate(json: &str) {
    let schema: serde_json::Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let value: serde_json::Value = serde_json::from_str(json).unwrap();
    let errors: Vec<String> = validator
        .iter_errors(&value)
        .map(|e| e.to_string())
        .collect();
    assert!(errors.is_empty(), "schema errors: {errors:?}");
}

#[test]
fn certify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let sq = dir.path().join("l8.txt");
    assert_eq!(
        code(&run(
            dir.path(),
            &[
                "construct",
                "--family",
                "l-star",
                "-o",
                sq.to_str().unwrap()
            ]
        )),
        0
    );
    assert_eq!(
        code(&run(
            dir.path(),
            &["certify", sq.to_str().unwrap(), "--expect", "omniversal"]
        )),
        0
    );
    assert_eq!(
        code(&run(
            dir.path(),
            &["certify", "--group", "Z4", "--expect", "omniversal"]
        )),
        1
    );
    assert_eq!(
        code(&run(
            dir.path(),
            &["certify", "--group", "D8", "--expect", "near-omniversal:5"]
        )),
        0
    );
    assert_eq!(
        code(&run(
            dir.path(),
            &["certify", "--group", "D8", "--expect", "near-omniversal:4"]
        )),
        1
    );
}

#[test]
fn usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        code(&run(
            dir.path(),
            &["spectrum", "--group", "Z5", "--frobnicate"]
        )),
        2
    );
    assert_eq!(code(&run(dir.path(), &["no-such-command"])), 2);
    assert_eq!(code(&run(dir.path(), &["spectrum", "--group", "Z17"])), 2);
    assert_eq!(code(&run(dir.path(), &["spectrum", "/no/such/file"])), 2);
    assert_eq!(
        code(&run(
            dir.path(),
            &["certify", "--group", "Z5", "--expect", "sometimes"]
        )),
        2
    );
    assert_eq!(code(&run(dir.path(), &["--help"])), 0);
}

#[test]
fn timeout_exit_code_and_withheld_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let sq = dir.path().join("z9.txt");
    std::fs::write(
        &sq,
        omniversal::group::cyclic(9).cayley_table().to_file_string(),
    )
    .unwrap();
    let json = dir.path().join("r.json");
    let o = run(
        dir.path(),
        &[
            "spectrum",
            sq.to_str().unwrap(),
            "--budget-nodes",
            "1",
            "--json",
            json.to_str().unwrap(),
        ],
    );
    assert_eq!(code(&o), 3, "{}", stderr(&o));
    let text = std::fs::read_to_string(&json).unwrap();
    validate(&text);
    let r: SpectrumReport = serde_json::from_str(&text).unwrap();
    assert!(r.verdict.is_none());
    assert!(stdout(&o).contains('?'));
}

#[test]
fn construct_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (args, want) in [
        (
            vec!["--family", "l-star", "--m", "2", "--q", "1"],
            construct::build_l_star(LStarParams::new(2, 1).unwrap()),
        ),
        (
            vec!["--family", "m-star", "--m", "3"],
            construct::build_m_star(3),
        ),
        (
            vec!["--family", "order8-two"],
            construct::exceptional_order8(construct::Exceptional::TwoLengths),
        ),
    ] {
        let f = dir.path().join("sq.txt");
        let mut a = vec!["construct"];
        a.extend(&args);
        a.extend(["-o", f.to_str().unwrap()]);
        assert_eq!(code(&run(dir.path(), &a)), 0);
        let text = std::fs::read_to_string(&f).unwrap();
        assert_eq!(text, want.to_file_string());
        assert_eq!(LatinSquare::parse(&text).unwrap(), want);
        let o = run(dir.path(), &["square", "validate", f.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        assert!(stdout(&o).contains(&want.hash_hex()));
    }
}

#[test]
fn witness_files_verify() {
    let dir = tempfile::tempdir().unwrap();
    let l = construct::build_l_star(LStarParams::new(1, 1).unwrap());
    for len in 6..=12 {
        let o = run(
            dir.path(),
            &[
                "witness",
                "--family",
                "l-star",
                "--q",
                "1",
                "--length",
                &len.to_string(),
            ],
        );
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        let w: WitnessFile = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(w.length, len);
        assert_eq!(w.square_hash, l.hash_hex());
        assert!(common::is_maximal_pt(&l, &w.triples));
        assert_eq!(w.triples.len(), len);
    }
    let o = run(
        dir.path(),
        &["witness", "--family", "order8-two", "--length", "5"],
    );
    assert_eq!(code(&o), 1);
}

#[test]
fn cache_reuse_and_recompute() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let sq = dir.path().join("z9.txt");
    std::fs::write(
        &sq,
        omniversal::group::cyclic(9).cayley_table().to_file_string(),
    )
    .unwrap();
    let (j1, j2) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let first = run(
        &cache,
        &[
            "spectrum",
            sq.to_str().unwrap(),
            "--json",
            j1.to_str().unwrap(),
        ],
    );
    assert_eq!(code(&first), 0);
    assert!(!stderr(&first).contains("served from cache"));
    let second = run(
        &cache,
        &[
            "spectrum",
            sq.to_str().unwrap(),
            "--json",
            j2.to_str().unwrap(),
        ],
    );
    assert!(stderr(&second).contains("served from cache"));
    let a: SpectrumReport = serde_json::from_str(&std::fs::read_to_string(&j1).unwrap()).unwrap();
    let b: SpectrumReport = serde_json::from_str(&std::fs::read_to_string(&j2).unwrap()).unwrap();
    assert_eq!(a.without_timing(), b.without_timing());
    assert_eq!(a.lengths, b.lengths);
    let off = run(&cache, &["--no-cache", "spectrum", sq.to_str().unwrap()]);
    assert!(!stderr(&off).contains("served from cache"));

    let sq2 = dir.path().join("z7.txt");
    std::fs::write(
        &sq2,
        omniversal::group::cyclic(7).cayley_table().to_file_string(),
    )
    .unwrap();
    let small = run(
        &cache,
        &["spectrum", sq2.to_str().unwrap(), "--budget-nodes", "1"],
    );
    assert_eq!(code(&small), 3);
    let again = run(
        &cache,
        &["spectrum", sq2.to_str().unwrap(), "--budget-nodes", "1"],
    );
    assert!(stderr(&again).contains("served from cache"));
    let bigger = run(
        &cache,
        &[
            "spectrum",
            sq2.to_str().unwrap(),
            "--budget-nodes",
            "100000000",
        ],
    );
    assert_eq!(code(&bigger), 0);
    assert!(!stderr(&bigger).contains("served from cache"));

    for entry in std::fs::read_dir(&cache).unwrap() {
        std::fs::write(entry.unwrap().path(), "garbage").unwrap();
    }
    let evicted = run(&cache, &["spectrum", sq.to_str().unwrap()]);
    assert_eq!(code(&evicted), 0);
    assert!(!stderr(&evicted).contains("served from cache"));
}

#[test]
fn reports_validate_and_render() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let svg = dir.path().join("r.svg");
    let o = run(
        dir.path(),
        &[
            "--no-cache",
            "spectrum",
            "--group",
            "Z7",
            "--json",
            json.to_str().unwrap(),
            "--svg",
            svg.to_str().unwrap(),
        ],
    );
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("4○5●6○7●\n"));
    let text = std::fs::read_to_string(&json).unwrap();
    validate(&text);
    let r: SpectrumReport = serde_json::from_str(&text).unwrap();
    let m = r.manifest.expect("manifest embedded");
    assert_eq!(
        m.input_hashes,
        vec![omniversal::group::cyclic(7).cayley_table().hash_hex()]
    );
    assert!(m.ended_unix_ms >= m.started_unix_ms);
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));

    let cj = dir.path().join("c.json");
    let o = run(
        dir.path(),
        &[
            "--no-cache",
            "groups",
            "classify",
            "--order",
            "8",
            "--json",
            cj.to_str().unwrap(),
        ],
    );
    assert_eq!(code(&o), 0);
    let all: Vec<serde_json::Value> =
        serde_json::from_str(&std::fs::read_to_string(&cj).unwrap()).unwrap();
    assert_eq!(all.len(), 5);
    for r in all {
        validate(&r.to_string());
    }
}

#[test]
fn classify_all_is_independent_of_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for jobs in ["1", "3"] {
        let md = dir.path().join(format!("t{jobs}.md"));
        let js = dir.path().join(format!("t{jobs}.json"));
        let o = run(
            dir.path(),
            &[
                "--no-cache",
                "groups",
                "classify-all",
                "--max-order",
                "10",
                "--jobs",
                jobs,
                "--markdown",
                md.to_str().unwrap(),
                "--json",
                js.to_str().unwrap(),
            ],
        );
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        outputs.push((
            std::fs::read_to_string(md).unwrap(),
            std::fs::read_to_string(js).unwrap(),
        ));
    }
    assert_eq!(outputs[0], outputs[1]);
    assert!(outputs[0].0.contains("| 10 | D10 |"));
    assert!(outputs[0].0.contains("(9, 6)"));
}

#[test]
fn group_commands() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["groups", "list", "--order", "16"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 14);
    let f = dir.path().join("q8.txt");
    assert_eq!(
        code(&run(
            dir.path(),
            &[
                "groups",
                "export",
                "--name",
                "Q8",
                "-o",
                f.to_str().unwrap()
            ]
        )),
        0
    );
    let g = omniversal::Group::parse_file("Q8", &std::fs::read_to_string(&f).unwrap()).unwrap();
    assert_eq!(
        g.invariants(),
        omniversal::group::by_name("Q8").unwrap().invariants()
    );
    assert_eq!(
        code(&run(dir.path(), &["groups", "export", "--name", "Nope"])),
        2
    );
}

#[test]
fn extension_commands() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        dir.path(),
        &[
            "extend",
            "--group",
            "Z12",
            "--rows",
            "0,4,8",
            "--cols",
            "0,4,8,1,5,9",
            "--json",
        ],
    );
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["m"], 6);
    assert!(v["subsquare"].is_null());
    let o = run(
        dir.path(),
        &["extend", "--group", "Z12", "--rows", "0,4", "--cols", "0,4"],
    );
    assert!(stdout(&o).contains("extends"));

    let a = run(
        dir.path(),
        &[
            "conjecture41",
            "--trials",
            "20",
            "--seed",
            "7",
            "--order-max",
            "12",
        ],
    );
    let b = run(
        dir.path(),
        &[
            "conjecture41",
            "--trials",
            "20",
            "--seed",
            "7",
            "--order-max",
            "12",
        ],
    );
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let lines: Vec<serde_json::Value> = stdout(&a)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 20);
    assert!(lines.iter().all(|l| l["alpha"].as_f64().unwrap() > 0.5));
    assert_eq!(
        code(&run(dir.path(), &["conjecture41", "--order-max", "5"])),
        2
    );

    let r = dir.path().join("rect.txt");
    std::fs::write(&r, "3 3\n0 1 2\n1 2 0\n2 0 1\n").unwrap();
    assert!(stdout(&run(
        dir.path(),
        &["embed-check", r.to_str().unwrap(), "--order", "4"]
    ))
    .contains("not embeddable"));
    assert!(stdout(&run(
        dir.path(),
        &["embed-check", r.to_str().unwrap(), "--order", "6"]
    ))
    .starts_with("embeddable"));
}

#[test]
fn species_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("species");
    let o = run(
        dir.path(),
        &[
            "square",
            "species",
            "--order",
            "4",
            "-o",
            out.to_str().unwrap(),
        ],
    );
    assert_eq!(code(&o), 0);
    let squares = std::fs::read_dir(&out)
        .unwrap()
        .filter(|e| {
            e.as_ref()
                .unwrap()
                .file_name()
                .to_string_lossy()
                .starts_with("species-")
        })
        .count();
    assert_eq!(squares, 2);
    assert!(out.join("census.txt").exists());
    assert_eq!(
        code(&run(dir.path(), &["square", "species", "--order", "8"])),
        2
    );
}
