use std::process::Command;

use kdeck::canon::canonical_key;
use kdeck::cli::run;
use kdeck::{to_graph6, Graph};

struct Output {
    status: i32,
    stdout: String,
    stderr: String,
}

fn kdeck(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("kdeck").chain(args.iter().copied());
    let status = run(argv, &mut out, &mut err);
    Output {
        status,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn g6(name: &str) -> String {
    to_graph6(&Graph::named(name).unwrap())
}

fn key(name: &str) -> String {
    canonical_key(&Graph::named(name).unwrap()).to_string()
}

#[test]
fn compare_sharpness_pair() {
    let (a, b) = (g6("cycle5+empty1"), g6("claw_subdivided2"));
    let o = kdeck(&["compare", "--g6a", &a, "--g6b", &b, "-k", "3"]);
    assert_eq!((o.status, o.stdout.as_str()), (0, "EQUAL\n"));
    let o = kdeck(&["compare", "--g6a", &a, "--g6b", &b, "-k", "4"]);
    assert_eq!((o.status, o.stdout.as_str()), (0, "DIFFERENT\n"));
    let o = kdeck(&["compare", "--named-a", "cycle4+empty1", "--named-b", "claw_subdivided1", "-k", "3", "--format", "tsv"]);
    assert_eq!(o.stdout, "3\tEQUAL\n");
}

#[test]
fn compare_of_different_orders_is_a_usage_error() {
    let o = kdeck(&["compare", "--named-a", "path4", "--named-b", "path5", "-k", "3"]);
    assert_eq!(o.status, 2);
    assert!(o.stderr.contains("not comparable"));
}

#[test]
fn deck_of_c5_plus_k1() {
    let o = kdeck(&["deck", "--named", "cycle5+empty1", "-k", "3"]);
    assert_eq!(o.status, 0);
    let rows: Vec<&str> = o.stdout.lines().filter(|l| l.contains('\t')).collect();
    let mults: Vec<&str> = rows.iter().map(|r| r.split('\t').nth(1).unwrap()).collect();
    assert_eq!(mults, ["5", "10", "5"]);
    assert!(o.stdout.lines().last().unwrap().starts_with("total=20 distinct=3 digest="));

    let o = kdeck(&["deck", "--named", "cycle5+empty1", "-k", "3", "--format", "tsv"]);
    assert_eq!(
        o.stdout,
        format!("k=3 n=6\n{}\t5\n{}\t10\n{}\t5\n", key("empty3"), key("path2+empty1"), key("path3"))
    );
}

#[test]
fn deck_file_round_trip_through_subdeck_and_reconstructions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d3.tsv");
    let o = kdeck(&["deck", "--named", "cycle5+empty1", "-k", "3", "--format", "tsv"]);
    std::fs::write(&path, &o.stdout).unwrap();
    let p = path.to_str().unwrap();

    let o = kdeck(&["subdeck", "--deck-file", p, "--format", "tsv"]);
    assert_eq!(o.stdout, format!("k=2 n=6\n{}\t10\n{}\t5\n", key("empty2"), key("complete2")));

    let o = kdeck(&["reconstructions", "--deck-file", p]);
    assert_eq!(o.status, 0);
    assert!(o.stdout.starts_with("found=3\n"));
    assert!(o.stdout.contains(&key("cycle5+empty1")));
    assert!(o.stdout.contains(&key("claw_subdivided2")));

    let o = kdeck(&["degrees", "--deck-file", p]);
    assert_eq!(o.stdout, "(2,2,2,2,2,0)\n");
    let o = kdeck(&["degrees", "--deck-file", p, "--high", "3:1,4:0,5:0"]);
    assert_eq!(o.stdout, "(3,2,2,1,1,1)\n");
    let o = kdeck(&["degrees", "--deck-file", p, "--high", "3:2,4:0,5:0"]);
    assert_eq!(o.status, 1);
    assert!(o.stderr.contains("inconsistent high-degree counts"));
}

#[test]
fn degrees_phi_rho_threshold_pairs() {
    let o = kdeck(&["degrees", "--named", "claw_subdivided2"]);
    assert_eq!(o.stdout, "(3,2,2,1,1,1)\n");
    let o = kdeck(&["degrees", "--named", "path7", "-k", "4", "--format", "tsv"]);
    assert_eq!(o.stdout, "0\t0\n1\t2\n2\t5\n3\t0\n4\t0\n5\t0\n6\t0\n");

    let o = kdeck(&["phi", "--named", "cycle5+empty1", "-k", "3"]);
    assert_eq!(o.stdout, "deck=(25,30,5) formula=(25,30,5) AGREE\n");

    let o = kdeck(&["rho", "--named", "path6"]);
    assert_eq!(o.stdout, "2\n");

    let o = kdeck(&["threshold", "-l", "3"]);
    assert!(o.stdout.starts_with("g(3) = 43.4"), "{}", o.stdout);
    let o = kdeck(&["threshold", "-l", "2"]);
    assert_eq!(o.status, 1);

    let o = kdeck(&["pairs", "-l", "3", "--format", "tsv"]);
    assert_eq!(o.stdout.lines().count(), 3);
    assert!(o.stdout.lines().all(|l| l.split('\t').nth(3) == Some("EQUAL")));
}

#[test]
fn graph6_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("graphs.g6");
    std::fs::write(&path, format!(">>graph6<<\n{}\n{}\n", g6("path4"), g6("claw_subdivided0"))).unwrap();
    let o = kdeck(&["degrees", "--file", path.to_str().unwrap()]);
    assert_eq!(o.stdout, "(2,2,1,1)\n(3,1,1,1)\n");
}

#[test]
fn verify_and_classes_are_deterministic_across_cache_and_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["verify", "-n", "6", "-k", "3", "--invariant", "connectedness", "--cache-dir", cache];
    let cold = kdeck(&args);
    assert_eq!(cold.status, 0);
    let warm = kdeck(&args);
    let mut with_jobs = args.to_vec();
    with_jobs.extend(["--jobs", "3"]);
    let threaded = kdeck(&with_jobs);
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.stdout, threaded.stdout);
    assert!(cold.stdout.starts_with("n=6 k=3 classes="));
    let (a, b) = (key("cycle5+empty1"), key("claw_subdivided2"));
    let pair = if a < b { format!("{a}\t{b}\t") } else { format!("{b}\t{a}\t") };
    assert!(cold.stdout.contains(&pair));

    let tsv = kdeck(&["verify", "-n", "6", "-k", "3", "--invariant", "connectedness", "--cache-dir", cache, "--format", "tsv"]);
    assert!(tsv.stdout.starts_with("first\tsecond\twitness\n"));

    let o = kdeck(&["verify", "-n", "6", "-k", "4", "--invariant", "degree_list", "--cache-dir", cache]);
    assert_eq!(o.stdout.lines().count(), 1);
    assert!(o.stdout.ends_with(" violations=0\n"));

    let o = kdeck(&["classes", "-n", "5", "-k", "3", "--cache-dir", cache, "--format", "tsv"]);
    assert_eq!(o.stdout.lines().count(), 1 + 34);
    assert!(dir.path().join("graphs_n5.g6").exists());
    assert!(dir.path().join("classes_n5_k3.tsv").exists());
}

#[test]
fn n9_census_is_opt_in() {
    let dir = tempfile::tempdir().unwrap();
    let o = kdeck(&["classes", "-n", "9", "-k", "7", "--cache-dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status, 2);
    assert!(o.stderr.contains("--allow-n9"));
}

#[test]
fn usage_and_domain_errors() {
    assert_eq!(kdeck(&["frobnicate"]).status, 2);
    assert_eq!(kdeck(&["deck", "--named", "path4"]).status, 2);
    assert_eq!(kdeck(&["deck", "-k", "2"]).status, 2);
    assert_eq!(kdeck(&["deck", "--named", "path4", "--g6", "Bw", "-k", "2"]).status, 2);
    assert_eq!(kdeck(&["verify", "-n", "5", "-k", "3", "--invariant", "planarity"]).status, 2);
    assert_eq!(kdeck(&["deck", "--named", "path4", "-k", "2", "--jobs", "0"]).status, 2);

    let o = kdeck(&["deck", "--g6", "Bx", "-k", "2"]);
    assert_eq!(o.status, 1);
    assert!(o.stderr.contains("at byte 1"), "{}", o.stderr);
    assert_eq!(kdeck(&["deck", "--named", "path4", "-k", "5"]).status, 1);
    assert_eq!(kdeck(&["deck", "--named", "wheel5", "-k", "2"]).status, 1);
}

#[test]
fn help_lists_every_subcommand_and_flag() {
    let o = kdeck(&["--help"]);
    assert_eq!(o.status, 0);
    for sub in [
        "deck", "compare", "subdeck", "degrees", "phi", "classes", "verify", "reconstructions", "rho",
        "pairs", "threshold",
    ] {
        assert!(o.stdout.contains(sub), "{sub} missing from --help");
        let h = kdeck(&[sub, "--help"]);
        assert_eq!(h.status, 0, "{sub} --help");
        for flag in ["--cache-dir", "--jobs", "--format"] {
            assert!(h.stdout.contains(flag), "{sub} --help lacks {flag}");
        }
    }
    assert!(o.stdout.contains("TSV columns"));
    let v = kdeck(&["verify", "--help"]).stdout;
    assert!(v.contains("--invariant") && v.contains("--allow-n9"));
}

#[test]
fn binary_exit_statuses() {
    let bin = env!("CARGO_BIN_EXE_kdeck");
    let ok = Command::new(bin).args(["deck", "--named", "complete3", "-k", "2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).lines().next(), Some("A_\t3"));
    let usage = Command::new(bin).arg("nope").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let domain = Command::new(bin).args(["threshold", "-l", "1"]).output().unwrap();
    assert_eq!(domain.status.code(), Some(1));
}
