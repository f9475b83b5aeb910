use std::path::PathBuf;
use std::process::Command;

use omegaclone::cli::run;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name).display().to_string()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("omegaclone").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn verdicts_and_exit_codes() {
    assert_eq!(call(&["classify", "--term", "(a 1 1)"]), (0, "T3/1\n".into(), String::new()));
    let (code, out, _) = call(&["aut", "member", "--aut", &data("univ.aut"), "--graph", &data("full-a.tg")]);
    assert_eq!((code, out.trim()), (0, "accept"));
    let (code, out, _) =
        call(&["aut", "member", "--aut", &data("b-infinitely-often.aut"), "--graph", &data("full-a.tg")]);
    assert_eq!((code, out.trim()), (1, "reject"));
    let (code, _, err) = call(&["classify", "--term", "(a 1"]);
    assert_eq!(code, 2);
    assert!(err.contains(":1:"), "{err}");
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&["game", "solve", "/nonexistent.pg"]).0, 2);
}

#[test]
fn graph_parse_errors_name_file_and_line() {
    let dir = std::env::temp_dir().join(format!("omegaclone-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.tg");
    std::fs::write(&path, "rank 0\n0: a 0 0\n1: a 0\n").unwrap();
    let (code, _, err) = call(&["classify", "--graph", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("bad.tg:3:"), "{err}");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn randomized_commands_need_a_seed() {
    let (code, _, err) = call(&["laws"]);
    if std::env::var_os("OMEGACLONE_SEED").is_none() {
        assert_eq!(code, 2, "{err}");
    }
}

#[test]
fn porcelain_is_deterministic() {
    let args = ["--porcelain", "oracle", "--suite", "corollary", "--seed", "7", "--trials", "300"];
    let (code, first, _) = call(&args);
    assert_eq!(code, 0);
    assert_eq!(call(&args).1, first);
    assert!(first.lines().any(|l| l == "status passed"), "{first}");
    let (_, exp, _) = call(&["--porcelain", "anti", "experiment", "--seed", "5", "--trials", "40"]);
    assert_eq!(call(&["--porcelain", "anti", "experiment", "--seed", "5", "--trials", "40"]).1, exp);
}

#[test]
fn echo_round_trips() {
    {
        let (kind, file) = ("--graph", "nested-comb.tg");
        let (code, once, _) = call(&["--echo", "flatten", kind, &data(file)]);
        assert_eq!(code, 0);
        let dir = std::env::temp_dir().join(format!("omegaclone-echo-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let copy = dir.join(file);
        std::fs::write(&copy, &once).unwrap();
        assert_eq!(call(&["--echo", "flatten", kind, copy.to_str().unwrap()]).1, once);
        std::fs::remove_dir_all(dir).unwrap();
    }
    let echo_file = |args: &[&str], name: &str| {
        let (code, once, err) = call(args);
        assert_eq!(code, 0, "{err}");
        let dir = std::env::temp_dir().join(format!("omegaclone-echo2-{}-{name}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let copy = dir.join(name);
        std::fs::write(&copy, &once).unwrap();
        let again: Vec<&str> = args.iter().map(|a| if a.ends_with(name) { copy.to_str().unwrap() } else { a }).collect();
        assert_eq!(call(&again).1, once, "{name}");
        std::fs::remove_dir_all(dir).unwrap();
    };
    echo_file(&["--echo", "classify", "--graph", &data("alternating.tg")], "alternating.tg");
    echo_file(&["--echo", "game", "solve", &data("two-vertex.pg")], "two-vertex.pg");
    echo_file(&["--echo", "aut", "empty", "--aut", &data("b-infinitely-often.aut")], "b-infinitely-often.aut");

    let (_, t, _) = call(&["--echo", "classify", "--term", "(a  1\n (b 2 1))"]);
    assert_eq!(call(&["--echo", "classify", "--term", t.trim()]).1, t);
}

#[test]
fn seed_falls_back_to_the_environment() {
    let exe = env!("CARGO_BIN_EXE_omegaclone");
    let with_env = Command::new(exe)
        .args(["--porcelain", "laws", "--trials", "50"])
        .env("OMEGACLONE_SEED", "11")
        .output()
        .unwrap();
    assert!(with_env.status.success(), "{}", String::from_utf8_lossy(&with_env.stderr));
    let with_flag = Command::new(exe)
        .args(["--porcelain", "laws", "--trials", "50", "--seed", "11"])
        .env_remove("OMEGACLONE_SEED")
        .output()
        .unwrap();
    assert_eq!(with_env.stdout, with_flag.stdout);
    let without = Command::new(exe).args(["laws"]).env_remove("OMEGACLONE_SEED").output().unwrap();
    assert_eq!(without.status.code(), Some(2));
}

#[test]
fn help_succeeds() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("oracle"));
}

#[test]
fn solve_output_verifies() {
    let game = data("two-vertex.pg");
    let (code, solved, _) = call(&["game", "solve", &game]);
    assert_eq!(code, 0);
    let path = std::env::temp_dir().join(format!("omegaclone-sol-{}.txt", std::process::id()));
    std::fs::write(&path, solved).unwrap();
    let (code, out, err) = call(&["game", "verify", &game, path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}{err}");
    std::fs::write(&path, "paritysol 1;\n0 1;\n1 1;\n").unwrap();
    assert_eq!(call(&["game", "verify", &game, path.to_str().unwrap()]).0, 1);
    std::fs::remove_file(path).unwrap();
}
