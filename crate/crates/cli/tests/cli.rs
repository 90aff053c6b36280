use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;

use proptest::prelude::*;
use workbench::machine::{BinaryTM, Dir, HaltMode, Rule};
use workbench_cli::parse::{self, Kind, SpecFile, TmFile};
use workbench_cli::{dispatch, Outcome, COMMANDS};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Outcome {
    dispatch(std::iter::once("workbench").chain(args.iter().copied()))
}

#[test]
fn ww_ca_accepts_abab() {
    let out = run(&["ww-ca", "abab"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("accept"));
    let out = run(&["ww-ca", "abba"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.starts_with("reject"));
    assert_eq!(run(&["ww-ca", "abc"]).code, 2);
}

#[test]
fn carmichael_561_reports_a_factor() {
    let out = run(&["prime", "test", "561", "--seed", "1"]);
    assert_eq!(out.code, 1);
    let detail = out.stdout.split("Factor(").nth(1).expect("factor reported");
    let f: u64 = detail.split(')').next().unwrap().parse().unwrap();
    assert!(f > 1 && f < 561 && 561 % f == 0, "{f}");
    assert_eq!(run(&["prime", "test", "7919"]).code, 0);
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["no-such-command"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("Usage"));
    assert_eq!(run(&[]).code, 2);
    assert_eq!(run(&["run-tm", "/no/such/file.tm"]).code, 2);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn syntax_errors_carry_position() {
    let path = std::env::temp_dir().join(format!("workbench-bad-{}.tm", std::process::id()));
    std::fs::write(&path, "start: q0\nrule q0 0 -> q1 1 X\n").unwrap();
    let out = run(&["run-tm", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("line 2, column 19"), "{}", out.stderr);
}

#[test]
fn run_tm_matches_bitwise_not() {
    for input in ["0", "1", "0110", "111000"] {
        let out = run(&["run-tm", &data("flip.tm"), "--input", input]);
        let want: String = input.chars().map(|c| if c == '0' { '1' } else { '0' }).collect();
        assert!(out.stdout.trim_end().ends_with(&format!("tape {want}")), "{}", out.stdout);
    }
}

#[test]
fn utm_trace_has_one_line_per_cycle() {
    let out = run(&["run-utm", "@seek-zero", "--input", "110", "--trace"]);
    assert_eq!(out.code, 0);
    let cycles = out.stdout.lines().filter(|l| l.starts_with("cycle ")).count();
    assert!(out.stdout.contains("after 3 cycles"));
    assert_eq!(cycles, 4);
}

#[test]
fn encode_utm_uses_the_documented_alphabet() {
    let out = run(&["encode-utm", &data("increment.tm"), "--input", "101"]);
    let tape = out.stdout.trim();
    assert!(tape.ends_with("101"));
    assert!(tape.chars().all(|c| "01*oix".contains(c)), "{tape}");
}

#[test]
fn batcher_sorts_and_prints_layers() {
    let out = run(&["batcher", "--sort", &data("numbers.txt")]);
    assert_eq!(out.stdout.lines().next(), Some("1 2 3 5 6 7 8 9"));
    for k in 1..=5u32 {
        let out = run(&["batcher", "--emit-schedule", &k.to_string()]);
        assert_eq!(out.stdout.lines().count() as u32, k * (k + 1) / 2);
        let out = run(&["batcher", "--emit-schedule", &k.to_string(), "--merge"]);
        assert_eq!(out.stdout.lines().count() as u32, k);
    }
    assert_eq!(run(&["batcher"]).code, 2);
}

#[test]
fn game_methods_agree() {
    let files = [("linchess", data("linear.game")), ("1dchess", data("oned.game"))];
    for (game, file) in &files {
        let retro = run(&["solve-game", "--game", game, "--file", file]);
        let dfs = run(&["solve-game", "--game", game, "--file", file, "--method", "dfs"]);
        assert_eq!(retro.code, 0, "{}", retro.stderr);
        assert_eq!(retro.stdout, dfs.stdout);
    }
    let dump = run(&["solve-game", "--game", "match", "--boxes", "2,1,1", "--dump-values"]);
    assert!(dump.stdout.lines().filter(|l| l.contains(" -> ")).count() > 5);
    let wrong = run(&["solve-game", "--game", "1dchess", "--file", &data("linear.game")]);
    assert_eq!(wrong.code, 2);
}

#[test]
fn halting_game_exit_code_follows_the_machine() {
    assert_eq!(run(&["solve-game", "--game", "halting", "--tm", "@halt-left", "--input", "01"]).code, 0);
    assert_eq!(run(&["solve-game", "--game", "halting", "--tm", "@ones", "--input", "01"]).code, 1);
}

#[test]
fn budget_flag_and_env_cap_the_search() {
    let out = run(&["solve-game", "--game", "match", "--budget", "5"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("more than 5 positions"));
    let bin = env!("CARGO_BIN_EXE_workbench");
    let out = Command::new(bin).args(["solve-game", "--game", "match"]).env("WORKBENCH_BUDGET", "5").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(bin).args(["solve-game", "--game", "match"]).env_remove("WORKBENCH_BUDGET").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn crypto_roundtrip_through_files() {
    let dir = std::env::temp_dir().join(format!("workbench-keys-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let key = dir.join("k.keys");
    let cipher = dir.join("c.txt");
    let out = run(&["keygen", "--bits", "40", "--seed", "9"]);
    assert!(out.stdout.starts_with(workbench_cli::BANNER));
    std::fs::write(&key, &out.stdout).unwrap();
    let enc = run(&["encrypt", "--key", key.to_str().unwrap(), "--message", "110100111", "--seed", "2"]);
    std::fs::write(&cipher, &enc.stdout).unwrap();
    let dec = run(&["decrypt", "--key", key.to_str().unwrap(), "--cipher", cipher.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(dec.code, 0, "{}", dec.stderr);
    assert_eq!(dec.stdout.lines().last(), Some("110100111"));
}

/// One successful invocation per command in the table.
fn samples() -> Vec<Vec<String>> {
    let v = |args: &[&str]| args.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    vec![
        v(&["run-tm", &data("increment.tm"), "--input", "1101"]),
        v(&["run-utm", &data("flip.tm"), "--input", "01"]),
        v(&["encode-utm", &data("seek.tm")]),
        v(&["run-ca", &data("rule90.ca"), "--row", "0001000", "--steps", "3"]),
        v(&["life", &data("glider.life"), "--steps", "4"]),
        v(&["ww-ca", "abab"]),
        v(&["batcher", "--emit-schedule", "3"]),
        v(&["solve-game", "--game", "match"]),
        v(&["tiling", "solve", &data("strip.tiles"), "--method", "dp"]),
        v(&["ip-demo", "--trials", "20"]),
        v(&["prime", "gen", "--bits", "20"]),
        v(&["keygen", "--bits", "20"]),
        v(&["encrypt", "--key", &data("key21.keys"), "--message", "101"]),
        v(&["decrypt", "--key", &data("key21.keys"), "--cipher", &data("c21.txt")]),
        v(&["prg", "--len", "16"]),
        v(&["gl-demo", "--k", "8", "--trials", "4"]),
        v(&["extract", "--draws", "5"]),
        v(&["nextbit", "--trials", "50"]),
        v(&["qsort-bench", "--n", "16", "--trials", "20"]),
        v(&["hc-demo", "--n", "8", "--trials", "20"]),
        v(&["philosophers", "--n", "4"]),
        v(&["kolmogorov", "--x", "010101"]),
    ]
}

#[test]
fn every_module_is_reachable() {
    let modules: BTreeSet<&str> = COMMANDS.iter().map(|c| c.1).collect();
    let library = [
        "machine", "utm", "cellular", "batcher", "games", "tiling", "sumcheck", "numtheory", "crypto", "randomized",
        "kolmogorov",
    ];
    assert_eq!(modules, library.into_iter().collect());
    let help = run(&["--help"]).stdout;
    let samples = samples();
    assert_eq!(samples.len(), COMMANDS.len());
    for ((name, _), argv) in COMMANDS.iter().zip(&samples) {
        assert!(help.contains(name), "{name} missing from help");
        assert_eq!(argv[0], *name);
        let out = dispatch(std::iter::once("workbench".to_string()).chain(argv.iter().cloned()));
        assert_eq!(out.code, 0, "{argv:?}: {}", out.stderr);
        assert!(!out.stdout.is_empty(), "{argv:?}");
    }
}

#[test]
fn same_seed_same_bytes() {
    for argv in samples() {
        let with_seed = |s: &str| {
            let mut a: Vec<String> = vec!["workbench".into(), "--seed".into(), s.into()];
            a.extend(argv.iter().cloned());
            dispatch(a)
        };
        assert_eq!(with_seed("17"), with_seed("17"), "{argv:?}");
    }
    let key = |s: &str| run(&["keygen", "--seed", s]).stdout;
    assert_ne!(key("1"), key("2"));
}

#[test]
fn json_mode_emits_objects() {
    for argv in samples() {
        let mut a: Vec<String> = vec!["workbench".into(), "--json".into()];
        a.extend(argv.iter().cloned());
        let out = dispatch(a);
        for line in out.stdout.lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap_or_else(|e| panic!("{argv:?}: {line}: {e}"));
            assert!(v.is_object());
        }
    }
}

#[test]
fn data_files_roundtrip() {
    let files = [
        ("flip.tm", Kind::Tm),
        ("increment.tm", Kind::Tm),
        ("seek.tm", Kind::Tm),
        ("rule90.ca", Kind::Ca),
        ("glider.life", Kind::Life),
        ("strip.tiles", Kind::Tiles),
        ("linear.game", Kind::Game),
        ("oned.game", Kind::Game),
        ("key21.keys", Kind::Keys),
    ];
    for (name, kind) in files {
        let text = std::fs::read_to_string(data(name)).unwrap();
        let spec = parse::parse_spec(&text, kind).unwrap_or_else(|e| panic!("{name}: {e}"));
        let printed = parse::print_spec(&spec);
        assert_eq!(parse::parse_spec(&printed, kind).unwrap(), spec, "{name}");
        assert_eq!(parse::print_spec(&parse::parse_spec(&printed, kind).unwrap()), printed, "{name}");
    }
    let c = parse::parse_ciphertext(&std::fs::read_to_string(data("c21.txt")).unwrap()).unwrap();
    assert_eq!(parse::parse_ciphertext(&parse::print_ciphertext(&c)).unwrap(), c);
}

#[test]
fn reduction_output_reparses() {
    let out = run(&["tiling", "reduce", "--tm", "@increment", "--input", "1", "--height", "3", "--emit"]);
    let inst = parse::parse_tiles(&out.stdout).unwrap();
    assert_eq!(parse::parse_spec(&inst.to_string(), Kind::Tiles).unwrap(), SpecFile::Tiles(inst));
}

fn arb_tm() -> impl Strategy<Value = BinaryTM> {
    (1usize..5, 0usize..3).prop_flat_map(|(n, mode)| {
        let total = if mode == 2 { n + 1 } else { n };
        let rule = (0..total, any::<bool>(), any::<bool>())
            .prop_map(|(next, write, r)| Rule { next, write, dir: if r { Dir::R } else { Dir::L } });
        proptest::collection::vec(rule, 2 * n).prop_map(move |rules| {
            let (mode, halts) = match mode {
                0 => (HaltMode::LeftRollOff, vec![]),
                1 => (HaltMode::RightRollOff, vec![]),
                _ => (HaltMode::ExplicitHaltState, vec![n]),
            };
            let rules = rules.into_iter().enumerate().map(|(i, r)| (i / 2, i % 2 == 1, r));
            BinaryTM::new(total, 0, rules, halts, mode).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn machine_print_parse_identity(tm in arb_tm()) {
        let names = (0..tm.state_count()).map(|i| format!("s{i}")).collect();
        let file = TmFile { tm, names };
        let text = parse::print_tm(&file);
        prop_assert_eq!(parse::parse_tm(&text).unwrap(), file);
    }
}
