use std::path::Path;
use std::process::{Command, Output};

use coalition_forge::gamefile::GameFile;
use coalition_forge::report::{AnalyzeReport, EnumerateReport, ProfileFile, SolveReport, StabilityReport};
use coalition_forge_core::catalog;
use coalition_forge_core::solver::verify_epsilon_nash;
use coalition_forge_core::{parse_rational, Rational};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coalition-forge"))
        .args(args)
        .env_remove("COALITION_FORGE_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&["catalog"]), 0);
    assert_eq!(code(&["solve"]), 2, "missing source");
    assert_eq!(code(&["solve", "pd-standard", "--method", "magic"]), 2);
    assert_eq!(code(&["solve", "no-such-game"]), 2);
    assert_eq!(code(&["solve", "bos", "--param", "eps=-1"]), 2);
    assert_eq!(code(&["solve", "bos", "--param", "zeta=1"]), 2);
    assert_eq!(code(&["catalog", "--id", "chess"]), 2);
    assert_eq!(code(&["enumerate", "-n", "3", "-K", "0"]), 2);
    assert_eq!(code(&["enumerate", "-n", "43", "-K", "43", "--count-only"]), 2);
    assert_eq!(code(&["analyze", "pd-extended", "--coalition", "1,3"]), 2);

    let broken = write(dir.path(), "broken.json", "{\"schema_version\": 1,");
    assert_eq!(code(&["solve", &broken]), 2);
    let extra =
        write(dir.path(), "extra.json", &stdout(&["export", "pd-standard"]).replacen('{', "{\"colour\": 1,", 1));
    assert_eq!(code(&["solve", &extra]), 2);

    let mut file = GameFile::from_json(&stdout(&["export", "pd-extended"])).unwrap();
    file.payoffs.remove("0,0");
    let missing = write(dir.path(), "missing.json", &file.to_json());
    assert_eq!(code(&["solve", &missing]), 3);

    let standard = write(dir.path(), "standard.json", &stdout(&["export", "pd-standard"]));
    let introverts = write(dir.path(), "introverts.json", &stdout(&["export", "pd-introverts"]));
    assert_eq!(code(&["stability", &standard, &introverts, "--K0", "1"]), 3);
    let extended = write(dir.path(), "extended.json", &stdout(&["export", "pd-extended"]));
    assert_eq!(code(&["stability", &standard, &extended, "--K0", "1"]), 0);
}

#[test]
fn truncated_search_is_a_diagnostic() {
    let out = run(&["--json", "solve", "bos", "--method", "support", "--max-support", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let report: SolveReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.truncated);
    assert!(!report.diagnostics.is_empty());
    assert!(report.equilibria.iter().all(|e| e.weights.iter().all(|w| w.iter().filter(|x| *x != "0/1").count() == 1)));
}

#[test]
fn non_convergence_is_a_diagnostic() {
    let out = run(&["--json", "solve", "bos", "--method", "iterative", "--max-iterations", "3", "--start", "random"]);
    assert_eq!(out.status.code(), Some(0));
    let report: SolveReport = serde_json::from_slice(&out.stdout).unwrap();
    if !report.equilibria[0].is_equilibrium {
        assert!(report.diagnostics.iter().any(|d| d.contains("did not converge")));
    }
}

#[test]
fn identical_invocations_give_identical_bytes() {
    for args in [
        &["--json", "solve", "lunch", "--method", "iterative", "--start", "random", "--seed", "11"][..],
        &["--json", "solve", "bos", "--method", "support"][..],
        &["--json", "stability", "lunch", "--K0", "2"][..],
        &["--json", "analyze", "pd-extroverts", "--coalition", "1,2"][..],
    ] {
        assert_eq!(stdout(args), stdout(args), "{args:?}");
    }
}

#[test]
fn seed_comes_from_the_environment() {
    let base = ["--json", "solve", "bos", "--param", "eps=0", "--method", "iterative", "--start", "random"];
    let mut flag = base.to_vec();
    flag.extend(["--seed", "42"]);
    let by_flag = stdout(&flag);
    let by_env = Command::new(env!("CARGO_BIN_EXE_coalition-forge"))
        .args(base)
        .env("COALITION_FORGE_SEED", "42")
        .output()
        .unwrap();
    assert!(by_env.status.success());
    assert_eq!(String::from_utf8(by_env.stdout).unwrap(), by_flag);
}

#[test]
fn export_then_solve_gives_the_same_equilibria() {
    let dir = tempfile::tempdir().unwrap();
    for e in catalog::entries() {
        let path = dir.path().join(format!("{}.json", e.id)).display().to_string();
        assert_eq!(stdout(&["export", e.id, "--output", &path]), "");
        let method = if e.players.len() == 2 { "support" } else { "iterative" };
        let a: SolveReport = serde_json::from_str(&stdout(&["--json", "solve", e.id, "--method", method])).unwrap();
        let b: SolveReport = serde_json::from_str(&stdout(&["--json", "solve", &path, "--method", method])).unwrap();
        assert_eq!(a.equilibria, b.equilibria, "{}", e.id);
        assert_eq!(a.game.strategies, b.game.strategies);
        assert!(!a.equilibria.is_empty());
    }
}

#[test]
fn reports_parse_back_to_the_same_numbers() {
    for id in ["pd-mixed", "bos", "stag-hare"] {
        let text = stdout(&["--json", "solve", id, "--method", "support"]);
        let report: SolveReport = serde_json::from_str(&text).unwrap();
        assert_eq!(coalition_forge::report::to_json(&report), text);
        let game = catalog::build(id, &[]).unwrap().game;
        for e in &report.equilibria {
            let profile = e.exact_profile().unwrap();
            let v = verify_epsilon_nash(&game, &profile, 0.0).unwrap();
            assert!(v.passed);
            let payoffs: Vec<Rational> = e.expected_payoffs.iter().map(|p| parse_rational(p).unwrap()).collect();
            assert_eq!(payoffs, v.expected_payoffs, "{id}");
            let total: Rational = e.partitions.iter().map(|p| parse_rational(&p.probability).unwrap()).sum();
            assert_eq!(total, Rational::from_integer(1.into()));
        }
    }
    let text = stdout(&["--json", "stability", "stag-hare", "--K0", "1"]);
    let report: StabilityReport = serde_json::from_str(&text).unwrap();
    assert_eq!(coalition_forge::report::to_json(&report), text);
    let text = stdout(&["--json", "enumerate", "-n", "5", "-K", "3"]);
    let report: EnumerateReport = serde_json::from_str(&text).unwrap();
    assert_eq!(report.count, 46);
    assert_eq!(report.partitions.unwrap().len(), 46);
}

#[test]
fn analyze_reads_a_profile_file() {
    let dir = tempfile::tempdir().unwrap();
    let game = catalog::build_lunch();
    let profile = catalog::lunch_pairing_profile(&game).unwrap();
    let path = write(dir.path(), "claimed.json", &serde_json::to_string(&ProfileFile::from_profile(&profile)).unwrap());
    let report: AnalyzeReport =
        serde_json::from_str(&stdout(&["--json", "analyze", "lunch", "--profile", &path, "--coalition", "A,B"]))
            .unwrap();
    assert_eq!(report.source, "profile file");
    let a = &report.analyses[0];
    assert!(a.equilibrium.is_equilibrium);
    assert_eq!(a.stochastic, Some(true));
    assert_eq!(a.equilibrium.expected_payoffs, vec!["137/27"; 4]);

    // A profile that is not an equilibrium is reported, not analysed.
    let pure = coalition_forge_core::solver::MixedProfile::pure(
        game.space().sizes(),
        &coalition_forge_core::game::StrategyProfile::new(vec![0, 1, 2, 3]),
    )
    .unwrap();
    let pure_path = write(dir.path(), "pure.json", &serde_json::to_string(&ProfileFile::from_profile(&pure)).unwrap());
    let report: AnalyzeReport =
        serde_json::from_str(&stdout(&["--json", "analyze", "lunch", "--profile", &pure_path])).unwrap();
    let a = &report.analyses[0];
    if !a.equilibrium.is_equilibrium {
        assert_eq!(a.stochastic, None);
        assert!(!report.diagnostics.is_empty());
    }

    let wrong_shape = write(dir.path(), "wrong.json", "{\"schema_version\": 1, \"weights\": [[\"1/1\"]]}");
    assert_eq!(code(&["analyze", "lunch", "--profile", &wrong_shape]), 2);
}

#[test]
fn human_tables_show_pairs_and_partitions() {
    let text = stdout(&["solve", "pd-extended", "--method", "pure"]);
    assert!(text.contains("(-2;-2) {1,2} *"));
    assert!(text.contains("(-2;-2) {1}{2} *"));
    assert!(text.contains("4 equilibria by pure-enum"));
    let text = stdout(&["solve", "lunch", "--method", "pure"]);
    assert!(text.contains("more (use --json for the full list)"));
    assert_eq!(stdout(&["enumerate", "-n", "4", "-K", "4", "--count-only"]), "15\n");
}

#[test]
fn analyze_examples_from_the_command_line() {
    let ext: AnalyzeReport = serde_json::from_str(&stdout(&[
        "--json",
        "analyze",
        "pd-extroverts",
        "--param",
        "eps=1",
        "--coalition",
        "1,2",
    ]))
    .unwrap();
    assert!(ext.analyses.iter().any(|a| a.cooperation.as_ref().is_some_and(|c| c.complete)));
    let mixed: AnalyzeReport =
        serde_json::from_str(&stdout(&["--json", "analyze", "pd-mixed", "--param", "eps=1,delta=1"])).unwrap();
    assert!(mixed.analyses.iter().all(|a| a.stochastic == Some(false)));
}
