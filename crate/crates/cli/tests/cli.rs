use std::process::{Command, Output};

use ipl_core::semantics::parse_model;
use ipl_core::syntax::parse;

fn ipl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ipl"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn parse_prints_canonical_form() {
    let out = ipl(&["parse", "(p0 ⊃ p1) ∨ ¬p2 ∧ ⊥"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "(p0 -> p1) | ~p2 & false\n");
    let out = ipl(&["parse", "--symbolic", "p0 -> p1 -> p2"]);
    assert_eq!(stdout(&out), "p0 ⊃ p1 ⊃ p2\n");
    assert_eq!(code(&ipl(&["parse", "p0 &"])), 2);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&ipl(&["frobnicate"])), 2);
    assert_eq!(code(&ipl(&["decide", "--no-such-flag", "", "p0"])), 2);
    assert_eq!(code(&ipl(&[])), 2);
}

#[test]
fn check_proof_verdicts() {
    let out = ipl(&["check-proof", "tests/data/id.proof", "", "p0 -> p0"]);
    assert_eq!((code(&out), stdout(&out)), (0, "accept\n".into()));
    let out = ipl(&["check-proof", "tests/data/id.proof", "", "p1 -> p1"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("reject at root"));
    let out = ipl(&["check-proof", "tests/data/bad.proof", "p1", "p1 -> p0"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("reject at root:"), "{}", stdout(&out));
    assert_eq!(code(&ipl(&["check-proof", "tests/data/missing.proof", "", "p0"])), 3);
}

#[test]
fn eval_on_model_file() {
    let out = ipl(&["eval", "tests/data/lem.model", "0", "p0 | ~p0"]);
    assert_eq!((code(&out), stdout(&out)), (0, "false\n".into()));
    let out = ipl(&["eval", "tests/data/lem.model", "1", "p0 | ~p0"]);
    assert_eq!(stdout(&out), "true\n");
    assert_eq!(code(&ipl(&["eval", "tests/data/lem.model", "7", "p0"])), 2);
}

#[test]
fn decide_verdicts() {
    let out = ipl(&["decide", "", "p0 -> p0"]);
    assert_eq!((code(&out), stdout(&out)), (0, "provable\n".into()));
    let out = ipl(&["decide", "tests/data/hyps.ctx", "p0 -> p2"]);
    assert_eq!(stdout(&out), "provable\n");
    let out = ipl(&["decide", "", "p0 | ~p0"]);
    assert_eq!(code(&out), 1);
    let file = parse_model(&stdout(&out)).unwrap();
    let root = file.root.unwrap();
    assert_eq!(file.model.forces(root, &parse("p0 | ~p0").unwrap()), Ok(false));
    assert_eq!(code(&ipl(&["decide", "--budget", "2", "", "((p0 -> p1) -> p0) -> p0"])), 4);
}

#[test]
fn decide_and_countermodel_agree() {
    let cases = [
        ("", "p0 -> p0"),
        ("", "p0 | ~p0"),
        ("p0", "p0"),
        ("p0 -> p1", "p1"),
        ("", "~~(p0 | ~p0)"),
        ("", "((p0 -> p1) -> p0) -> p0"),
        ("p0 | p1, ~p0", "p1"),
        ("tests/data/hyps.ctx", "p2 -> p0"),
    ];
    for (ctx, p) in cases {
        let d = ipl(&["decide", ctx, p]);
        let c = ipl(&["countermodel", ctx, p]);
        assert_eq!(code(&d), code(&c), "{ctx} / {p}");
        if code(&c) == 1 {
            let file = parse_model(&stdout(&c)).unwrap();
            let w = file.root.unwrap();
            assert_eq!(file.model.forces(w, &parse(p).unwrap()), Ok(false), "{ctx} / {p}");
        }
    }
}

#[test]
fn countermodel_for_implication_context() {
    let out = ipl(&["countermodel", "p0 -> p1", "p1"]);
    assert_eq!(code(&out), 1);
    let file = parse_model(&stdout(&out)).unwrap();
    let w = file.root.unwrap();
    assert_eq!(file.model.forces(w, &parse("p0 -> p1").unwrap()), Ok(true));
    assert_eq!(file.model.forces(w, &parse("p1").unwrap()), Ok(false));
    assert_eq!(code(&ipl(&["countermodel", "--max-fragment", "2", "", "p0 | ~p0"])), 4);
}

#[test]
fn dot_output() {
    let out = ipl(&["decide", "--dot", "", "p0 | ~p0"]);
    assert!(stdout(&out).starts_with("digraph kripke {"));
}

#[test]
fn lem_demo_output() {
    let out = ipl(&["lem-demo"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("ff ⊮ p0 ∨ ~p0"));
    assert!(text.contains("rel: ff->ff ff->tt tt->tt"));
}

#[test]
fn henkin_demo_trace() {
    let out = ipl(&["henkin-demo", "p0 | p1, p0 -> p2", "p2", "--stages", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("stage 0: {p0 -> p2, p0 | p1}"));
    assert!(text.contains("#79 p1 | p0  adds p1"));
    assert!(text.contains("stage 2:") && !text.contains("stage 3:"));
    assert_eq!(code(&ipl(&["henkin-demo", "p0", "p0"])), 2);
}

#[test]
fn soundness_fuzz_clean() {
    let out = ipl(&["soundness-fuzz", "--seeds", "500", "--depth", "6", "--max-worlds", "3"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).ends_with("0 violations\n"));
    assert_eq!(code(&ipl(&["soundness-fuzz", "--max-worlds", "9"])), 2);
}
