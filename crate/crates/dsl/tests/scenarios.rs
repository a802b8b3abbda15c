use std::path::PathBuf;

use quartica_dsl::{parse_field_spec, parse_source, run_source, tokenize, DslError, Evaluator, Status, TokenKind};

fn scenario_dir() -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "..", "..", "scenarios"].iter().collect()
}

fn load(name: &str) -> String {
    std::fs::read_to_string(scenario_dir().join(name)).unwrap()
}

#[test]
fn shipped_scenarios_pass() {
    for name in ["fermat_lines.qsc", "kk_lines.qsc", "sextactic.qsc", "conics.qsc"] {
        let r = run_source(&load(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(!r.checks.is_empty(), "{name} asserts nothing");
        assert_eq!(r.exit_code(), 0, "{name}:\n{}", r.to_text());
    }
}

#[test]
fn negative_control_fails_with_computed_value() {
    let r = run_source(&load("negative_control.qsc")).unwrap();
    assert_eq!(r.exit_code(), 1);
    let c = &r.checks[0];
    assert_eq!(c.status, Status::Fail);
    assert_eq!((c.computed.as_str(), c.expected.as_str()), ("4", "5"));
}

#[test]
fn every_scenario_parses() {
    let mut seen = 0;
    for entry in std::fs::read_dir(scenario_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "qsc") {
            parse_source(&std::fs::read_to_string(&path).unwrap()).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            seen += 1;
        }
    }
    assert!(seen >= 5);
}

#[test]
fn lexer_examples() {
    let kinds: Vec<(TokenKind, String)> = tokenize("let a = 1/2").unwrap().into_iter().map(|t| (t.kind, t.lexeme)).collect();
    let want = [
        (TokenKind::Keyword, "let"),
        (TokenKind::Ident, "a"),
        (TokenKind::Punct, "="),
        (TokenKind::Integer, "1"),
        (TokenKind::Punct, "/"),
        (TokenKind::Integer, "2"),
    ];
    assert_eq!(kinds, want.map(|(k, s)| (k, s.to_string())));
    let err = tokenize("let b = @").unwrap_err();
    assert!(matches!(err, DslError::Lex { .. }));
    assert_eq!(err.span().column, 9);
}

#[test]
fn field_specs_match_the_cli_form() {
    let t = parse_field_spec("Q(i:-1,r2:2,q2:r2,s3:3,s5:5)").unwrap();
    assert_eq!(t.degree(), 32);
    assert_eq!(parse_field_spec("Q()").unwrap().degree(), 1);
    let mut ev = Evaluator::with_tower(parse_field_spec("Q(i: -1, r2: 2, q2: r2)").unwrap());
    assert_eq!(ev.eval_str("((1 + i)*r2/2)^4").unwrap().to_string(), "-1");
    assert!(parse_field_spec("Q(s: 4)").is_err());
}

#[test]
fn assertions_report_spans() {
    let text = "field T = Q(i: -1)\nlet a = i^2\nassert a == -1\nassert a != -1\n";
    let r = run_source(text).unwrap();
    assert_eq!(r.checks.iter().map(|c| c.status).collect::<Vec<_>>(), vec![Status::Pass, Status::Fail]);
    assert_eq!(r.checks[1].span.line, 4);
}
