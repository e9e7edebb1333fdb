use voaforge_core::sample;
use voaforge_core::text::{format_plain, format_pretty, from_json, parse, parse_with, to_json, ParseError};
use voaforge_core::weil::OperatorTable;
use voaforge_core::{wick, Expr, Letter, LieAlgebra, Species};

const CORPUS: &[&str] = &[
    "0",
    "1",
    "-3/4",
    "b[x]",
    "c[y]",
    "beta[h]",
    "gamma[x]",
    "d^2 beta[h]",
    "d^3 c[h]",
    ":b[x] c[x]:",
    ":beta[x] gamma[y]:",
    ":b[x] b[y] b[h]:",
    "2 :beta[h] gamma[x]: - 1/3 :b[y] c[h]:",
    "1/2 (:gamma[h] gamma[h]: + :gamma[x] gamma[y]:)",
    ":d^1 b[x] d^2 c[y]:",
    "d^1 :b[x] c[x]:",
    ":(b[x] + c[y]) beta[h]:",
    "7/5 + b[x]",
    ":gamma[h] :gamma[x] beta[y]::",
    "-(b[x] - 2 c[y])",
];

fn table() -> &'static OperatorTable {
    OperatorTable::sl2()
}

fn roundtrip(e: &Expr) {
    let lie = &table().lie;
    let text = format_plain(e, Some(lie));
    let back = parse(&text, lie).unwrap_or_else(|err| panic!("`{text}` does not reparse: {err}"));
    assert_eq!(&back, e, "{text}");
    assert_eq!(&from_json(&to_json(e, Some(lie)), lie).unwrap(), e);
}

#[test]
fn grammar_examples() {
    let lie = LieAlgebra::sl2();
    let t = table();
    assert_eq!(parse(":b[x] c[x]:", &lie).unwrap(), wick(&parse("b[x]", &lie).unwrap(), &parse("c[x]", &lie).unwrap()));
    assert_eq!(parse("d^2 beta[h]", &lie).unwrap(), Expr::letter(Letter::new(Species::Beta, 2, 2)));
    assert_eq!(parse("1/2 (:gamma[h] gamma[h]: + :gamma[x] gamma[y]:)", &lie).unwrap(), t.v_x);
    assert_eq!(parse_with("@v_x", &lie, t).unwrap(), t.v_x);
}

#[test]
fn parse_errors_carry_positions() {
    let lie = LieAlgebra::sl2();
    match parse("b[x] +\n  :c[y]", &lie) {
        Err(ParseError::Syntax { line, column, expected, .. }) => {
            assert_eq!(line, 2);
            assert!(column >= 3);
            assert!(!expected.is_empty());
        }
        other => panic!("expected a syntax error, got {other:?}"),
    }
    assert!(matches!(parse("b[z]", &lie), Err(ParseError::UnknownLabel { ref label, line: 1, column: 3 }) if label == "z"));
    assert!(matches!(parse("@nope", &lie), Err(ParseError::UnknownOperator { .. })));
    assert!(matches!(parse("b[x] b[y]", &lie), Err(ParseError::Syntax { .. })));
}

#[test]
fn round_trip_corpus_covers_every_named_operator() {
    let t = table();
    let mut count = 0;
    for text in CORPUS {
        roundtrip(&parse(text, &t.lie).unwrap_or_else(|e| panic!("{text}: {e}")));
        count += 1;
    }
    for name in t.names() {
        let e = t.get(&name).unwrap();
        roundtrip(&e);
        assert_eq!(parse_with(&format!("@{name}"), &t.lie, t).unwrap(), e);
        count += 1;
    }
    let mut rng = sample::rng(0);
    for w in 0..5 {
        for _ in 0..4 {
            roundtrip(&sample::homogeneous(&mut rng, 3, w, 4, 3));
            count += 1;
        }
    }
    assert!(count >= 50, "{count}");
}

#[test]
fn pretty_printing_uses_primes_on_dual_letters() {
    let t = table();
    let pretty = format_pretty(&t.k_op, Some(&t.lie));
    assert!(pretty.contains("γ^{h'}"), "{pretty}");
    assert!(pretty.contains("b^h"), "{pretty}");
    assert_eq!(format_pretty(&Expr::zero(), None), "0");
}
