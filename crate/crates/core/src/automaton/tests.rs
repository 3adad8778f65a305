use super::*;

fn grig() -> AutomatonSpec {
    AutomatonSpec::preset(Preset::Grigorchuk)
}

fn fg() -> AutomatonSpec {
    AutomatonSpec::preset(Preset::FabrykowskiGupta)
}

fn w(spec: &AutomatonSpec, text: &str) -> GroupWord {
    spec.parse_word(text).unwrap()
}

/// Leaf index from a string of letters, first letter most significant.
fn leaf(digits: &str, d: usize) -> usize {
    digits.bytes().fold(0, |acc, b| acc * d + (b - b'0') as usize)
}

#[test]
fn presets_load_by_name() {
    assert_eq!(AutomatonSpec::preset_by_name("grigorchuk").unwrap(), grig());
    assert_eq!(AutomatonSpec::preset_by_name("fabrykowski-gupta").unwrap(), fg());
    assert_eq!(
        AutomatonSpec::preset_by_name("nosuch").unwrap_err(),
        Error::UnknownPreset("nosuch".into())
    );
    let g = grig();
    assert_eq!(g.alphabet_size(), 2);
    let names: Vec<_> = g.genset().iter().map(|&s| g.state_name(s)).collect();
    assert_eq!(names, ["a", "b", "c", "d"]);
    let f = fg();
    assert_eq!(f.alphabet_size(), 3);
    let names: Vec<_> = f.genset().iter().map(|&s| f.state_name(s)).collect();
    assert_eq!(names, ["a", "A", "b", "B"]);
}

#[test]
fn root_permutations() {
    let g = grig();
    let swap = Perm::from_images(vec![1, 0]).unwrap();
    assert_eq!(g.root_permutation(&w(&g, "a")).unwrap(), swap);
    assert!(g.root_permutation(&w(&g, "b")).unwrap().is_identity());
    assert_eq!(g.root_permutation(&w(&g, "ab")).unwrap(), swap);
    assert_eq!(g.parse_word("ax").unwrap_err(), Error::UnknownLetter("x".into()));
}

#[test]
fn sections() {
    let g = grig();
    assert_eq!(g.section(&w(&g, "b"), 0).unwrap(), w(&g, "a"));
    assert_eq!(g.section(&w(&g, "b"), 1).unwrap(), w(&g, "c"));
    assert_eq!(g.section(&w(&g, "ab"), 0).unwrap(), w(&g, "c"));
    assert!(matches!(
        g.section(&w(&g, "b"), 2),
        Err(Error::LetterOutOfRange { letter: 2, alphabet_size: 2 })
    ));
    let f = fg();
    assert_eq!(f.section(&w(&f, "b"), 0).unwrap(), w(&f, "a"));
    assert_eq!(f.section(&w(&f, "b"), 1).unwrap(), GroupWord::identity());
    assert_eq!(f.section(&w(&f, "B"), 2).unwrap(), w(&f, "B"));
}

#[test]
fn canonical_forms() {
    let g = grig();
    let canon = |t: &str| g.format_word(&g.canonicalize(&w(&g, t)).unwrap());
    assert_eq!(canon("bc"), "d");
    assert_eq!(canon("aa"), "");
    assert_eq!(canon("abab"), "abab");
    assert_eq!(canon("abcdba"), "aba");
    assert_eq!(canon("abdca"), "");
    let f = fg();
    let canon = |t: &str| f.format_word(&f.canonicalize(&w(&f, t)).unwrap());
    assert_eq!(canon("aa"), "A");
    assert_eq!(canon("aaa"), "");
    assert_eq!(canon("abBa"), "A");
    assert_eq!(canon("bbAab"), "");
}

#[test]
fn small_identities() {
    let g = grig();
    assert!(g.is_identity(&w(&g, "aa")).unwrap());
    assert!(g.is_identity(&w(&g, "bcd")).unwrap());
    assert!(!g.is_identity(&w(&g, "abab")).unwrap());
    assert!(!g.is_identity(&w(&g, "a")).unwrap());
    assert!(g.is_identity(&GroupWord::identity()).unwrap());
}

#[test]
fn level_actions() {
    let g = grig();
    assert!(g.level_action(&w(&g, "abc"), 0).unwrap().is_identity());
    let a2 = g.level_action(&w(&g, "a"), 2).unwrap();
    assert_eq!(a2.apply(leaf("00", 2)), leaf("10", 2));
    assert_eq!(a2.apply(leaf("01", 2)), leaf("11", 2));
    assert!(g.level_action(&w(&g, "d"), 2).unwrap().is_identity());
    let b2 = g.level_action(&w(&g, "b"), 2).unwrap();
    assert_eq!(b2, Perm::from_cycles("(0 1)", 4).unwrap());
    assert!(matches!(
        g.level_action_capped(&w(&g, "a"), 11, 1024),
        Err(Error::Resource { .. })
    ));
}

#[test]
fn grigorchuk_classical_orders() {
    let g = grig();
    for (base, order) in [("ad", 4), ("ac", 8), ("ab", 16)] {
        let x = w(&g, base);
        assert!(g.is_identity(&x.pow(order)).unwrap(), "({base})^{order}");
        for k in 1..order {
            assert!(!g.is_identity(&x.pow(k)).unwrap(), "({base})^{k}");
            let nontrivial = (0..=12).any(|n| !g.level_action(&x.pow(k), n).unwrap().is_identity());
            assert!(nontrivial, "({base})^{k} should be visible at depth 12");
        }
        assert!(g.level_action(&x.pow(order), 12).unwrap().is_identity());
    }
}

#[test]
fn custom_document_round_trip_and_errors() {
    let doc = grig().to_doc();
    let text = serde_json::to_string(&doc).unwrap();
    assert_eq!(parse_automaton(&text).unwrap(), grig());
    assert_eq!(parse_automaton("grigorchuk").unwrap(), grig());

    let bad = r#"{"alphabet_size": 2,
        "states": [{"name": "a", "root_perm": "(0 1)", "sections": ["e", "x"]}],
        "genset": ["a"]}"#;
    match parse_automaton(bad).unwrap_err() {
        Error::Validation(msg) => assert!(msg.contains("`x`"), "{msg}"),
        other => panic!("unexpected {other:?}"),
    }

    let missing = r#"{"states": [], "genset": []}"#;
    match parse_automaton(missing).unwrap_err() {
        Error::Parse { message, .. } => assert!(message.contains("alphabet_size"), "{message}"),
        other => panic!("unexpected {other:?}"),
    }

    let bad_perm = r#"{"alphabet_size": 2,
        "states": [{"name": "a", "root_perm": [0, 0], "sections": ["e", "e"]}],
        "genset": ["a"]}"#;
    match parse_automaton(bad_perm).unwrap_err() {
        Error::Parse { field, .. } => assert_eq!(field, "states[0].root_perm"),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn custom_automaton_uses_free_reduction() {
    // The adding machine: t = (e, t) with the swap; t and T = t^-1.
    let doc = r#"{"alphabet_size": 2,
        "states": [
            {"name": "t", "root_perm": [1, 0], "sections": ["e", "t"]},
            {"name": "T", "root_perm": "(0 1)", "sections": ["T", "e"]}],
        "genset": ["t", "T"], "inverses": {"t": "T"}}"#;
    let spec = parse_automaton(doc).unwrap();
    assert_eq!(spec.canonicalize(&w(&spec, "tTTt t")).unwrap(), w(&spec, "t"));
    assert_eq!(spec.is_identity(&w(&spec, "tT")).unwrap_err(), Error::NoExactWordProblem);
    assert!(spec.equal_up_to_depth(&w(&spec, "tt"), &w(&spec, "tt"), 6).unwrap());
    assert!(!spec.equal_up_to_depth(&w(&spec, "tt"), &w(&spec, "T"), 6).unwrap());
}

#[test]
fn wrong_inverse_declaration_is_rejected() {
    let doc = r#"{"alphabet_size": 3,
        "states": [{"name": "a", "root_perm": "(0 1 2)", "sections": ["e", "e", "e"]}],
        "genset": ["a"]}"#;
    assert!(matches!(parse_automaton(doc), Err(Error::Validation(_))));
}

#[test]
fn preset_document_must_match_builtin() {
    let mut doc = fg().to_doc();
    doc.states[0].sections = vec!["e".into(), "e".into(), "a".into()];
    assert!(matches!(doc.to_spec(), Err(Error::Validation(_))));
}
