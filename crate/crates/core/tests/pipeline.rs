mod common;

use coarsetiler::cayley::build_ball;
use coarsetiler::format::{from_json, to_canonical_json, BallDump, ChainDump, PatchDoc, TileDump};
use coarsetiler::quotient::{closure, level_quotient, project, DEFAULT_ELEMENT_CAP};
use coarsetiler::tiles::{decorate, decorate_graph, matching_violations, verify_tiling, FaceProfile, Polarity};
use coarsetiler::{solve_on_ball, AutomatonSpec, Chain0, Chain1, Edge, Genset, Modulus, Preset, ToyGraph};
use common::*;
use rand::Rng;

fn both_presets() -> [AutomatonSpec; 2] {
    [
        AutomatonSpec::preset(Preset::Grigorchuk),
        AutomatonSpec::preset(Preset::FabrykowskiGupta),
    ]
}

#[test]
fn ball_sizes() {
    let expected: [&[usize]; 2] = [
        &[1, 5, 11, 23, 40, 68, 108, 176, 271],
        &[1, 5, 13, 29, 61, 125, 253, 509, 1021],
    ];
    for (spec, sizes) in both_presets().iter().zip(expected) {
        for (r, &size) in sizes.iter().enumerate() {
            assert_eq!(build_ball(spec, r).unwrap().vertex_count(), size, "{} R = {r}", spec.name());
        }
    }
}

#[test]
fn smaller_ball_is_a_prefix() {
    for spec in both_presets() {
        let mut prev = build_ball(&spec, 0).unwrap();
        for r in 1..=7 {
            let ball = build_ball(&spec, r).unwrap();
            let n = prev.vertex_count();
            assert_eq!(&ball.words()[..n], prev.words());
            let mut inner: Vec<Edge> = ball
                .graph()
                .edges()
                .iter()
                .copied()
                .filter(|e| e.head < n)
                .collect();
            let mut old = prev.graph().edges().to_vec();
            inner.sort();
            old.sort();
            assert_eq!(inner, old, "{} R = {r}", spec.name());
            prev = ball;
        }
    }
}

#[test]
fn degree_and_growth_bounds() {
    for spec in both_presets() {
        let s = spec.genset().len();
        let mut prev = 1;
        for r in 1..=7 {
            let ball = build_ball(&spec, r).unwrap();
            let g = ball.graph();
            for v in 0..g.vertex_count() {
                assert!(g.incident(v).len() <= s);
                if !ball.is_sphere(v) {
                    assert_eq!(g.incident(v).len(), s, "interior vertex {v} must have full degree");
                }
                if v > 0 {
                    let d = ball.distance(v);
                    assert!(g.incident(v).iter().any(|&e| ball.distance(g.other_end(e, v)) + 1 == d));
                }
            }
            for e in g.edges() {
                assert!(e.tail < e.head);
                let product = ball.words()[e.tail].concat(&spec.word_from_names(&[ball.genset().name(e.label)]).unwrap());
                assert!(spec.words_equal(&product, &ball.words()[e.head]).unwrap());
            }
            assert!(ball.vertex_count() <= 1 + s * prev);
            prev = ball.vertex_count();
        }
    }
}

#[test]
fn quotient_orders_are_prime_powers() {
    let expected: [(&[u64], u64); 2] = [(&[2, 8, 128, 4096], 2), (&[3, 81, 59049], 3)];
    for (spec, (orders, q)) in both_presets().iter().zip(expected) {
        for (i, &order) in orders.iter().enumerate() {
            let group = closure(&level_quotient(spec, i + 1).unwrap(), DEFAULT_ELEMENT_CAP).unwrap();
            assert_eq!(group.order(), order);
            assert!(is_power_of(order, q));
            assert!(group.cayley.is_connected());
        }
    }
}

#[test]
fn deeper_actions_project_to_shallower_ones() {
    let mut rng = rng(7);
    for spec in both_presets() {
        let d = spec.alphabet_size();
        for n in 0..5 {
            let lower = level_quotient(&spec, n).unwrap();
            let upper = level_quotient(&spec, n + 1).unwrap();
            for (g, h) in lower.generators.iter().zip(&upper.generators) {
                assert_eq!(&project(h, d, 1), g);
            }
            for _ in 0..50 {
                let w = random_word(&spec, &mut rng, 15);
                let deep = spec.level_action(&w, n + 2).unwrap();
                assert_eq!(project(&deep, d, 2), spec.level_action(&w, n).unwrap());
            }
        }
    }
}

fn named(names: &[&str], inverse: Vec<usize>) -> Genset {
    Genset::new(names.iter().map(|s| s.to_string()).collect(), inverse).unwrap()
}

fn labelled_cycle(n: usize) -> (ToyGraph, Genset) {
    let edges = (0..n).map(|i| Edge { tail: i, head: (i + 1) % n, label: 0 }).collect();
    (ToyGraph::new(n, edges, &[]).unwrap(), named(&["t", "T"], vec![1, 0]))
}

fn klein_four() -> (ToyGraph, Genset) {
    let edges = [(0, 1, 0), (2, 3, 0), (0, 2, 1), (1, 3, 1), (0, 3, 2), (1, 2, 2)]
        .into_iter()
        .map(|(tail, head, label)| Edge { tail, head, label })
        .collect();
    (ToyGraph::new(4, edges, &[]).unwrap(), named(&["x", "y", "z"], vec![0, 1, 2]))
}

/// Quotient Cayley graphs drop loops; keep only the generators that label
/// an edge so every tile is complete.
fn moving_generators_only(graph: &ToyGraph, genset: &Genset) -> (ToyGraph, Genset) {
    let mut used: Vec<usize> = graph.edges().iter().flat_map(|e| [e.label, genset.inverse(e.label)]).collect();
    used.sort();
    used.dedup();
    let names: Vec<&str> = used.iter().map(|&s| genset.name(s)).collect();
    let inverse = used.iter().map(|&s| used.binary_search(&genset.inverse(s)).unwrap()).collect();
    let edges = graph
        .edges()
        .iter()
        .map(|e| Edge { label: used.binary_search(&e.label).unwrap(), ..*e })
        .collect();
    (ToyGraph::new(graph.vertex_count(), edges, &[]).unwrap(), named(&names, inverse))
}

/// Whether some 1-chain on the closed graph decorates to a patch passing
/// verification everywhere.
fn some_closed_patch_passes(graph: &ToyGraph, genset: &Genset, p: Modulus) -> bool {
    let m = graph.edge_count();
    let region = vec![true; graph.vertex_count()];
    let mut digits = vec![0i64; m];
    loop {
        let psi = Chain1::from_values(digits.iter().copied(), p);
        let patch = decorate_graph(graph, genset, &psi, &region).unwrap().patch(graph).unwrap();
        assert!(patch.interior().iter().all(|&b| b));
        if verify_tiling(&patch).is_ok() {
            return true;
        }
        let Some(i) = digits.iter().position(|&x| x + 1 < p.get() as i64) else {
            return false;
        };
        digits[i] += 1;
        digits[..i].iter_mut().for_each(|x| *x = 0);
    }
}

#[test]
fn closed_patches_exist_only_when_p_divides_the_size() {
    let mut cases: Vec<(ToyGraph, Genset)> = (3..=6).map(labelled_cycle).collect();
    cases.push(klein_four());
    for spec in both_presets() {
        let q = closure(&level_quotient(&spec, 1).unwrap(), DEFAULT_ELEMENT_CAP).unwrap();
        cases.push(moving_generators_only(&q.cayley, &spec.genset_info()));
    }
    for (graph, genset) in &cases {
        for p in PRIMES {
            let n = graph.vertex_count() as u32;
            assert_eq!(
                some_closed_patch_passes(graph, genset, modulus(p)),
                n % p == 0,
                "|V| = {n}, p = {p}"
            );
        }
    }
}

#[test]
fn matching_is_symmetric() {
    let mut rng = rng(11);
    for spec in both_presets() {
        for p in PRIMES {
            let p = modulus(p);
            let ball = build_ball(&spec, 5).unwrap();
            let psi = solve_on_ball(ball.graph(), &Chain0::ones(ball.vertex_count(), p)).unwrap();
            let mut patch = decorate(&ball, &psi).unwrap().patch(ball.graph()).unwrap();
            let assigned: Vec<usize> = (0..ball.vertex_count()).filter(|&v| patch.assignment()[v].is_some()).collect();
            for _ in 0..20 {
                let v = assigned[rng.gen_range(0..assigned.len())];
                let s = rng.gen_range(0..ball.genset().len());
                let polarity = if rng.gen() { Polarity::Bump } else { Polarity::Dent };
                patch.set_face(v, FaceProfile::new(s, polarity, rng.gen_range(0..p.get()))).unwrap();
                assert_eq!(matching_violations(&patch, false), matching_violations(&patch, true));
            }
        }
    }
}

#[test]
fn documents_round_trip() {
    let spec = AutomatonSpec::preset(Preset::Grigorchuk);
    let p = modulus(3);
    let ball = build_ball(&spec, 4).unwrap();
    let psi = solve_on_ball(ball.graph(), &Chain0::ones(ball.vertex_count(), p)).unwrap();
    let deco = decorate(&ball, &psi).unwrap();
    let patch = deco.patch(ball.graph()).unwrap();

    let dump = BallDump::new(&ball, &spec);
    assert_eq!(from_json::<BallDump>(&to_canonical_json(&dump)).unwrap(), dump);

    let chain = ChainDump::from(&psi);
    let back: ChainDump = from_json(&to_canonical_json(&chain)).unwrap();
    assert_eq!(back.to_chain1(psi.len()).unwrap(), psi);

    let tiles = TileDump::new(deco.alphabet(), patch.assignment());
    let back: TileDump = from_json(&to_canonical_json(&tiles)).unwrap();
    assert_eq!(back, tiles);
    assert_eq!(&back.tile_set().unwrap(), deco.alphabet());

    let doc = PatchDoc::new(&patch);
    let text = to_canonical_json(&doc);
    assert_eq!(to_canonical_json(&PatchDoc::new(&patch)), text);
    let back: PatchDoc = from_json(&text).unwrap();
    assert_eq!(back.to_patch().unwrap(), patch);
}

#[test]
fn schema_errors_name_their_path() {
    let text = r#"{"p": 3, "entries": [[0, 1], [2, "x"]]}"#;
    let err = from_json::<ChainDump>(text).unwrap_err().to_string();
    assert!(err.contains("entries[1]"), "{err}");
}
