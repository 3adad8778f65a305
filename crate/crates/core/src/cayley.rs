//! Finite balls in the Cayley graph of a preset automaton group.

use std::collections::{BTreeSet, HashMap};

use crate::automaton::{AutomatonSpec, GroupWord, LevelTable};
use crate::error::{Error, Result};
use crate::graph::{Edge, Genset, ToyGraph};
use crate::perm::Perm;

pub const DEFAULT_VERTEX_CAP: usize = 2_000_000;

/// Level permutations used as an equality-invariant hash of group elements.
const HASH_LEAVES: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyBall {
    radius: usize,
    words: Vec<GroupWord>,
    distance: Vec<usize>,
    graph: ToyGraph,
    genset: Genset,
}

impl CayleyBall {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn vertex_count(&self) -> usize {
        self.words.len()
    }

    /// Canonical representative of each vertex, in index order.
    pub fn words(&self) -> &[GroupWord] {
        &self.words
    }

    pub fn distance(&self, v: usize) -> usize {
        self.distance[v]
    }

    pub fn distances(&self) -> &[usize] {
        &self.distance
    }

    /// The ball as a graph whose boundary set is the sphere.
    pub fn graph(&self) -> &ToyGraph {
        &self.graph
    }

    pub fn genset(&self) -> &Genset {
        &self.genset
    }

    /// Edges oriented from smaller to larger BFS index.
    pub fn oriented_edges(&self) -> &[Edge] {
        self.graph.edges()
    }

    pub fn is_sphere(&self, v: usize) -> bool {
        self.distance[v] == self.radius
    }

    /// `(interior, sphere)` vertex lists.
    pub fn classify_vertices(&self) -> (Vec<usize>, Vec<usize>) {
        (0..self.vertex_count()).partition(|&v| !self.is_sphere(v))
    }

    pub fn interior_flags(&self) -> Vec<bool> {
        self.distance.iter().map(|&d| d < self.radius).collect()
    }
}

struct Entry {
    word: GroupWord,
    perm: Perm,
    dist: usize,
}

/// Elements found so far, deduplicated exactly.
struct ElementStore<'a> {
    spec: &'a AutomatonSpec,
    entries: Vec<Entry>,
    by_word: HashMap<GroupWord, usize>,
    by_perm: HashMap<Perm, Vec<usize>>,
}

impl<'a> ElementStore<'a> {
    fn find(&self, word: &GroupWord, perm: &Perm) -> Result<Option<usize>> {
        if let Some(&id) = self.by_word.get(word) {
            return Ok(Some(id));
        }
        if let Some(bucket) = self.by_perm.get(perm) {
            for &id in bucket {
                if self.spec.words_equal(word, &self.entries[id].word)? {
                    return Ok(Some(id));
                }
            }
        }
        Ok(None)
    }

    fn insert(&mut self, word: GroupWord, perm: Perm, dist: usize) -> usize {
        let id = self.entries.len();
        self.by_word.insert(word.clone(), id);
        self.by_perm.entry(perm.clone()).or_default().push(id);
        self.entries.push(Entry { word, perm, dist });
        id
    }
}

fn hash_table(spec: &AutomatonSpec) -> Result<LevelTable> {
    let d = spec.alphabet_size();
    let mut depth = 0;
    let mut leaves = 1;
    while leaves * d <= HASH_LEAVES {
        leaves *= d;
        depth += 1;
    }
    spec.level_table(depth, HASH_LEAVES)
}

pub fn build_ball(spec: &AutomatonSpec, radius: usize) -> Result<CayleyBall> {
    build_ball_capped(spec, radius, DEFAULT_VERTEX_CAP)
}

/// Breadth-first ball of the given radius around the identity.
///
/// Vertices are ordered by distance, then by their least canonical word in
/// genset order. Requires a preset (exact word problem).
pub fn build_ball_capped(spec: &AutomatonSpec, radius: usize, vertex_cap: usize) -> Result<CayleyBall> {
    if spec.preset_id().is_none() {
        return Err(Error::NoExactWordProblem);
    }
    let table = hash_table(spec)?;
    let gens = spec.genset().to_vec();
    let mut store = ElementStore {
        spec,
        entries: Vec::new(),
        by_word: HashMap::new(),
        by_perm: HashMap::new(),
    };
    store.insert(GroupWord::identity(), table.word(&[]), 0);
    let mut frontier = vec![0usize];
    let mut order = vec![0usize];

    for level in 1..=radius {
        let mut fresh: Vec<usize> = Vec::new();
        for &x in &frontier {
            for &s in &gens {
                let mut raw = store.entries[x].word.clone();
                raw.push(s);
                let word = spec.canonicalize(&raw)?;
                let perm = store.entries[x].perm.then(table.state(s));
                match store.find(&word, &perm)? {
                    Some(id) => {
                        let e = &store.entries[id];
                        if e.dist == level && word.cmp_in(&e.word, spec).is_lt() {
                            store.entries[id].word = word.clone();
                        }
                        store.by_word.entry(word).or_insert(id);
                    }
                    None => {
                        debug_assert_eq!(word.len(), level);
                        fresh.push(store.insert(word, perm, level));
                        if store.entries.len() > vertex_cap {
                            return Err(Error::resource(
                                format!("Cayley ball of radius {radius}"),
                                vertex_cap as u64,
                            ));
                        }
                    }
                }
            }
        }
        fresh.sort_by(|&a, &b| store.entries[a].word.cmp_in(&store.entries[b].word, spec));
        order.extend_from_slice(&fresh);
        frontier = fresh;
        if frontier.is_empty() {
            break;
        }
    }

    let mut index_of = vec![usize::MAX; store.entries.len()];
    for (i, &id) in order.iter().enumerate() {
        index_of[id] = i;
    }

    let mut edges = BTreeSet::new();
    let genset = spec.genset_info();
    for (x, &id) in order.iter().enumerate() {
        for (label, &s) in gens.iter().enumerate() {
            let mut raw = store.entries[id].word.clone();
            raw.push(s);
            let word = spec.canonicalize(&raw)?;
            let perm = store.entries[id].perm.then(table.state(s));
            let Some(other) = store.find(&word, &perm)? else { continue };
            let y = index_of[other];
            if y == x {
                continue;
            }
            let edge = if x < y {
                Edge { tail: x, head: y, label }
            } else {
                Edge { tail: y, head: x, label: genset.inverse(label) }
            };
            edges.insert(edge);
        }
    }

    let words: Vec<GroupWord> = order.iter().map(|&id| store.entries[id].word.clone()).collect();
    let distance: Vec<usize> = order.iter().map(|&id| store.entries[id].dist).collect();
    let sphere: Vec<usize> = (0..words.len()).filter(|&v| distance[v] == radius).collect();
    let graph = ToyGraph::new(words.len(), edges.into_iter().collect(), &sphere)?;
    Ok(CayleyBall {
        radius,
        words,
        distance,
        graph,
        genset,
    })
}
