#![allow(dead_code)]

use coarsetiler::{AutomatonSpec, Chain0, Chain1, GroupWord, Modulus, ToyGraph};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub const PRIMES: [u32; 3] = [2, 3, 5];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn modulus(p: u32) -> Modulus {
    Modulus::new(p).unwrap()
}

/// Random spanning tree plus `extra` random chords (no loops, no repeats).
pub fn random_connected_graph(rng: &mut impl Rng, n: usize, extra: usize) -> ToyGraph {
    let mut pairs = Vec::new();
    for v in 1..n {
        pairs.push((rng.gen_range(0..v), v));
    }
    for _ in 0..extra {
        if n < 2 {
            break;
        }
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let (a, b) = (a.min(b), a.max(b));
        if a != b && !pairs.contains(&(a, b)) {
            pairs.push((a, b));
        }
    }
    ToyGraph::from_pairs(n, &pairs, &[]).unwrap()
}

/// Every connected simple graph on the labelled vertex set `0..n`.
pub fn connected_graphs(n: usize) -> Vec<ToyGraph> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << slots.len()) {
        let pairs: Vec<_> = slots
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = ToyGraph::from_pairs(n, &pairs, &[]).unwrap();
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}

pub fn random_chain0(rng: &mut impl Rng, n: usize, p: Modulus) -> Chain0 {
    Chain0::from_values((0..n).map(|_| rng.gen_range(0..p.get()) as i64), p)
}

pub fn random_chain1(rng: &mut impl Rng, n: usize, p: Modulus) -> Chain1 {
    Chain1::from_values((0..n).map(|_| rng.gen_range(0..p.get()) as i64), p)
}

pub fn random_word(spec: &AutomatonSpec, rng: &mut impl Rng, max_len: usize) -> GroupWord {
    let genset = spec.genset_info();
    let len = rng.gen_range(0..=max_len);
    let names: Vec<&str> = (0..len).map(|_| genset.name(rng.gen_range(0..genset.len()))).collect();
    spec.word_from_names(&names).unwrap()
}

pub fn is_power_of(mut n: u64, q: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n % q == 0 {
        n /= q;
    }
    n == 1
}
