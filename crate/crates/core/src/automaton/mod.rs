//! Self-similar groups given by wreath recursion.
//!
//! A state is a tree automorphism described by a permutation of the first
//! level and one section per letter. Words compose left to right: the product
//! `gh` acts as "first `g`, then `h`", so sections obey
//! `(gh)|x = g|x · h|g(x)`.

mod doc;
mod rewrite;
mod word;

use std::collections::BTreeSet;

pub use doc::{parse_automaton, AutomatonDoc, PermDoc, StateDoc};
pub use word::GroupWord;

use crate::error::{Error, Result};
use crate::graph::Genset;
use crate::perm::Perm;
use rewrite::RewriteSystem;

/// Index into [`AutomatonSpec::states`]. State 0 is always the identity.
pub type StateId = usize;

pub const IDENTITY_NAME: &str = "e";

/// Largest tree level size `level_action` will materialize by default.
pub const DEFAULT_LEAF_CAP: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    Grigorchuk,
    FabrykowskiGupta,
}

impl Preset {
    pub const ALL: [Preset; 2] = [Preset::Grigorchuk, Preset::FabrykowskiGupta];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Grigorchuk => "grigorchuk",
            Preset::FabrykowskiGupta => "fabrykowski-gupta",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == name)
            .ok_or_else(|| Error::UnknownPreset(name.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct State {
    pub name: String,
    pub root_perm: Perm,
    pub sections: Vec<StateId>,
}

#[derive(Clone, Debug)]
pub struct AutomatonSpec {
    alphabet_size: usize,
    states: Vec<State>,
    genset: Vec<StateId>,
    inverse: Vec<StateId>,
    preset: Option<Preset>,
    rewrite: RewriteSystem,
    genset_rank: Vec<usize>,
}

impl PartialEq for AutomatonSpec {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet_size == other.alphabet_size
            && self.states == other.states
            && self.genset == other.genset
            && self.inverse == other.inverse
            && self.preset == other.preset
    }
}

impl AutomatonSpec {
    /// Validates raw automaton data. `states[0]` must be the identity.
    pub fn new(
        alphabet_size: usize,
        states: Vec<State>,
        genset: Vec<StateId>,
        inverse: Vec<StateId>,
        preset: Option<Preset>,
    ) -> Result<Self> {
        if alphabet_size < 2 {
            return Err(Error::parse("alphabet_size", "must be at least 2"));
        }
        if states.is_empty() || states.len() > u8::MAX as usize {
            return Err(Error::Validation(format!(
                "state count {} outside 1..=255",
                states.len()
            )));
        }
        let id = &states[0];
        if id.name != IDENTITY_NAME
            || !id.root_perm.is_identity()
            || id.sections.iter().any(|&s| s != 0)
        {
            return Err(Error::Validation(
                "identity state must have trivial root permutation and identity sections".into(),
            ));
        }
        let mut names = BTreeSet::new();
        for (i, st) in states.iter().enumerate() {
            if st.name.is_empty() || st.name.chars().any(char::is_whitespace) {
                return Err(Error::Validation(format!("state {i} has an invalid name")));
            }
            if !names.insert(st.name.as_str()) {
                return Err(Error::Validation(format!("duplicate state `{}`", st.name)));
            }
            if st.root_perm.len() != alphabet_size {
                return Err(Error::Validation(format!(
                    "root_perm of `{}` acts on {} letters, expected {alphabet_size}",
                    st.name,
                    st.root_perm.len()
                )));
            }
            if st.sections.len() != alphabet_size {
                return Err(Error::Validation(format!(
                    "`{}` has {} sections, expected {alphabet_size}",
                    st.name,
                    st.sections.len()
                )));
            }
            if let Some(&bad) = st.sections.iter().find(|&&s| s >= states.len()) {
                return Err(Error::Validation(format!(
                    "section of `{}` references undeclared state {bad}",
                    st.name
                )));
            }
        }
        if inverse.len() != states.len() || inverse.iter().any(|&s| s >= states.len()) {
            return Err(Error::Validation("inverse table does not cover all states".into()));
        }
        for (s, &t) in inverse.iter().enumerate() {
            if inverse[t] != s {
                return Err(Error::Validation(format!(
                    "inverse of `{}` is not symmetric",
                    states[s].name
                )));
            }
            if (s == 0) != (t == 0) {
                return Err(Error::Validation("only the identity is its own identity inverse".into()));
            }
        }
        if genset.is_empty() {
            return Err(Error::Validation("genset is empty".into()));
        }
        let mut genset_rank = vec![usize::MAX; states.len()];
        for (rank, &g) in genset.iter().enumerate() {
            if g == 0 || g >= states.len() {
                return Err(Error::Validation("genset may only contain non-identity states".into()));
            }
            if genset_rank[g] != usize::MAX {
                return Err(Error::Validation(format!("`{}` repeated in genset", states[g].name)));
            }
            genset_rank[g] = rank;
        }
        for &g in &genset {
            if genset_rank[inverse[g]] == usize::MAX {
                return Err(Error::Validation(format!(
                    "genset is not closed under inversion: `{}`",
                    states[g].name
                )));
            }
        }
        // Non-generator states sort after generators in word comparisons.
        let mut next = genset.len();
        for r in genset_rank.iter_mut().skip(1) {
            if *r == usize::MAX {
                *r = next;
                next += 1;
            }
        }

        let rewrite = build_rewrite(preset, &states, &inverse);
        let spec = AutomatonSpec {
            alphabet_size,
            states,
            genset,
            inverse,
            preset,
            rewrite,
            genset_rank,
        };
        spec.check_inverses()?;
        let letters: Vec<StateId> = (1..spec.states.len()).collect();
        if let Some(t) = spec.rewrite.critical_pair_failure(&letters) {
            return Err(Error::Validation(format!(
                "rewriting rules are not confluent on `{}{}{}`",
                spec.states[t[0]].name, spec.states[t[1]].name, spec.states[t[2]].name
            )));
        }
        Ok(spec)
    }

    pub fn preset(preset: Preset) -> Self {
        let (d, states, genset, inverse) = match preset {
            Preset::Grigorchuk => {
                let id = Perm::identity(2);
                let swap = Perm::from_images(vec![1, 0]).unwrap();
                // e=0 a=1 b=2 c=3 d=4
                let states = vec![
                    state(IDENTITY_NAME, id.clone(), vec![0, 0]),
                    state("a", swap, vec![0, 0]),
                    state("b", id.clone(), vec![1, 3]),
                    state("c", id.clone(), vec![1, 4]),
                    state("d", id, vec![0, 2]),
                ];
                (2, states, vec![1, 2, 3, 4], vec![0, 1, 2, 3, 4])
            }
            Preset::FabrykowskiGupta => {
                let id = Perm::identity(3);
                let cycle = Perm::from_images(vec![1, 2, 0]).unwrap();
                // e=0 a=1 A=2 b=3 B=4, with A = a^-1 and B = b^-1.
                let states = vec![
                    state(IDENTITY_NAME, id.clone(), vec![0, 0, 0]),
                    state("a", cycle.clone(), vec![0, 0, 0]),
                    state("A", cycle.inverse(), vec![0, 0, 0]),
                    state("b", id.clone(), vec![1, 0, 3]),
                    state("B", id, vec![2, 0, 4]),
                ];
                (3, states, vec![1, 2, 3, 4], vec![0, 2, 1, 4, 3])
            }
        };
        AutomatonSpec::new(d, states, genset, inverse, Some(preset))
            .expect("built-in presets are valid")
    }

    pub fn preset_by_name(name: &str) -> Result<Self> {
        Preset::from_name(name).map(AutomatonSpec::preset)
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn genset(&self) -> &[StateId] {
        &self.genset
    }

    pub fn inverse_of(&self, s: StateId) -> StateId {
        self.inverse[s]
    }

    pub fn preset_id(&self) -> Option<Preset> {
        self.preset
    }

    pub fn name(&self) -> &str {
        self.preset.map_or("custom", Preset::name)
    }

    pub fn state_name(&self, s: StateId) -> &str {
        &self.states[s].name
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s.name == name)
    }

    /// Generator labels and their inverse pairing, indexed by genset position.
    pub fn genset_info(&self) -> Genset {
        let names = self
            .genset
            .iter()
            .map(|&g| self.states[g].name.clone())
            .collect();
        let inverse = self
            .genset
            .iter()
            .map(|&g| self.genset_rank[self.inverse[g]])
            .collect();
        Genset::new(names, inverse).expect("genset closed under inversion")
    }

    /// Position of a state in the word order (genset order first).
    pub(crate) fn rank(&self, s: StateId) -> usize {
        self.genset_rank[s]
    }

    /// Parses a word from generator names. Whitespace, `.` and `*` separate
    /// letters; otherwise the longest matching name wins.
    pub fn parse_word(&self, text: &str) -> Result<GroupWord> {
        let mut by_len: Vec<(StateId, &str)> = self
            .genset
            .iter()
            .map(|&g| (g, self.states[g].name.as_str()))
            .collect();
        by_len.sort_by_key(|&(_, n)| std::cmp::Reverse(n.len()));
        let mut letters = Vec::new();
        let mut rest = text;
        loop {
            rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == '.' || c == '*');
            if rest.is_empty() {
                break;
            }
            match by_len.iter().find(|(_, n)| rest.starts_with(n)) {
                Some(&(g, n)) => {
                    letters.push(g);
                    rest = &rest[n.len()..];
                }
                None => {
                    let bad: String = rest.chars().take(1).collect();
                    return Err(Error::UnknownLetter(bad));
                }
            }
        }
        Ok(GroupWord::from_states(letters))
    }

    pub fn word_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<GroupWord> {
        names
            .iter()
            .map(|n| {
                let n = n.as_ref();
                self.genset
                    .iter()
                    .copied()
                    .find(|&g| self.states[g].name == n)
                    .ok_or_else(|| Error::UnknownLetter(n.to_string()))
            })
            .collect::<Result<Vec<_>>>()
            .map(GroupWord::from_states)
    }

    pub fn format_word(&self, w: &GroupWord) -> String {
        let single = w.letters().iter().all(|&s| self.states[s].name.chars().count() == 1);
        let names = w.letters().iter().map(|&s| self.states[s].name.as_str());
        if single {
            names.collect()
        } else {
            names.collect::<Vec<_>>().join(" ")
        }
    }

    fn check_word(&self, w: &GroupWord) -> Result<()> {
        match w.letters().iter().find(|&&s| s == 0 || s >= self.states.len()) {
            Some(&bad) => Err(Error::UnknownLetter(format!("#{bad}"))),
            None => Ok(()),
        }
    }

    /// Permutation induced on the first level; letters compose left to right.
    pub fn root_permutation(&self, w: &GroupWord) -> Result<Perm> {
        self.check_word(w)?;
        let mut p = Perm::identity(self.alphabet_size);
        for &s in w.letters() {
            p = p.then(&self.states[s].root_perm);
        }
        Ok(p)
    }

    fn root_image(&self, w: &[StateId], mut x: usize) -> usize {
        for &s in w {
            x = self.states[s].root_perm.apply(x);
        }
        x
    }

    /// Section of `w` at first-level letter `letter`, before canonicalization.
    pub fn section(&self, w: &GroupWord, letter: usize) -> Result<GroupWord> {
        self.check_word(w)?;
        if letter >= self.alphabet_size {
            return Err(Error::LetterOutOfRange {
                letter,
                alphabet_size: self.alphabet_size,
            });
        }
        Ok(GroupWord::from_states(self.raw_section(w.letters(), letter)))
    }

    fn raw_section(&self, w: &[StateId], mut x: usize) -> Vec<StateId> {
        let mut out = Vec::with_capacity(w.len());
        for &s in w {
            let st = &self.states[s];
            let sec = st.sections[x];
            if sec != 0 {
                out.push(sec);
            }
            x = st.root_perm.apply(x);
        }
        out
    }

    /// Formal inverse: reversed word with every letter inverted.
    pub fn inverse_word(&self, w: &GroupWord) -> GroupWord {
        GroupWord::from_states(w.letters().iter().rev().map(|&s| self.inverse[s]).collect())
    }

    /// Applies the preset relations (free reduction for custom automata).
    /// The result is a partial normal form: distinct outputs may still be
    /// equal in the group.
    pub fn canonicalize(&self, w: &GroupWord) -> Result<GroupWord> {
        self.check_word(w)?;
        Ok(GroupWord::from_states(self.rewrite.reduce(w.letters().iter().copied())))
    }

    /// Exact word problem for the built-in presets.
    pub fn is_identity(&self, w: &GroupWord) -> Result<bool> {
        self.check_word(w)?;
        if self.preset.is_none() {
            return Err(Error::NoExactWordProblem);
        }
        let limit = 10 * w.len() + 64;
        let reduced = self.rewrite.reduce(w.letters().iter().copied());
        self.identity_rec(reduced, 0, limit)
    }

    fn identity_rec(&self, w: Vec<StateId>, depth: usize, limit: usize) -> Result<bool> {
        if depth > limit {
            return Err(Error::DepthLimit {
                limit,
                word: self.format_word(&GroupWord::from_states(w)),
            });
        }
        match w.len() {
            0 => return Ok(true),
            // Every non-identity state of a preset acts nontrivially.
            1 => return Ok(false),
            _ => {}
        }
        if (0..self.alphabet_size).any(|x| self.root_image(&w, x) != x) {
            return Ok(false);
        }
        let mut sections = Vec::with_capacity(self.alphabet_size);
        for x in 0..self.alphabet_size {
            let sec = self.rewrite.reduce(self.raw_section(&w, x));
            if sec.len() >= w.len() {
                return Err(Error::Contraction {
                    word: self.format_word(&GroupWord::from_states(w)),
                });
            }
            sections.push(sec);
        }
        for sec in sections {
            if !self.identity_rec(sec, depth + 1, limit)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `u` and `v` represent the same element (presets only).
    pub fn words_equal(&self, u: &GroupWord, v: &GroupWord) -> Result<bool> {
        let mut w = u.letters().to_vec();
        w.extend(self.inverse_word(v).letters());
        self.is_identity(&GroupWord::from_states(w))
    }

    /// Depth-bounded comparison usable for any automaton: `true` means
    /// "equal on the first `depth` levels", not group equality.
    pub fn equal_up_to_depth(&self, u: &GroupWord, v: &GroupWord, depth: usize) -> Result<bool> {
        let table = self.level_table(depth, DEFAULT_LEAF_CAP)?;
        Ok(table.word(u.letters()) == table.word(v.letters()))
    }

    /// Action of `w` on the `d^n` vertices of level `n`. Leaves are indexed
    /// lexicographically with the first letter most significant.
    pub fn level_action(&self, w: &GroupWord, n: usize) -> Result<Perm> {
        self.level_action_capped(w, n, DEFAULT_LEAF_CAP)
    }

    pub fn level_action_capped(&self, w: &GroupWord, n: usize, leaf_cap: usize) -> Result<Perm> {
        self.check_word(w)?;
        Ok(self.level_table(n, leaf_cap)?.word(w.letters()))
    }

    /// Level-`n` permutations of every state.
    pub fn level_table(&self, n: usize, leaf_cap: usize) -> Result<LevelTable> {
        let d = self.alphabet_size;
        let leaves = level_size(d, n, leaf_cap)?;
        let mut current: Vec<Perm> = vec![Perm::identity(1); self.states.len()];
        let mut width = 1usize;
        for _ in 0..n {
            let next_width = width * d;
            let next = self
                .states
                .iter()
                .map(|st| {
                    let mut images = vec![0u32; next_width];
                    for x in 0..d {
                        let sub = &current[st.sections[x]];
                        let y = st.root_perm.apply(x);
                        for r in 0..width {
                            images[x * width + r] = (y * width + sub.apply(r)) as u32;
                        }
                    }
                    Perm::from_images(images).expect("wreath product of permutations")
                })
                .collect();
            current = next;
            width = next_width;
        }
        debug_assert_eq!(width, leaves);
        Ok(LevelTable {
            level: n,
            perms: current,
        })
    }
}

fn state(name: &str, root_perm: Perm, sections: Vec<StateId>) -> State {
    State {
        name: name.to_string(),
        root_perm,
        sections,
    }
}

fn level_size(d: usize, n: usize, cap: usize) -> Result<usize> {
    let mut size = 1usize;
    for _ in 0..n {
        size = size
            .checked_mul(d)
            .filter(|&s| s <= cap)
            .ok_or_else(|| Error::resource(format!("tree level {n} of degree {d}"), cap as u64))?;
    }
    Ok(size)
}

fn build_rewrite(preset: Option<Preset>, states: &[State], inverse: &[StateId]) -> RewriteSystem {
    let mut rs = RewriteSystem::new(states.len());
    match preset {
        Some(Preset::Grigorchuk) => {
            // a=1; b,c,d = 2,3,4 form a Klein four-group.
            rs.add(1, 1, None);
            for x in 2..=4 {
                for y in 2..=4 {
                    let rhs = if x == y { None } else { Some(9 - x - y) };
                    rs.add(x, y, rhs);
                }
            }
        }
        Some(Preset::FabrykowskiGupta) => {
            // (generator, its square) pairs in Z/3: a,A = 1,2 and b,B = 3,4.
            for (g, g2) in [(1, 2), (3, 4)] {
                rs.add(g, g, Some(g2));
                rs.add(g2, g2, Some(g));
                rs.add(g, g2, None);
                rs.add(g2, g, None);
            }
        }
        None => {
            for (s, &t) in inverse.iter().enumerate().skip(1) {
                rs.add(s, t, None);
            }
        }
    }
    rs
}

impl AutomatonSpec {
    /// Rejects custom inverse tables that disagree with the automaton on the
    /// first few levels.
    fn check_inverses(&self) -> Result<()> {
        let d = self.alphabet_size;
        let mut depth = 0;
        let mut size = 1usize;
        while depth < 8 && size * d <= 4096 {
            size *= d;
            depth += 1;
        }
        let table = self.level_table(depth, usize::MAX)?;
        for s in 1..self.states.len() {
            if !table.perms[s].then(&table.perms[self.inverse[s]]).is_identity() {
                return Err(Error::Validation(format!(
                    "`{}` and its declared inverse `{}` do not cancel",
                    self.states[s].name, self.states[self.inverse[s]].name
                )));
            }
        }
        Ok(())
    }
}

/// Precomputed level-`n` permutations of every state.
#[derive(Clone, Debug)]
pub struct LevelTable {
    level: usize,
    perms: Vec<Perm>,
}

impl LevelTable {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn state(&self, s: StateId) -> &Perm {
        &self.perms[s]
    }

    pub fn word(&self, letters: &[StateId]) -> Perm {
        letters
            .iter()
            .fold(self.perms[0].clone(), |acc, &s| acc.then(&self.perms[s]))
    }
}

#[cfg(test)]
mod tests;
