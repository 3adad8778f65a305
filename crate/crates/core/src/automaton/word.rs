use std::cmp::Ordering;

use super::{AutomatonSpec, StateId};

/// A finite word over automaton states. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupWord(Vec<StateId>);

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord(Vec::new())
    }

    pub(crate) fn from_states(letters: Vec<StateId>) -> Self {
        GroupWord(letters)
    }

    pub fn letters(&self) -> &[StateId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        GroupWord(v)
    }

    pub fn push(&mut self, s: StateId) {
        self.0.push(s);
    }

    pub fn pow(&self, k: usize) -> GroupWord {
        GroupWord(self.0.repeat(k))
    }

    /// Lexicographic comparison in genset order.
    pub fn cmp_in(&self, other: &GroupWord, spec: &AutomatonSpec) -> Ordering {
        let a = self.0.iter().map(|&s| spec.rank(s));
        let b = other.0.iter().map(|&s| spec.rank(s));
        a.cmp(b)
    }
}
