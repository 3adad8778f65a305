//! Length-reducing rewriting on adjacent letter pairs.
//!
//! Every rule has a two-letter left side and a right side of length at most
//! one, so a single left-to-right stack pass reaches a normal form.

use super::StateId;

#[derive(Clone, Debug)]
pub(crate) struct RewriteSystem {
    width: usize,
    rules: Vec<Option<Option<StateId>>>,
}

impl RewriteSystem {
    pub(crate) fn new(width: usize) -> Self {
        RewriteSystem {
            width,
            rules: vec![None; width * width],
        }
    }

    /// `x y -> rhs`; `rhs = None` deletes the pair.
    pub(crate) fn add(&mut self, x: StateId, y: StateId, rhs: Option<StateId>) {
        self.rules[x * self.width + y] = Some(rhs);
    }

    fn rule(&self, x: StateId, y: StateId) -> Option<Option<StateId>> {
        self.rules[x * self.width + y]
    }

    pub(crate) fn reduce(&self, letters: impl IntoIterator<Item = StateId>) -> Vec<StateId> {
        let mut stack: Vec<StateId> = Vec::new();
        for letter in letters {
            let mut incoming = Some(letter);
            while let Some(x) = incoming.take() {
                match stack.last().and_then(|&top| self.rule(top, x)) {
                    Some(rhs) => {
                        stack.pop();
                        incoming = rhs;
                    }
                    None => stack.push(x),
                }
            }
        }
        stack
    }

    /// Checks every overlap `x y z` where both `x y` and `y z` are left sides.
    /// Returns the first triple whose two reductions disagree.
    pub(crate) fn critical_pair_failure(&self, letters: &[StateId]) -> Option<[StateId; 3]> {
        for &x in letters {
            for &y in letters {
                let Some(left) = self.rule(x, y) else { continue };
                for &z in letters {
                    let Some(right) = self.rule(y, z) else { continue };
                    let a = self.reduce(left.into_iter().chain([z]));
                    let b = self.reduce([x].into_iter().chain(right));
                    if a != b {
                        return Some([x, y, z]);
                    }
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn non_confluent_system_is_detected() {
        // ab -> c, bc -> a with nothing joining ac and aa.
        let mut rs = RewriteSystem::new(4);
        rs.add(1, 2, Some(3));
        rs.add(2, 3, Some(1));
        assert_eq!(rs.critical_pair_failure(&[1, 2, 3]), Some([1, 2, 3]));
    }

    #[test]
    fn stack_pass_cascades() {
        let mut rs = RewriteSystem::new(3);
        rs.add(1, 2, None);
        rs.add(2, 1, None);
        assert_eq!(rs.reduce([1, 1, 2, 2, 1]), vec![1]);
    }
}
