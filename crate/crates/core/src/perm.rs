use std::fmt;

/// A permutation of `{0, .., n-1}` stored as its image list.
///
/// Products follow the crate-wide "first self, then other" convention:
/// `p.then(&q)` maps `x` to `q(p(x))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    /// Builds a permutation from an image list, rejecting non-bijections.
    pub fn from_images(images: Vec<u32>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let slot = seen.get_mut(x as usize)?;
            if *slot {
                return None;
            }
            *slot = true;
        }
        Some(Perm(images))
    }

    /// Parses cycle notation such as `(0 1 2)(3 4)` on `n` points.
    pub fn from_cycles(text: &str, n: usize) -> Option<Self> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut seen = vec![false; n];
        let mut rest = text.trim();
        while !rest.is_empty() {
            rest = rest.strip_prefix('(')?;
            let close = rest.find(')')?;
            let cycle = rest[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().ok().filter(|&x| x < n))
                .collect::<Option<Vec<_>>>()?;
            for (i, &x) in cycle.iter().enumerate() {
                if seen[x] {
                    return None;
                }
                seen[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()] as u32;
            }
            rest = rest[close + 1..].trim_start();
        }
        Some(Perm(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.len(), other.len());
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    /// Non-trivial cycles in order of their least element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}
