//! Constructive solution of `∂ψ = c` on a finite graph, following the
//! tree argument that kills degree-0 homology of an infinite group.
//!
//! The graph stands in for a ball of the infinite Cayley graph. A subtree is
//! treated as infinite exactly when it reaches a boundary (sphere) vertex,
//! and boundary vertices are exempt from the equation: the excess carried by
//! a ray leaves through its endpoint.
//!
//! Steps:
//! 1. BFS spanning tree rooted at vertex 0, each vertex attached to its
//!    smallest-index neighbour one step closer to the root.
//! 2. Every FINITE tree edge carries the sum of `c` over the vertices
//!    beneath it.
//! 3. On the remaining LOCALLY-INFINITE tree, a ray descends from the root
//!    through the least-index infinite child; the equation is solved along it
//!    consecutively from its first vertex.
//! 4. Each infinite branch leaving a ray is handled the same way, starting a
//!    new ray at the branch's vertex nearest the root. The connecting edge
//!    carries zero.

use std::collections::VecDeque;

use crate::chain::{Chain0, Chain1};
use crate::error::{Error, Result};
use crate::graph::ToyGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeClass {
    /// No boundary vertex lies beneath the edge.
    Finite,
    LocallyInfinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    parent: Vec<Option<(usize, usize)>>,
    children: Vec<Vec<usize>>,
    class: Vec<Option<EdgeClass>>,
    /// Vertices in BFS order (distance, then index).
    order: Vec<usize>,
    rays: Vec<Vec<usize>>,
}

impl SpanningTree {
    /// Parent vertex and connecting edge index; `None` for the root.
    pub fn parent(&self, v: usize) -> Option<(usize, usize)> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Classification of a graph edge, `None` if it is not a tree edge.
    pub fn class(&self, edge: usize) -> Option<EdgeClass> {
        self.class[edge]
    }

    pub fn tree_edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.parent.iter().filter_map(|p| p.map(|(_, e)| e))
    }

    pub fn tree_edge_count(&self) -> usize {
        self.parent.iter().filter(|p| p.is_some()).count()
    }

    /// Rays in the order they are solved; the first starts at the root.
    pub fn rays(&self) -> &[Vec<usize>] {
        &self.rays
    }

    fn edge_to(&self, v: usize) -> Option<usize> {
        self.parent[v].map(|(_, e)| e)
    }

    fn infinite_children(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.children[v].iter().copied().filter(move |&u| {
            self.edge_to(u).and_then(|e| self.class[e]) == Some(EdgeClass::LocallyInfinite)
        })
    }
}

pub fn spanning_tree(graph: &ToyGraph) -> Result<SpanningTree> {
    let n = graph.vertex_count();
    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    let mut class = vec![None; graph.edge_count()];
    if n == 0 {
        return Ok(SpanningTree {
            parent,
            children,
            class,
            order: Vec::new(),
            rays: Vec::new(),
        });
    }

    let dist = graph.distances_from(0);
    if dist.iter().any(Option::is_none) {
        return Err(Error::Disconnected);
    }
    let dist: Vec<usize> = dist.into_iter().map(Option::unwrap).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (dist[v], v));

    for &v in order.iter().skip(1) {
        let best = graph
            .incident(v)
            .iter()
            .map(|&e| (graph.other_end(e, v), e))
            .filter(|&(w, _)| dist[w] + 1 == dist[v])
            .min()
            .expect("BFS distance has a predecessor");
        parent[v] = Some(best);
        children[best.0].push(v);
    }
    for list in &mut children {
        list.sort_unstable();
    }

    let mut reaches = vec![false; n];
    for &v in order.iter().rev() {
        reaches[v] |= graph.is_boundary(v);
        if let Some((w, e)) = parent[v] {
            class[e] = Some(if reaches[v] {
                EdgeClass::LocallyInfinite
            } else {
                EdgeClass::Finite
            });
            reaches[w] |= reaches[v];
        }
    }

    let mut tree = SpanningTree {
        parent,
        children,
        class,
        order,
        rays: Vec::new(),
    };
    if reaches[0] {
        let mut starts = VecDeque::from([0usize]);
        while let Some(start) = starts.pop_front() {
            let mut ray = vec![start];
            let mut v = start;
            loop {
                let mut inf = tree.infinite_children(v);
                let Some(next) = inf.next() else { break };
                starts.extend(inf);
                ray.push(next);
                v = next;
            }
            tree.rays.push(ray);
        }
    }
    Ok(tree)
}

/// Finds `ψ` supported on tree edges with `(∂ψ)(v) = c(v)` at every
/// non-boundary vertex.
pub fn solve_on_ball(graph: &ToyGraph, c: &Chain0) -> Result<Chain1> {
    let tree = spanning_tree(graph)?;
    solve_with_tree(graph, &tree, c)
}

pub fn solve_with_tree(graph: &ToyGraph, tree: &SpanningTree, c: &Chain0) -> Result<Chain1> {
    let n = graph.vertex_count();
    if c.len() != n {
        return Err(Error::ChainShape { expected: n, got: c.len() });
    }
    let p = c.modulus();
    // Values on tree edges, oriented parent -> child.
    let mut down = vec![0u32; n];

    // sub[v] = c(v) plus the sums carried by FINITE child edges; on a FINITE
    // edge this is the total of c below it.
    let mut sub: Vec<u32> = c.values().to_vec();
    for &v in tree.order.iter().rev() {
        if let Some((w, e)) = tree.parent[v] {
            if tree.class[e] == Some(EdgeClass::Finite) {
                down[v] = sub[v];
                sub[w] = p.add(sub[w], sub[v]);
            }
        }
    }

    if tree.rays.is_empty() {
        if n > 0 && sub[0] != 0 {
            return Err(Error::UnsolvableOnClosedGraph {
                total: sub[0],
                p: p.get(),
            });
        }
    } else {
        for ray in &tree.rays {
            // The ray's first vertex receives nothing from above.
            let mut inflow = 0u32;
            for pair in ray.windows(2) {
                let out = p.sub(inflow, sub[pair[0]]);
                down[pair[1]] = out;
                inflow = out;
            }
        }
    }

    let mut psi = Chain1::zeros(graph.edge_count(), p);
    for v in 0..n {
        if let Some((w, e)) = tree.parent[v] {
            let forward = graph.edges()[e].tail == w;
            let value = down[v] as i64;
            psi.set(e, if forward { value } else { -value });
        }
    }
    Ok(psi)
}
