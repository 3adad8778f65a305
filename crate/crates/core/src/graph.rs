//! Finite graphs with generator-labelled oriented edges.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Generator labels and the inverse pairing between them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Genset {
    names: Vec<String>,
    inverse: Vec<usize>,
}

impl Genset {
    pub fn new(names: Vec<String>, inverse: Vec<usize>) -> Result<Self> {
        if names.len() != inverse.len() || names.is_empty() {
            return Err(Error::Graph("genset names and inverse table differ in length".into()));
        }
        for (i, &j) in inverse.iter().enumerate() {
            if j >= inverse.len() || inverse[j] != i {
                return Err(Error::Graph(format!("genset inverse table is not an involution at {i}")));
            }
        }
        Ok(Genset { names, inverse })
    }

    /// A single involutive generator, for unlabelled toy graphs.
    pub fn single() -> Self {
        Genset {
            names: vec!["s".into()],
            inverse: vec![0],
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, label: usize) -> &str {
        &self.names[label]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn inverse(&self, label: usize) -> usize {
        self.inverse[label]
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Oriented edge `tail -> head`; `label` indexes the genset and satisfies
/// `head = tail · label` for Cayley-type graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub label: usize,
}

/// Finite graph with an optional set of boundary vertices, which are exempt
/// from the boundary equation in the solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToyGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    boundary: Vec<bool>,
    adjacency: Vec<Vec<usize>>,
}

impl ToyGraph {
    pub fn new(vertex_count: usize, edges: Vec<Edge>, boundary: &[usize]) -> Result<Self> {
        let mut flags = vec![false; vertex_count];
        for &b in boundary {
            *flags
                .get_mut(b)
                .ok_or_else(|| Error::Graph(format!("boundary vertex {b} out of range")))? = true;
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (i, e) in edges.iter().enumerate() {
            if e.tail >= vertex_count || e.head >= vertex_count {
                return Err(Error::Graph(format!("edge {i} has an endpoint out of range")));
            }
            adjacency[e.tail].push(i);
            if e.head != e.tail {
                adjacency[e.head].push(i);
            }
        }
        Ok(ToyGraph {
            vertex_count,
            edges,
            boundary: flags,
            adjacency,
        })
    }

    /// Unlabelled convenience constructor.
    pub fn from_pairs(vertex_count: usize, pairs: &[(usize, usize)], boundary: &[usize]) -> Result<Self> {
        let edges = pairs
            .iter()
            .map(|&(tail, head)| Edge { tail, head, label: 0 })
            .collect();
        ToyGraph::new(vertex_count, edges, boundary)
    }

    pub fn path(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        ToyGraph::from_pairs(n, &pairs, &[]).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        ToyGraph::from_pairs(n, &pairs, &[]).expect("valid cycle")
    }

    pub fn with_boundary(&self, boundary: &[usize]) -> Result<Self> {
        ToyGraph::new(self.vertex_count, self.edges.clone(), boundary)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        self.boundary[v]
    }

    pub fn boundary_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count).filter(|&v| self.boundary[v]).collect()
    }

    pub fn has_boundary(&self) -> bool {
        self.boundary.iter().any(|&b| b)
    }

    /// Indices of edges touching `v`.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn other_end(&self, edge: usize, v: usize) -> usize {
        let e = self.edges[edge];
        if e.tail == v {
            e.head
        } else {
            e.tail
        }
    }

    /// Graph distances from `root`; `None` for unreachable vertices.
    pub fn distances_from(&self, root: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count];
        if self.vertex_count == 0 {
            return dist;
        }
        dist[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let dv = dist[v].unwrap();
            for &e in &self.adjacency[v] {
                let w = self.other_end(e, v);
                if dist[w].is_none() {
                    dist[w] = Some(dv + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.distances_from(0).iter().all(Option::is_some)
    }
}
