//! Combinatorial tiles decorated by a 1-chain.
//!
//! A tile sits at a vertex of the Cayley graph and has one face per
//! generator `s`, facing the neighbour `x·s`. An edge `x → y` with value `k`
//! puts `k` bumps on the face of `x` and `k` matching dents on the face of
//! `y`. Tilings are indexed by graph vertices; no geometry is modelled.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cayley::CayleyBall;
use crate::chain::{Chain1, Modulus};
use crate::error::{Error, Result};
use crate::graph::{Genset, ToyGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Bump,
    Dent,
}

impl Polarity {
    pub fn flip(self) -> Self {
        match self {
            Polarity::Bump => Polarity::Dent,
            Polarity::Dent => Polarity::Bump,
        }
    }
}

/// Decoration of one face. Flat faces (count 0) always carry `Bump`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceProfile {
    generator: usize,
    polarity: Polarity,
    count: u32,
}

impl FaceProfile {
    pub fn new(generator: usize, polarity: Polarity, count: u32) -> Self {
        let polarity = if count == 0 { Polarity::Bump } else { polarity };
        FaceProfile {
            generator,
            polarity,
            count,
        }
    }

    pub fn flat(generator: usize) -> Self {
        FaceProfile::new(generator, Polarity::Bump, 0)
    }

    pub fn generator(&self) -> usize {
        self.generator
    }

    pub fn polarity(&self) -> Polarity {
        self.polarity
    }

    pub fn count(&self) -> u32 {
        self.count
    }

    pub fn is_flat(&self) -> bool {
        self.count == 0
    }

    /// Chain value on the edge leaving through this face.
    fn outgoing(&self, p: Modulus) -> u32 {
        match self.polarity {
            Polarity::Bump => self.count,
            Polarity::Dent => p.neg(self.count),
        }
    }

}

/// The matching face across an edge: inverse generator, opposite polarity,
/// same count.
pub fn opposition(face: FaceProfile, genset: &Genset) -> FaceProfile {
    FaceProfile::new(genset.inverse(face.generator), face.polarity.flip(), face.count)
}

/// One face per generator, in genset order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TileType {
    faces: Vec<FaceProfile>,
}

impl TileType {
    pub fn new(faces: Vec<FaceProfile>) -> Result<Self> {
        if let Some((slot, f)) = faces.iter().enumerate().find(|(i, f)| f.generator != *i) {
            return Err(Error::Tile(format!(
                "face {slot} is labelled with generator {} instead of {slot}",
                f.generator
            )));
        }
        Ok(TileType { faces })
    }

    pub fn faces(&self) -> &[FaceProfile] {
        &self.faces
    }

    pub fn face(&self, generator: usize) -> FaceProfile {
        self.faces[generator]
    }

    pub fn all_flat(generators: usize) -> Self {
        TileType {
            faces: (0..generators).map(FaceProfile::flat).collect(),
        }
    }
}

/// Deduplicated, sorted tile alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TileSet {
    modulus: Modulus,
    genset: Genset,
    types: Vec<TileType>,
}

impl TileSet {
    pub fn new(modulus: Modulus, genset: Genset, types: impl IntoIterator<Item = TileType>) -> Result<Self> {
        let types: BTreeSet<TileType> = types.into_iter().collect();
        for t in &types {
            if t.faces.len() != genset.len() {
                return Err(Error::Tile(format!(
                    "tile has {} faces, genset has {}",
                    t.faces.len(),
                    genset.len()
                )));
            }
            if let Some(f) = t.faces.iter().find(|f| f.count >= modulus.get()) {
                return Err(Error::Tile(format!("face count {} not below p = {}", f.count, modulus.get())));
            }
        }
        Ok(TileSet {
            modulus,
            genset,
            types: types.into_iter().collect(),
        })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn genset(&self) -> &Genset {
        &self.genset
    }

    pub fn types(&self) -> &[TileType] {
        &self.types
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn index_of(&self, t: &TileType) -> Option<usize> {
        self.types.binary_search(t).ok()
    }

    /// `(2p)^{|S|}`, saturating.
    pub fn size_bound(&self) -> u64 {
        (2 * self.modulus.get() as u64).saturating_pow(self.genset.len() as u32)
    }

    fn insert(&mut self, t: TileType) -> usize {
        match self.types.binary_search(&t) {
            Ok(i) => i,
            Err(i) => {
                self.types.insert(i, t);
                i
            }
        }
    }
}

/// Faces of every vertex after decoration; `None` marks a face whose
/// neighbour lies outside the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoration {
    faces: Vec<Vec<Option<FaceProfile>>>,
    alphabet_region: Vec<bool>,
    alphabet: TileSet,
}

impl Decoration {
    pub fn alphabet(&self) -> &TileSet {
        &self.alphabet
    }

    pub fn faces(&self, v: usize) -> &[Option<FaceProfile>] {
        &self.faces[v]
    }

    /// The tile at `v` if every face is known.
    pub fn tile(&self, v: usize) -> Option<TileType> {
        let faces = self.faces[v].iter().copied().collect::<Option<Vec<_>>>()?;
        Some(TileType { faces })
    }

    /// Distinct complete tiles over the vertices selected by `keep`.
    pub fn alphabet_where(&self, mut keep: impl FnMut(usize) -> bool) -> BTreeSet<TileType> {
        (0..self.faces.len())
            .filter(|&v| keep(v))
            .filter_map(|v| self.tile(v))
            .collect()
    }

    /// Patch assigning every vertex of the alphabet region; vertices whose
    /// neighbours are all assigned become interior.
    pub fn patch(&self, graph: &ToyGraph) -> Result<PatchTiling> {
        let assignment: Vec<Option<usize>> = (0..self.faces.len())
            .map(|v| {
                if self.alphabet_region[v] {
                    self.tile(v).and_then(|t| self.alphabet.index_of(&t))
                } else {
                    None
                }
            })
            .collect();
        let interior = (0..self.faces.len())
            .map(|v| {
                assignment[v].is_some()
                    && graph
                        .incident(v)
                        .iter()
                        .all(|&e| assignment[graph.other_end(e, v)].is_some())
            })
            .collect();
        PatchTiling::new(graph.clone(), self.alphabet.clone(), assignment, interior)
    }
}

/// Decorates a ball; the alphabet is taken over the ball's interior.
pub fn decorate(ball: &CayleyBall, psi: &Chain1) -> Result<Decoration> {
    decorate_graph(ball.graph(), ball.genset(), psi, &ball.interior_flags())
}

pub fn decorate_graph(graph: &ToyGraph, genset: &Genset, psi: &Chain1, region: &[bool]) -> Result<Decoration> {
    if psi.len() != graph.edge_count() {
        return Err(Error::ChainShape {
            expected: graph.edge_count(),
            got: psi.len(),
        });
    }
    if region.len() != graph.vertex_count() {
        return Err(Error::ChainShape {
            expected: graph.vertex_count(),
            got: region.len(),
        });
    }
    let p = psi.modulus();
    let mut faces = vec![vec![None; genset.len()]; graph.vertex_count()];
    for (i, e) in graph.edges().iter().enumerate() {
        if e.label >= genset.len() {
            return Err(Error::Tile(format!("edge {i} label {} not in genset", e.label)));
        }
        let k = psi.get(i);
        let out = FaceProfile::new(e.label, Polarity::Bump, k);
        let back = opposition(out, genset);
        for (v, face) in [(e.tail, out), (e.head, back)] {
            let slot = &mut faces[v][face.generator];
            if slot.is_some() {
                return Err(Error::Tile(format!(
                    "vertex {v} has two edges through face {}",
                    genset.name(face.generator)
                )));
            }
            *slot = Some(face);
        }
    }
    let complete = |v: usize| faces[v].iter().all(Option::is_some);
    let alphabet_region: Vec<bool> = (0..graph.vertex_count()).map(|v| region[v] && complete(v)).collect();
    let types = (0..graph.vertex_count())
        .filter(|&v| alphabet_region[v])
        .map(|v| TileType {
            faces: faces[v].iter().map(|f| f.unwrap()).collect(),
        });
    let alphabet = TileSet::new(p, genset.clone(), types)?;
    Ok(Decoration {
        faces,
        alphabet_region,
        alphabet,
    })
}

/// Tiles placed on graph vertices. Unassigned vertices lie outside the
/// patch; the boundary equation is checked at interior vertices only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatchTiling {
    graph: ToyGraph,
    tiles: TileSet,
    assignment: Vec<Option<usize>>,
    interior: Vec<bool>,
}

impl PatchTiling {
    pub fn new(graph: ToyGraph, tiles: TileSet, assignment: Vec<Option<usize>>, interior: Vec<bool>) -> Result<Self> {
        let n = graph.vertex_count();
        if assignment.len() != n || interior.len() != n {
            return Err(Error::Tile(format!("patch covers {} vertices, graph has {n}", assignment.len())));
        }
        if let Some(v) = assignment.iter().position(|a| a.is_some_and(|i| i >= tiles.len())) {
            return Err(Error::Tile(format!("vertex {v} uses an undeclared tile type")));
        }
        if let Some(v) = (0..n).find(|&v| interior[v] && assignment[v].is_none()) {
            return Err(Error::Tile(format!("interior vertex {v} has no tile")));
        }
        if let Some(e) = graph.edges().iter().find(|e| e.label >= tiles.genset().len()) {
            return Err(Error::Tile(format!("edge label {} not in genset", e.label)));
        }
        Ok(PatchTiling {
            graph,
            tiles,
            assignment,
            interior,
        })
    }

    pub fn graph(&self) -> &ToyGraph {
        &self.graph
    }

    pub fn tiles(&self) -> &TileSet {
        &self.tiles
    }

    pub fn assignment(&self) -> &[Option<usize>] {
        &self.assignment
    }

    pub fn interior(&self) -> &[bool] {
        &self.interior
    }

    pub fn tile_at(&self, v: usize) -> Option<&TileType> {
        self.assignment[v].map(|i| &self.tiles.types[i])
    }

    /// Replaces one face of the tile at `v`, adding the new tile type to the
    /// alphabet if needed.
    pub fn set_face(&mut self, v: usize, face: FaceProfile) -> Result<()> {
        let mut tile = self
            .tile_at(v)
            .cloned()
            .ok_or_else(|| Error::Tile(format!("vertex {v} has no tile")))?;
        if face.generator >= tile.faces.len() || face.count >= self.tiles.modulus.get() {
            return Err(Error::Tile("face out of range".into()));
        }
        tile.faces[face.generator] = face;
        let assigned: Vec<Option<TileType>> = self
            .assignment
            .iter()
            .map(|a| a.map(|i| self.tiles.types[i].clone()))
            .collect();
        self.tiles.insert(tile.clone());
        for (slot, t) in self.assignment.iter_mut().zip(assigned) {
            *slot = t.map(|t| self.tiles.index_of(&t).expect("existing type"));
        }
        self.assignment[v] = self.tiles.index_of(&tile);
        Ok(())
    }

    /// Face of the tile at `v` crossed by `edge`, if `v` is assigned.
    fn face_on(&self, edge: usize, v: usize) -> Option<FaceProfile> {
        let e = self.graph.edges()[edge];
        let generator = if e.tail == v {
            e.label
        } else {
            self.tiles.genset.inverse(e.label)
        };
        self.tile_at(v).map(|t| t.faces[generator])
    }

    fn touches_interior(&self, edge: usize) -> bool {
        let e = self.graph.edges()[edge];
        self.interior[e.tail] || self.interior[e.head]
    }
}

/// `ψ′(e)` read from the tail tile: bumps count positively, dents
/// negatively. Edges outside the patch carry zero.
pub fn reconstruct_chain(patch: &PatchTiling) -> Result<Chain1> {
    let p = patch.tiles.modulus;
    let mut psi = Chain1::zeros(patch.graph.edge_count(), p);
    for (i, e) in patch.graph.edges().iter().enumerate() {
        match (patch.face_on(i, e.tail), patch.face_on(i, e.head)) {
            (Some(face), Some(_)) => psi.set(i, face.outgoing(p) as i64),
            _ if patch.touches_interior(i) => {
                return Err(Error::MissingFace {
                    edge: i,
                    tail: e.tail,
                    head: e.head,
                })
            }
            _ => {}
        }
    }
    Ok(psi)
}

/// Violations found by [`verify_tiling`], each list sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    /// Edges whose two faces are not opposite.
    pub matching: Vec<usize>,
    /// Edges touching an interior vertex with a face missing.
    pub missing_faces: Vec<usize>,
    /// Interior vertices where `∂ψ′ ≠ 1`.
    pub boundary: Vec<usize>,
}

impl Verification {
    pub fn is_ok(&self) -> bool {
        self.matching.is_empty() && self.missing_faces.is_empty() && self.boundary.is_empty()
    }
}

/// Edges whose faces fail to match, testing `o(tail face) = head face`, or
/// `o(head face) = tail face` when `from_head` is set.
pub fn matching_violations(patch: &PatchTiling, from_head: bool) -> Vec<usize> {
    let genset = &patch.tiles.genset;
    (0..patch.graph.edge_count())
        .filter(|&i| {
            let e = patch.graph.edges()[i];
            match (patch.face_on(i, e.tail), patch.face_on(i, e.head)) {
                (Some(t), Some(h)) if from_head => opposition(h, genset) != t,
                (Some(t), Some(h)) => opposition(t, genset) != h,
                _ => false,
            }
        })
        .collect()
}

/// Checks the matching rules on every edge and `∂ψ′ = 1` on every interior
/// vertex.
pub fn verify_tiling(patch: &PatchTiling) -> Verification {
    let p = patch.tiles.modulus;
    let matching = matching_violations(patch, false);
    let mut missing_faces = Vec::new();
    let mut psi = Chain1::zeros(patch.graph.edge_count(), p);
    for (i, e) in patch.graph.edges().iter().enumerate() {
        match (patch.face_on(i, e.tail), patch.face_on(i, e.head)) {
            (Some(face), Some(_)) => psi.set(i, face.outgoing(p) as i64),
            _ if patch.touches_interior(i) => missing_faces.push(i),
            _ => {}
        }
    }
    let d = crate::chain::boundary(&psi, &patch.graph).expect("chain sized to graph");
    let boundary = (0..patch.graph.vertex_count())
        .filter(|&v| patch.interior[v] && d.get(v) != 1 % p.get())
        .collect();
    Verification {
        matching,
        missing_faces,
        boundary,
    }
}
