//! JSON file formats. All writers go through [`to_canonical_json`], which
//! sorts object keys so identical data always serializes to identical bytes.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::automaton::AutomatonSpec;
use crate::cayley::CayleyBall;
use crate::chain::{Chain0, Chain1, Modulus};
use crate::error::{Error, Result};
use crate::graph::{Edge, Genset, ToyGraph};
use crate::tiles::{FaceProfile, PatchTiling, Polarity, TileSet, TileType};

pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("serializable data");
    let mut out = serde_json::to_string_pretty(&value).expect("valid json value");
    out.push('\n');
    out
}

/// Parses JSON, reporting the first schema error by its path.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::parse(if path == "." { "document".into() } else { path }, e.into_inner().to_string())
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallDump {
    pub radius: usize,
    pub vertices: Vec<String>,
    /// `[tail, head, generator]`
    pub edges: Vec<(usize, usize, String)>,
    pub sphere: Vec<usize>,
}

impl BallDump {
    pub fn new(ball: &CayleyBall, spec: &AutomatonSpec) -> Self {
        let genset = ball.genset();
        BallDump {
            radius: ball.radius(),
            vertices: ball.words().iter().map(|w| spec.format_word(w)).collect(),
            edges: ball
                .oriented_edges()
                .iter()
                .map(|e| (e.tail, e.head, genset.name(e.label).to_string()))
                .collect(),
            sphere: ball.classify_vertices().1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainDump {
    pub p: u32,
    /// Nonzero `[index, value]` pairs in index order.
    pub entries: Vec<(usize, u32)>,
}

impl From<&Chain0> for ChainDump {
    fn from(c: &Chain0) -> Self {
        ChainDump {
            p: c.modulus().get(),
            entries: c.entries(),
        }
    }
}

impl From<&Chain1> for ChainDump {
    fn from(c: &Chain1) -> Self {
        ChainDump {
            p: c.modulus().get(),
            entries: c.entries(),
        }
    }
}

impl ChainDump {
    fn pairs(&self) -> Vec<(usize, i64)> {
        self.entries.iter().map(|&(i, v)| (i, v as i64)).collect()
    }

    pub fn to_chain0(&self, len: usize) -> Result<Chain0> {
        Chain0::from_entries(len, Modulus::new(self.p)?, &self.pairs())
    }

    pub fn to_chain1(&self, len: usize) -> Result<Chain1> {
        Chain1::from_entries(len, Modulus::new(self.p)?, &self.pairs())
    }
}

/// `[tail, head]` or `[tail, head, label]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EdgeDoc {
    Labelled(usize, usize, usize),
    Plain(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub vertices: usize,
    pub edges: Vec<EdgeDoc>,
    #[serde(default)]
    pub boundary: Vec<usize>,
}

impl GraphDoc {
    pub fn new(graph: &ToyGraph) -> Self {
        GraphDoc {
            vertices: graph.vertex_count(),
            edges: graph
                .edges()
                .iter()
                .map(|e| EdgeDoc::Labelled(e.tail, e.head, e.label))
                .collect(),
            boundary: graph.boundary_vertices(),
        }
    }

    pub fn to_graph(&self) -> Result<ToyGraph> {
        let edges = self
            .edges
            .iter()
            .map(|e| match *e {
                EdgeDoc::Labelled(tail, head, label) => Edge { tail, head, label },
                EdgeDoc::Plain(tail, head) => Edge { tail, head, label: 0 },
            })
            .collect();
        ToyGraph::new(self.vertices, edges, &self.boundary)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceDoc {
    pub gen: String,
    pub polarity: Polarity,
    pub count: u32,
}

/// Tile alphabet plus the tile at each assigned vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TileDump {
    pub p: u32,
    pub genset: Vec<String>,
    /// Name of each generator's inverse, parallel to `genset`.
    pub inverses: Vec<String>,
    pub types: Vec<Vec<FaceDoc>>,
    /// `[vertex, type_index]`
    pub assignment: Vec<(usize, usize)>,
}

fn genset_doc(genset: &Genset) -> (Vec<String>, Vec<String>) {
    let names = genset.names().to_vec();
    let inverses = (0..genset.len())
        .map(|i| genset.name(genset.inverse(i)).to_string())
        .collect();
    (names, inverses)
}

fn genset_from_doc(names: &[String], inverses: &[String]) -> Result<Genset> {
    if names.len() != inverses.len() {
        return Err(Error::parse("inverses", "must have one entry per generator"));
    }
    let inverse = inverses
        .iter()
        .enumerate()
        .map(|(i, n)| {
            names
                .iter()
                .position(|m| m == n)
                .ok_or_else(|| Error::parse(format!("inverses[{i}]"), format!("unknown generator `{n}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    Genset::new(names.to_vec(), inverse)
}

impl TileDump {
    pub fn new(tiles: &TileSet, assignment: &[Option<usize>]) -> Self {
        let genset = tiles.genset();
        let (names, inverses) = genset_doc(genset);
        TileDump {
            p: tiles.modulus().get(),
            genset: names,
            inverses,
            types: tiles
                .types()
                .iter()
                .map(|t| {
                    t.faces()
                        .iter()
                        .map(|f| FaceDoc {
                            gen: genset.name(f.generator()).to_string(),
                            polarity: f.polarity(),
                            count: f.count(),
                        })
                        .collect()
                })
                .collect(),
            assignment: assignment
                .iter()
                .enumerate()
                .filter_map(|(v, a)| a.map(|t| (v, t)))
                .collect(),
        }
    }

    pub fn tile_set(&self) -> Result<TileSet> {
        let genset = genset_from_doc(&self.genset, &self.inverses)?;
        let p = Modulus::new(self.p)?;
        let types = self
            .types
            .iter()
            .enumerate()
            .map(|(i, faces)| {
                let faces = faces
                    .iter()
                    .enumerate()
                    .map(|(j, f)| {
                        let g = genset.position(&f.gen).ok_or_else(|| {
                            Error::parse(format!("types[{i}][{j}].gen"), format!("unknown generator `{}`", f.gen))
                        })?;
                        Ok(FaceProfile::new(g, f.polarity, f.count))
                    })
                    .collect::<Result<Vec<_>>>()?;
                TileType::new(faces)
            })
            .collect::<Result<Vec<_>>>()?;
        let count = types.len();
        let set = TileSet::new(p, genset, types)?;
        if set.len() != count {
            return Err(Error::parse("types", "tile types must be distinct"));
        }
        Ok(set)
    }
}

/// Everything `verify` needs: tiles, their placement, and the graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatchDoc {
    pub p: u32,
    pub genset: Vec<String>,
    pub inverses: Vec<String>,
    pub types: Vec<Vec<FaceDoc>>,
    pub assignment: Vec<(usize, usize)>,
    pub graph: GraphDoc,
    pub interior: Vec<usize>,
}

impl PatchDoc {
    pub fn new(patch: &PatchTiling) -> Self {
        let dump = TileDump::new(patch.tiles(), patch.assignment());
        PatchDoc {
            p: dump.p,
            genset: dump.genset,
            inverses: dump.inverses,
            types: dump.types,
            assignment: dump.assignment,
            graph: GraphDoc::new(patch.graph()),
            interior: (0..patch.interior().len()).filter(|&v| patch.interior()[v]).collect(),
        }
    }

    pub fn to_patch(&self) -> Result<PatchTiling> {
        let dump = TileDump {
            p: self.p,
            genset: self.genset.clone(),
            inverses: self.inverses.clone(),
            types: self.types.clone(),
            assignment: self.assignment.clone(),
        };
        // Types may arrive unsorted; map file indices onto the sorted set.
        let tiles = dump.tile_set()?;
        let file_types = dump
            .types
            .iter()
            .map(|faces| {
                let faces = faces
                    .iter()
                    .map(|f| FaceProfile::new(tiles.genset().position(&f.gen).unwrap(), f.polarity, f.count))
                    .collect();
                tiles.index_of(&TileType::new(faces).unwrap()).unwrap()
            })
            .collect::<Vec<_>>();
        let graph = self.graph.to_graph()?;
        let n = graph.vertex_count();
        let mut assignment = vec![None; n];
        for (i, &(v, t)) in self.assignment.iter().enumerate() {
            if v >= n || t >= file_types.len() {
                return Err(Error::parse(format!("assignment[{i}]"), "vertex or type index out of range"));
            }
            assignment[v] = Some(file_types[t]);
        }
        let mut interior = vec![false; n];
        for (i, &v) in self.interior.iter().enumerate() {
            *interior
                .get_mut(v)
                .ok_or_else(|| Error::parse(format!("interior[{i}]"), "vertex out of range"))? = true;
        }
        PatchTiling::new(graph, tiles, assignment, interior)
    }
}
